#pragma once

#include <stdexcept>
#include <string>

namespace dshock {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a pole of the model functions or outside a domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Riemann data with beta_L == beta_R (shock speed undefined).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Caller-side misuse: dimension mismatch, invalid configuration values.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Step size underflow in the adaptive integrator.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure (shooting, root finding, assembly) did not succeed.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public NumericalFailure {
 public:
  NoConvergenceError(const std::string& what, double best_residual)
      : NumericalFailure(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace dshock
