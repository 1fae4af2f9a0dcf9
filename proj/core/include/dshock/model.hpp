#pragma once

#include <array>
#include <complex>

namespace dshock {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;

// Phase densities of the two-phase model. The physical strip is
// rho2 <= beta <= rho1, which requires 0 < rho2 < rho1.
class ModelParams {
 public:
  ModelParams(double rho1, double rho2);

  double rho1() const noexcept { return rho1_; }
  double rho2() const noexcept { return rho2_; }
  double geometric_mean() const noexcept;  // sqrt(rho1 rho2), root of B2

  bool in_strip(double beta, double tol = 0.0) const noexcept {
    return beta >= rho2_ - tol && beta <= rho1_ + tol;
  }

 private:
  double rho1_;
  double rho2_;
};

struct State {
  double beta = 0.0;  // density-weighted volume element
  double v = 0.0;     // momentum difference
};

struct EigenPair {
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  double real_part = 0.0;
};

// B1(beta) = (beta - rho1)(beta - rho2) / beta.  Throws DomainError at beta == 0.
double b1(double beta, const ModelParams& p);
// B2(beta) = (beta^2 - rho1 rho2) / (2 beta^2).
double b2(double beta, const ModelParams& p);
// B1'(beta) = 1 - rho1 rho2 / beta^2  (== 2 B2(beta)).
double b1_prime(double beta, const ModelParams& p);
// B2'(beta) = rho1 rho2 / beta^3.
double b2_prime(double beta, const ModelParams& p);

// f(u) = (v B1(beta), v^2 B2(beta)).
Vec2 flux(const State& u, const ModelParams& p);

// Df(u) = [[v B1', B1], [v^2 B2', 2 v B2]].
Mat2 jacobian(const State& u, const ModelParams& p);

// Characteristic speeds 2 v B2 +- v sqrt(B1 B2'), complex when B1 B2' < 0.
EigenPair eigenvalues(const State& u, const ModelParams& p);

inline constexpr double kHyperbolicTol = 1e-12;

// Real characteristic speeds. Inside the strip this is beta on {rho1, rho2}
// or v == 0, within tol.
bool is_hyperbolic(const State& u, const ModelParams& p, double tol = kHyperbolicTol);

}  // namespace dshock
