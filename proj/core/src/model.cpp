#include "dshock/model.hpp"

#include <cmath>
#include <sstream>

#include "dshock/errors.hpp"

namespace dshock {

namespace {

void require_nonzero(double beta, const char* fn) {
  if (beta == 0.0) {
    std::ostringstream os;
    os << fn << ": pole at beta = 0";
    throw DomainError(os.str());
  }
}

}  // namespace

ModelParams::ModelParams(double rho1, double rho2) : rho1_(rho1), rho2_(rho2) {
  if (!(std::isfinite(rho1) && std::isfinite(rho2)) || !(rho2 > 0.0) || !(rho2 < rho1)) {
    std::ostringstream os;
    os << "ModelParams: require 0 < rho2 < rho1, got rho1=" << rho1 << " rho2=" << rho2;
    throw DomainError(os.str());
  }
}

double ModelParams::geometric_mean() const noexcept { return std::sqrt(rho1_ * rho2_); }

double b1(double beta, const ModelParams& p) {
  require_nonzero(beta, "b1");
  return (beta - p.rho1()) * (beta - p.rho2()) / beta;
}

double b2(double beta, const ModelParams& p) {
  require_nonzero(beta, "b2");
  return (beta * beta - p.rho1() * p.rho2()) / (2.0 * beta * beta);
}

double b1_prime(double beta, const ModelParams& p) {
  require_nonzero(beta, "b1_prime");
  return 1.0 - p.rho1() * p.rho2() / (beta * beta);
}

double b2_prime(double beta, const ModelParams& p) {
  require_nonzero(beta, "b2_prime");
  return p.rho1() * p.rho2() / (beta * beta * beta);
}

Vec2 flux(const State& u, const ModelParams& p) {
  return {u.v * b1(u.beta, p), u.v * u.v * b2(u.beta, p)};
}

Mat2 jacobian(const State& u, const ModelParams& p) {
  const double B1 = b1(u.beta, p);
  const double B2 = b2(u.beta, p);
  return Mat2{Vec2{u.v * b1_prime(u.beta, p), B1},
              Vec2{u.v * u.v * b2_prime(u.beta, p), 2.0 * u.v * B2}};
}

EigenPair eigenvalues(const State& u, const ModelParams& p) {
  const double re = 2.0 * u.v * b2(u.beta, p);
  const std::complex<double> disc(b1(u.beta, p) * b2_prime(u.beta, p), 0.0);
  const std::complex<double> rad = u.v * std::sqrt(disc);
  return EigenPair{re + rad, re - rad, re};
}

bool is_hyperbolic(const State& u, const ModelParams& p, double tol) {
  if (std::abs(u.beta - p.rho1()) <= tol || std::abs(u.beta - p.rho2()) <= tol ||
      std::abs(u.v) <= tol) {
    return true;
  }
  // Off the strip B1 B2' > 0 and the speeds are real again.
  if (u.beta == 0.0) return false;
  return b1(u.beta, p) * b2_prime(u.beta, p) > 0.0;
}

}  // namespace dshock
