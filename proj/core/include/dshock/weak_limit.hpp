#pragma once

#include <functional>
#include <vector>

#include "dshock/model.hpp"
#include "dshock/riemann.hpp"
#include "dshock/viscous_profile.hpp"

namespace dshock {

inline constexpr double kDefaultR0 = 0.1;

struct WeakLimitReport {
  double r0 = kDefaultR0;
  double xi_in = 0.0;
  double xi_out = 0.0;
  double delta_strength = 0.0;    // trapezoid of v over [xi_in, xi_out]
  double delta_identity = 0.0;    // eps (zeta_out - zeta_in)
  double identity_rel_gap = 0.0;  // |quadrature - identity| / identity
  double beta_inner = 0.0;
  double outer_l1_left = 0.0;   // int |u - uL| over [xi_first, xi_in]
  double outer_l1_right = 0.0;  // int |u - uR| over [xi_out, xi_last]
  double tail_left = 0.0;       // linearized estimate of the truncated tails
  double tail_right = 0.0;
};

// Throws NumericalFailure if the profile did not converge or the spike stays
// below 1/r0.
WeakLimitReport analyze(const ProfileResult& pr, const RiemannData& rd, const ModelParams& p,
                        double r0 = kDefaultR0, const ShootConfig& cfg = {});

struct TestFunction {
  std::function<double(double)> psi;
  double support_lo = 0.0;
  double support_hi = 0.0;
};

// C-infinity bump exp(-1 / (1 - z^2)), z = (xi - center) / half_width.
TestFunction bump(double center, double half_width, double height = 1.0);

struct Pairing {
  Vec2 profile{};  // int psi u_eps
  Vec2 limit{};    // uL int_{-inf}^{s} psi + uR int_{s}^{inf} psi + (0, e0) psi(s)
  Vec2 error{};
};

// Throws NumericalFailure when the support leaves the computed window.
Pairing pair_similarity(const ProfileResult& pr, const RiemannData& rd, const ModelParams& p,
                        const TestFunction& tf);

// e0 / sqrt(1 + s^2).
double spacetime_delta_coefficient(const ShockQuantities& sq);

}  // namespace dshock
