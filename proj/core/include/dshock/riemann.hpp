#pragma once

#include <cstddef>
#include <vector>

#include "dshock/model.hpp"

namespace dshock {

struct RiemannData {
  State left;
  State right;
};

// Rankine-Hugoniot data: s enforces the first jump condition exactly,
// e0 = wL[1] - wR[1] is the deficit in the second one.
struct ShockQuantities {
  double s = 0.0;
  Vec2 wL{};
  Vec2 wR{};
  double e0 = 0.0;
};

// s = (vL B1(bL) - vR B1(bR)) / (bL - bR). Throws DegenerateDataError if bL == bR.
double shock_speed(const RiemannData& rd, const ModelParams& p);

ShockQuantities shock_quantities(const RiemannData& rd, const ModelParams& p);

// (H1): Re lambda(uR) < s < Re lambda(uL), strict. False for degenerate data.
bool check_h1(const RiemannData& rd, const ModelParams& p);

// (H2): e0 > 0. False for degenerate data.
bool check_h2(const RiemannData& rd, const ModelParams& p);

// Boundary curves of the over-compressive region through uL. On the first
// s == Re lambda(uL), on the second s == Re lambda(uR). Both return NaN at a
// pole of the denominator.
double curve_s_equals_left_speed(const State& uL, double beta, const ModelParams& p);
double curve_s_equals_right_speed(const State& uL, double beta, const ModelParams& p);

struct CurveSample {
  double beta = 0.0;
  double v = 0.0;
  bool valid = false;  // finite and positive
};

struct OcBoundaryCurves {
  std::vector<CurveSample> left_speed;   // s == Re lambda(uL)
  std::vector<CurveSample> right_speed;  // s == Re lambda(uR)
};

// Samples both curves on the open interval (rho2, beta_L).
OcBoundaryCurves oc_boundary_curves(const State& uL, const ModelParams& p, std::size_t n_samples);

inline constexpr double kRegionBoundaryTol = 1e-6;

// Curve-based membership of uR in the interior of the cusped region
// (rho2 < beta_R < beta_L, v_R strictly between the two curves).
bool in_overcompressive_region(const RiemannData& rd, const ModelParams& p);

// Vertical distance from uR to the nearer boundary curve (infinity if
// neither curve is valid at beta_R).
double distance_to_oc_boundary(const RiemannData& rd, const ModelParams& p);

// s rho1 + w1L < 0 and s rho2 + w1R < 0.
bool boundary_sign_check(const ShockQuantities& sq, const ModelParams& p);

inline constexpr double kDefaultSMax = 0.05;

// Structural sufficient condition for the connecting orbits:
// bR < sqrt(rho1 rho2) < bL, w1L < 0, w2R < 0 < w2L and |s| < s_max.
bool check_h3_sufficient(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                         double s_max = kDefaultSMax);

struct Classification {
  bool degenerate = false;
  ShockQuantities shock{};
  bool h1 = false;
  bool h2 = false;
  bool h3_sufficient = false;
  bool boundary_signs = false;
  bool in_region = false;
};

Classification classify(const RiemannData& rd, const ModelParams& p, double s_max = kDefaultSMax);

}  // namespace dshock
