#include "dshock/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dshock/errors.hpp"

namespace dshock {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool degenerate(const RiemannData& rd) { return rd.left.beta == rd.right.beta; }

}  // namespace

double shock_speed(const RiemannData& rd, const ModelParams& p) {
  if (degenerate(rd)) {
    std::ostringstream os;
    os << "degenerate Riemann data: beta_L == beta_R == " << rd.left.beta
       << " leaves the shock speed s undefined";
    throw DegenerateDataError(os.str());
  }
  const double fl = rd.left.v * b1(rd.left.beta, p);
  const double fr = rd.right.v * b1(rd.right.beta, p);
  return (fl - fr) / (rd.left.beta - rd.right.beta);
}

ShockQuantities shock_quantities(const RiemannData& rd, const ModelParams& p) {
  ShockQuantities sq;
  sq.s = shock_speed(rd, p);
  const Vec2 fl = flux(rd.left, p);
  const Vec2 fr = flux(rd.right, p);
  sq.wL = {fl[0] - sq.s * rd.left.beta, fl[1] - sq.s * rd.left.v};
  sq.wR = {fr[0] - sq.s * rd.right.beta, fr[1] - sq.s * rd.right.v};
  sq.e0 = sq.wL[1] - sq.wR[1];
  return sq;
}

bool check_h1(const RiemannData& rd, const ModelParams& p) {
  if (degenerate(rd)) return false;
  const double s = shock_speed(rd, p);
  return eigenvalues(rd.right, p).real_part < s && s < eigenvalues(rd.left, p).real_part;
}

bool check_h2(const RiemannData& rd, const ModelParams& p) {
  if (degenerate(rd)) return false;
  return shock_quantities(rd, p).e0 > 0.0;
}

double curve_s_equals_left_speed(const State& uL, double beta, const ModelParams& p) {
  const double den = b1(beta, p);
  if (den == 0.0) return kNaN;
  return uL.v * (b1(uL.beta, p) - 2.0 * b2(uL.beta, p) * (uL.beta - beta)) / den;
}

double curve_s_equals_right_speed(const State& uL, double beta, const ModelParams& p) {
  const double den = b1(beta, p) + 2.0 * b2(beta, p) * (uL.beta - beta);
  if (den == 0.0) return kNaN;
  return uL.v * b1(uL.beta, p) / den;
}

OcBoundaryCurves oc_boundary_curves(const State& uL, const ModelParams& p, std::size_t n_samples) {
  if (n_samples < 2) throw UsageError("oc_boundary_curves: need at least 2 samples");
  OcBoundaryCurves out;
  out.left_speed.reserve(n_samples);
  out.right_speed.reserve(n_samples);
  const double lo = p.rho2();
  const double hi = uL.beta;
  for (std::size_t i = 0; i < n_samples; ++i) {
    // open interval: skip both endpoints
    const double beta = lo + (hi - lo) * (static_cast<double>(i) + 1.0) /
                                 (static_cast<double>(n_samples) + 1.0);
    const double vm = curve_s_equals_left_speed(uL, beta, p);
    const double vp = curve_s_equals_right_speed(uL, beta, p);
    out.left_speed.push_back({beta, vm, std::isfinite(vm) && vm > 0.0});
    out.right_speed.push_back({beta, vp, std::isfinite(vp) && vp > 0.0});
  }
  return out;
}

namespace {

struct Bounds {
  double lower = kNaN;
  double upper = kNaN;
  bool valid = false;
};

// Which curve bounds from above is decided at the point itself; the two
// curves only meet at uL, so the ordering is constant on (rho2, beta_L).
Bounds region_bounds(const RiemannData& rd, const ModelParams& p) {
  const double beta = rd.right.beta;
  Bounds b;
  if (!(beta > p.rho2() && beta < rd.left.beta)) return b;
  const double vm = curve_s_equals_left_speed(rd.left, beta, p);
  const double vp = curve_s_equals_right_speed(rd.left, beta, p);
  if (!(std::isfinite(vm) && std::isfinite(vp) && vm > 0.0 && vp > 0.0)) return b;
  b.lower = std::min(vm, vp);
  b.upper = std::max(vm, vp);
  b.valid = true;
  return b;
}

}  // namespace

bool in_overcompressive_region(const RiemannData& rd, const ModelParams& p) {
  const Bounds b = region_bounds(rd, p);
  return b.valid && rd.right.v > b.lower && rd.right.v < b.upper;
}

double distance_to_oc_boundary(const RiemannData& rd, const ModelParams& p) {
  const double beta = rd.right.beta;
  double d = std::numeric_limits<double>::infinity();
  if (beta <= 0.0 || beta == p.rho1() || beta == p.rho2()) return 0.0;
  const double vm = curve_s_equals_left_speed(rd.left, beta, p);
  const double vp = curve_s_equals_right_speed(rd.left, beta, p);
  if (std::isfinite(vm)) d = std::min(d, std::abs(rd.right.v - vm));
  if (std::isfinite(vp)) d = std::min(d, std::abs(rd.right.v - vp));
  return d;
}

bool boundary_sign_check(const ShockQuantities& sq, const ModelParams& p) {
  return sq.s * p.rho1() + sq.wL[0] < 0.0 && sq.s * p.rho2() + sq.wR[0] < 0.0;
}

bool check_h3_sufficient(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                         double s_max) {
  const double gm = p.geometric_mean();
  return rd.right.beta < gm && gm < rd.left.beta && sq.wL[0] < 0.0 && sq.wR[1] < 0.0 &&
         0.0 < sq.wL[1] && std::abs(sq.s) < s_max;
}

Classification classify(const RiemannData& rd, const ModelParams& p, double s_max) {
  Classification c;
  if (degenerate(rd)) {
    c.degenerate = true;
    return c;
  }
  c.shock = shock_quantities(rd, p);
  c.h1 = check_h1(rd, p);
  c.h2 = c.shock.e0 > 0.0;
  c.h3_sufficient = check_h3_sufficient(rd, c.shock, p, s_max);
  c.boundary_signs = boundary_sign_check(c.shock, p);
  c.in_region = in_overcompressive_region(rd, p);
  return c;
}

}  // namespace dshock
