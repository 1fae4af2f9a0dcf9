#include "dshock/singular_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dshock/errors.hpp"
#include "dshock/fields.hpp"

namespace dshock {

namespace {

Vec2 unit(Vec2 y) {
  const double n = std::hypot(y[0], y[1]);
  return {y[0] / n, y[1] / n};
}

// Eigenvector of a 2x2 matrix for a real eigenvalue, oriented so r >= 0
// (and beta > 0 when r == 0).
Vec2 eigenvector(const Mat2& J, double lambda) {
  const double a = J[0][0] - lambda, b = J[0][1];
  const double c = J[1][0], d = J[1][1] - lambda;
  Vec2 y;
  if (std::abs(a) + std::abs(b) >= std::abs(c) + std::abs(d)) {
    y = (std::abs(a) + std::abs(b) == 0.0) ? Vec2{1.0, 0.0} : Vec2{-b, a};
  } else {
    y = {-d, c};
  }
  y = unit(y);
  if (y[1] < 0.0 || (y[1] == 0.0 && y[0] < 0.0)) y = {-y[0], -y[1]};
  return y;
}

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

GammaLeg run_leg(const FastBrk& field, const Vec2& seed, const Vec2& target, double t_end,
                 const ModelParams& p, const ConfigOptions& opt) {
  const double land = 1e-2 * opt.endpoint_tol;
  std::vector<EventSpec<2>> ev{
      {[target, land](double, const StateVec<2>& y) { return dist({y[0], y[1]}, target) - land; },
       -1, true},
      {[&p, &opt](double, const StateVec<2>& y) { return y[0] - (p.rho1() + opt.strip_tol); }, 1,
       true},
      {[&p, &opt](double, const StateVec<2>& y) { return (p.rho2() - opt.strip_tol) - y[0]; }, 1,
       true},
      {[&opt](double, const StateVec<2>& y) { return -y[1] - opt.strip_tol; }, 1, true},
  };
  const auto tr = integrate<2>(field, StateVec<2>{seed[0], seed[1]}, 0.0, t_end, opt.integrator,
                               std::span<const EventSpec<2>>(ev));
  GammaLeg leg;
  leg.target = target;
  leg.t.reserve(tr.samples.size());
  leg.path.reserve(tr.samples.size());
  for (const auto& s : tr.samples) {
    leg.t.push_back(s.t);
    leg.path.push_back({s.y[0], s.y[1]});
  }
  const Vec2 last = leg.path.back();
  leg.endpoint_residual = dist(last, target);
  if (tr.stopped_by(0) || leg.endpoint_residual < opt.endpoint_tol) {
    leg.status = leg.endpoint_residual < opt.endpoint_tol ? LegStatus::landed : LegStatus::inconclusive;
  } else if (tr.stopped_by(1) || tr.stopped_by(2) || tr.stopped_by(3)) {
    leg.status = LegStatus::left_strip;
  } else {
    leg.status = LegStatus::inconclusive;
  }
  return leg;
}

}  // namespace

SaddleData saddle_at_P(Side side, const ShockQuantities& sq, const ModelParams& p) {
  const double rho = side == Side::left ? p.rho1() : p.rho2();
  const Vec2 w = side == Side::left ? sq.wL : sq.wR;
  const FastBrk field{p, w, sq.s};
  SaddleData sd;
  sd.point = {rho, 0.0};
  sd.jacobian = field.jacobian({rho, 0.0});
  const Mat2& J = sd.jacobian;
  const double tr = J[0][0] + J[1][1];
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  sd.lambda_u = 0.5 * tr + disc;
  sd.lambda_s = 0.5 * tr - disc;
  // J is upper triangular at r = 0, so the diagonal is exact.
  if (J[1][0] == 0.0) {
    sd.lambda_u = std::max(J[0][0], J[1][1]);
    sd.lambda_s = std::min(J[0][0], J[1][1]);
  }
  sd.y_u = eigenvector(J, sd.lambda_u);
  sd.y_s = eigenvector(J, sd.lambda_s);
  return sd;
}

Mat2 fast_brk_fd_jacobian(const Vec2& at, const Vec2& w, double xi, const ModelParams& p,
                          double h) {
  const FastBrk field{p, w, xi};
  Mat2 J{};
  for (int j = 0; j < 2; ++j) {
    StateVec<2> yp{at[0], at[1]}, ym{at[0], at[1]};
    yp[j] += h;
    ym[j] -= h;
    const auto fp = field(0.0, yp);
    const auto fm = field(0.0, ym);
    for (int i = 0; i < 2; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

const char* to_string(LegStatus s) noexcept {
  switch (s) {
    case LegStatus::landed: return "landed";
    case LegStatus::left_strip: return "left_strip";
    case LegStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

GammaLeg compute_gamma1(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                        const ConfigOptions& opt) {
  const SaddleData sd = saddle_at_P(Side::left, sq, p);
  const Vec2 seed{sd.point[0] + opt.delta * sd.y_s[0], sd.point[1] + opt.delta * sd.y_s[1]};
  const Vec2 target{rd.left.beta, 1.0 / rd.left.v};
  GammaLeg leg = run_leg(FastBrk{p, sq.wL, sq.s}, seed, target, -opt.t_max, p, opt);
  std::reverse(leg.t.begin(), leg.t.end());
  std::reverse(leg.path.begin(), leg.path.end());
  leg.seed_offset = opt.delta;
  return leg;
}

GammaLeg compute_gamma2(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                        const ConfigOptions& opt) {
  const SaddleData sd = saddle_at_P(Side::right, sq, p);
  const Vec2 seed{sd.point[0] + opt.delta * sd.y_u[0], sd.point[1] + opt.delta * sd.y_u[1]};
  const Vec2 target{rd.right.beta, 1.0 / rd.right.v};
  GammaLeg leg = run_leg(FastBrk{p, sq.wR, sq.s}, seed, target, opt.t_max, p, opt);
  leg.seed_offset = opt.delta;
  return leg;
}

double nullcline_theta1(double beta, const ShockQuantities& sq, const ModelParams& p) {
  return beta * (sq.s * beta + sq.wL[0]) / ((beta - p.rho1()) * (beta - p.rho2()));
}

double nullcline_theta2(double beta, const ShockQuantities& sq, const ModelParams& p) {
  const double q = beta * beta - p.rho1() * p.rho2();
  const double disc = sq.s * sq.s * beta * beta + 2.0 * sq.wL[1] * q;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (sq.s * beta + std::sqrt(disc)) / q * beta;
}

double bendixson_divergence(double beta, double v, double xi, const ModelParams& p) {
  return 4.0 * v * b2(beta, p) - 2.0 * xi;
}

H3Report check_h3(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                  const ConfigOptions& opt) {
  H3Report rep;
  rep.gamma1 = compute_gamma1(rd, sq, p, opt);
  rep.gamma2 = compute_gamma2(rd, sq, p, opt);
  rep.verified = rep.gamma1.landed() && rep.gamma2.landed();

  H3Diagnostics& d = rep.diagnostics;
  constexpr int n = 200;
  const double lo = p.geometric_mean(), hi = p.rho1();
  d.theta1_increasing = d.theta2_decreasing = true;
  double t1_prev = 0.0, t2_prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double beta = lo + (hi - lo) * (i + 1.0) / (n + 1.0);
    const double t1 = nullcline_theta1(beta, sq, p);
    const double t2 = nullcline_theta2(beta, sq, p);
    if (!std::isfinite(t1)) d.theta1_increasing = false;
    if (!std::isfinite(t2)) d.theta2_decreasing = false;
    if (i > 0) {
      if (!(t1 > t1_prev)) d.theta1_increasing = false;
      if (!(t2 < t2_prev)) d.theta2_decreasing = false;
    }
    t1_prev = t1;
    t2_prev = t2;
  }
  const double t2_end = nullcline_theta2(p.rho1(), sq, p);
  d.theta2_positive_at_rho1 = std::isfinite(t2_end) && t2_end > 0.0;

  d.min_divergence = std::numeric_limits<double>::infinity();
  constexpr int m = 20;
  for (int i = 0; i <= m; ++i) {
    const double beta = rd.left.beta + (p.rho1() - rd.left.beta) * i / m;
    for (int j = 0; j <= m; ++j) {
      const double v = rd.left.v * std::pow(100.0, static_cast<double>(j) / m);
      d.min_divergence = std::min(d.min_divergence, bendixson_divergence(beta, v, sq.s, p));
    }
  }
  d.divergence_positive = d.min_divergence > 0.0;
  d.boundary_signs = boundary_sign_check(sq, p);
  return rep;
}

SlowQuantities slow_quantities(const ShockQuantities& sq, const ModelParams& p) {
  if (!(sq.e0 > 0.0)) {
    std::ostringstream os;
    os << "slow_quantities: deficit e0 = " << sq.e0 << " is not positive, no singular configuration";
    throw NumericalFailure(os.str());
  }
  const double A = b2(p.rho1(), p);
  const double B = b2(p.rho2(), p);
  SlowQuantities q;
  q.tau10 = -B * sq.e0 / (A - B);
  q.tau20 = sq.e0 - q.tau10;
  q.w20 = sq.wL[1] - q.tau10;
  q.kappa0 = A * q.tau10;

  const double sum = p.rho1() + p.rho2();
  q.printed_tau10 = p.rho2() / sum * sq.e0;
  q.printed_tau20 = p.rho1() / sum * sq.e0;
  q.printed_w20 = sq.wL[1] + p.rho1() / sum * sq.e0;
  q.printed_kappa0 = p.rho1() * (p.rho1() - p.rho2()) / (2.0 * p.rho2() * sum);

  const auto differs = [](double a, double b) {
    return std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const auto warn = [&q](const char* name, double solved, double printed) {
    std::ostringstream os;
    os.precision(17);
    os << name << ": closed form gives " << printed << ", linear solve gives " << solved;
    q.warnings.push_back(os.str());
  };
  if (differs(q.tau10, q.printed_tau10)) warn("tau10", q.tau10, q.printed_tau10);
  if (differs(q.tau20, q.printed_tau20)) warn("tau20", q.tau20, q.printed_tau20);
  if (differs(q.w20, q.printed_w20)) warn("w20", q.w20, q.printed_w20);
  if (differs(q.kappa0, q.printed_kappa0)) warn("kappa0", q.kappa0, q.printed_kappa0);
  return q;
}

double printed_growth_rate(const ShockQuantities& sq, const ModelParams& p) {
  return (p.rho1() - p.rho2()) * sq.e0 / (p.rho1() + p.rho2());
}

double SingularConfiguration::max_kappa() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const ChartPath* seg : {&gamma1, &sigma1, &gamma0, &sigma2, &gamma2})
    for (const ChartPoint& c : *seg) m = std::max(m, c.kappa);
  return m;
}

namespace {

double gap(const ChartPoint& a, const ChartPoint& b) {
  return std::max({std::abs(a.beta - b.beta), std::abs(a.r - b.r), std::abs(a.w1 - b.w1),
                   std::abs(a.w2 - b.w2), std::abs(a.xi - b.xi), std::abs(a.kappa - b.kappa)});
}

}  // namespace

SingularConfiguration build_configuration(const RiemannData& rd, const ShockQuantities& sq,
                                          const ModelParams& p, const ConfigOptions& opt,
                                          std::size_t slow_samples) {
  if (slow_samples < 2) throw UsageError("build_configuration: need at least 2 slow samples");
  SingularConfiguration cfg;
  cfg.slow = slow_quantities(sq, p);
  cfg.h3 = check_h3(rd, sq, p, opt);
  if (!cfg.h3.verified) {
    std::ostringstream os;
    os << "build_configuration: H3 not verified (gamma1 " << to_string(cfg.h3.gamma1.status)
       << ", gamma2 " << to_string(cfg.h3.gamma2.status) << ")";
    throw NumericalFailure(os.str());
  }
  const SlowQuantities& q = cfg.slow;
  const double A = b2(p.rho1(), p);
  const double B = b2(p.rho2(), p);

  for (const Vec2& y : cfg.h3.gamma1.path) cfg.gamma1.push_back({y[0], y[1], sq.wL[0], sq.wL[1], sq.s, 0.0});
  cfg.gamma1.push_back({p.rho1(), 0.0, sq.wL[0], sq.wL[1], sq.s, 0.0});

  for (std::size_t i = 0; i < slow_samples; ++i) {
    const double tau = q.tau10 * static_cast<double>(i) / static_cast<double>(slow_samples - 1);
    cfg.sigma1.push_back({p.rho1(), 0.0, sq.wL[0], sq.wL[1] - tau, sq.s, A * tau});
  }
  cfg.sigma1.back().w2 = q.w20;
  cfg.sigma1.back().kappa = q.kappa0;

  // gamma0 lies in {r = 0}, where the layer flow reduces to beta' = B1(beta).
  const FastBrk layer{p, {sq.wL[0], q.w20}, sq.s};
  const double lo = p.rho2() + opt.delta;
  std::vector<EventSpec<2>> ev{{[lo](double, const StateVec<2>& y) { return y[0] - lo; }, -1, true}};
  const auto tr = integrate<2>(layer, StateVec<2>{p.rho1() - opt.delta, 0.0}, 0.0, opt.t_max,
                               opt.integrator, std::span<const EventSpec<2>>(ev));
  cfg.gamma0.push_back({p.rho1(), 0.0, sq.wL[0], q.w20, sq.s, q.kappa0});
  for (const auto& s : tr.samples) cfg.gamma0.push_back({s.y[0], s.y[1], sq.wL[0], q.w20, sq.s, q.kappa0});
  cfg.gamma0.push_back({p.rho2(), 0.0, sq.wL[0], q.w20, sq.s, q.kappa0});

  for (std::size_t i = 0; i < slow_samples; ++i) {
    const double tau = q.tau20 * static_cast<double>(slow_samples - 1 - i) /
                       static_cast<double>(slow_samples - 1);
    cfg.sigma2.push_back({p.rho2(), 0.0, sq.wR[0], sq.wR[1] + tau, sq.s, -B * tau});
  }

  cfg.gamma2.push_back({p.rho2(), 0.0, sq.wR[0], sq.wR[1], sq.s, 0.0});
  for (const Vec2& y : cfg.h3.gamma2.path) cfg.gamma2.push_back({y[0], y[1], sq.wR[0], sq.wR[1], sq.s, 0.0});

  cfg.junction_error = std::max({gap(cfg.gamma1.back(), cfg.sigma1.front()),
                                 gap(cfg.sigma1.back(), cfg.gamma0.front()),
                                 gap(cfg.gamma0.back(), cfg.sigma2.front()),
                                 gap(cfg.sigma2.back(), cfg.gamma2.front())});
  if (cfg.junction_error > kJunctionTol) {
    std::ostringstream os;
    os << "build_configuration: junction mismatch " << cfg.junction_error;
    throw NumericalFailure(os.str());
  }
  return cfg;
}

std::vector<H3GridPoint> h3_grid(const State& uL, const ModelParams& p, std::size_t n_beta,
                                 std::size_t n_v, double v_max, const ConfigOptions& opt) {
  std::vector<H3GridPoint> out;
  out.reserve(n_beta * n_v);
  for (std::size_t i = 0; i < n_beta; ++i) {
    const double beta = p.rho2() + (uL.beta - p.rho2()) * (i + 1.0) / (n_beta + 1.0);
    for (std::size_t j = 0; j < n_v; ++j) {
      const double v = v_max * (j + 1.0) / static_cast<double>(n_v);
      const RiemannData rd{uL, {beta, v}};
      H3GridPoint g{{beta, v}, check_h1(rd, p), false};
      if (g.h1) g.h3 = check_h3(rd, shock_quantities(rd, p), p, opt).verified;
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace dshock
