#include "dshock/viscous_profile.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>

#include "dshock/errors.hpp"
#include "dshock/fields.hpp"
#include "dshock/optimize.hpp"
#include "dshock/singular_config.hpp"

namespace dshock {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// (beta, v, w1, w2, xi, zeta) with zeta' = v.
struct AugmentedBv {
  SlowFastBv f;
  StateVec<6> operator()(double t, const StateVec<6>& y) const {
    const auto d = f(t, {y[0], y[1], y[2], y[3], y[4]});
    return {d[0], d[1], d[2], d[3], d[4], y[1]};
  }
};

// (beta, r, w1, w2, xi, kappa, zeta) with zeta' = 1.
struct AugmentedBrk {
  SlowFastBrk f;
  StateVec<7> operator()(double t, const StateVec<7>& y) const {
    const auto d = f(t, {y[0], y[1], y[2], y[3], y[4], y[5]});
    return {d[0], d[1], d[2], d[3], d[4], d[5], 1.0};
  }
};

ProfileSample from_bv(const StateVec<6>& y, double eps) {
  ProfileSample s;
  s.beta = y[0];
  s.v = y[1];
  s.r = 1.0 / y[1];
  s.kappa = y[1] > 0.0 ? eps * std::log(y[1]) : kNaN;
  s.w1 = y[2];
  s.w2 = y[3];
  s.xi = y[4];
  s.zeta = y[5];
  s.compact = false;
  return s;
}

ProfileSample from_brk(const StateVec<7>& y) {
  ProfileSample s;
  s.beta = y[0];
  s.r = y[1];
  s.v = 1.0 / y[1];
  s.w1 = y[2];
  s.w2 = y[3];
  s.xi = y[4];
  s.kappa = y[5];
  s.zeta = y[6];
  s.compact = true;
  return s;
}

void bump(double& m, double k) {
  if (std::isfinite(k)) m = std::max(m, k);
}

}  // namespace

const char* to_string(ShotStatus s) noexcept {
  switch (s) {
    case ShotStatus::reached_end: return "reached_end";
    case ShotStatus::left_strip: return "left_strip";
    case ShotStatus::blow_up: return "blow_up";
    case ShotStatus::step_cap: return "step_cap";
  }
  return "unknown";
}

std::array<Vec2, 2> unstable_plane(const State& uL, double xi, const ModelParams& p) {
  const Mat2 J = jacobian(uL, p);
  const double tr = J[0][0] + J[1][1];
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const double disc = 0.25 * tr * tr - det;
  if (disc < 0.0) {
    const std::complex<double> lam(0.5 * tr, std::sqrt(-disc));
    if (!(lam.real() > xi)) {
      std::ostringstream os;
      os << "unstable_plane: Re lambda(uL) = " << lam.real() << " does not exceed xi = " << xi;
      throw NumericalFailure(os.str());
    }
    std::array<std::complex<double>, 2> x{J[0][1], lam - J[0][0]};
    const double n = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
    return {Vec2{x[0].real() / n, x[1].real() / n}, Vec2{x[0].imag() / n, x[1].imag() / n}};
  }
  const double l1 = 0.5 * tr + std::sqrt(disc), l2 = 0.5 * tr - std::sqrt(disc);
  if (!(l2 > xi)) {
    std::ostringstream os;
    os << "unstable_plane: real eigenvalues " << l2 << ", " << l1 << " straddle xi = " << xi;
    throw NumericalFailure(os.str());
  }
  auto vec = [&J](double l) {
    Vec2 y = std::abs(J[0][1]) > 0.0 ? Vec2{J[0][1], l - J[0][0]} : Vec2{l - J[1][1], J[1][0]};
    const double n = std::hypot(y[0], y[1]);
    return Vec2{y[0] / n, y[1] / n};
  };
  return {vec(l1), vec(l2)};
}

PhasePoint seed_point(const ShootingParams& sp, const RiemannData& rd, const ShockQuantities& sq,
                      const ModelParams& p) {
  const double xi = sq.s + sp.alpha;
  const auto e = unstable_plane(rd.left, xi, p);
  const double c = std::cos(sp.theta), sn = std::sin(sp.theta);
  return {rd.left.beta + sp.delta_seed * (c * e[0][0] + sn * e[1][0]),
          rd.left.v + sp.delta_seed * (c * e[0][1] + sn * e[1][1]),
          sq.wL[0] - sp.alpha * rd.left.beta, sq.wL[1] - sp.alpha * rd.left.v, xi};
}

Shot fire(const ShootingParams& sp, const RiemannData& rd, const ShockQuantities& sq,
          const ModelParams& p, double eps, const ShotOptions& opt, bool record) {
  if (!(eps > 0.0)) throw UsageError("fire: eps must be positive");
  if (!(sp.v_switch > 0.0)) throw UsageError("fire: v_switch must be positive");
  const PhasePoint y0 = seed_point(sp, rd, sq, p);
  const double hi = p.rho1() + opt.strip_margin;
  const double lo = p.rho2() - opt.strip_margin;
  const double xi_end = sp.xi_end;
  const double r_switch = 1.0 / sp.v_switch;

  IntegratorConfig bv_cfg = opt.integrator;
  bv_cfg.record = record;
  IntegratorConfig brk_cfg = bv_cfg;
  brk_cfg.max_step = std::min(brk_cfg.max_step, opt.max_compact_step);

  const AugmentedBv bv{SlowFastBv{p, eps}};
  const AugmentedBrk brk{SlowFastBrk{p, eps}};

  const std::vector<EventSpec<6>> bv_events{
      {[&](double, const StateVec<6>& y) { return y[1] - sp.v_switch; }, 1, true},
      {[&](double, const StateVec<6>& y) { return y[4] - xi_end; }, 1, true},
      {[&](double, const StateVec<6>& y) { return y[0] - hi; }, 1, true},
      {[&](double, const StateVec<6>& y) { return lo - y[0]; }, 1, true},
      {[&](double t, const StateVec<6>& y) { return bv(t, y)[1]; }, -1, false},
  };
  const std::vector<EventSpec<7>> brk_events{
      {[&](double, const StateVec<7>& y) { return y[1] - r_switch; }, 1, true},
      {[&](double, const StateVec<7>& y) { return y[4] - xi_end; }, 1, true},
      {[&](double, const StateVec<7>& y) { return y[0] - hi; }, 1, true},
      {[&](double, const StateVec<7>& y) { return lo - y[0]; }, 1, true},
      {[&](double t, const StateVec<7>& y) { return brk(t, y)[5]; }, -1, false},
  };

  Shot shot;
  shot.max_kappa = -std::numeric_limits<double>::infinity();
  StateVec<6> ybv{y0[0], y0[1], y0[2], y0[3], y0[4], 0.0};
  StateVec<7> ybrk{};
  bool compact = ybv[1] > sp.v_switch;
  if (compact) ybrk = {ybv[0], 1.0 / ybv[1], ybv[2], ybv[3], ybv[4], eps * std::log(ybv[1]), 0.0};

  const auto finish = [&](ShotStatus st, const ProfileSample& end) {
    shot.status = st;
    shot.end = end;
    bump(shot.max_kappa, end.kappa);
    return std::move(shot);
  };

  while (true) {
    if (shot.switches > opt.max_switches) {
      return finish(ShotStatus::step_cap, compact ? from_brk(ybrk) : from_bv(ybv, eps));
    }
    if (!compact) {
      const double t1 = (xi_end - ybv[4]) / eps + 10.0;
      const auto tr = integrate<6>(bv, ybv, 0.0, t1, bv_cfg, std::span<const EventSpec<6>>(bv_events));
      const std::size_t skip = shot.samples.empty() ? 0 : 1;
      for (std::size_t i = skip; record && i < tr.samples.size(); ++i)
        shot.samples.push_back(from_bv(tr.samples[i].y, eps));
      for (const auto& s : tr.samples) bump(shot.max_kappa, from_bv(s.y, eps).kappa);
      for (const auto& e : tr.events) bump(shot.max_kappa, from_bv(e.y, eps).kappa);
      ybv = tr.back().y;
      const ProfileSample end = from_bv(ybv, eps);
      if (tr.termination == Termination::blow_up) return finish(ShotStatus::blow_up, end);
      if (tr.termination == Termination::step_cap) return finish(ShotStatus::step_cap, end);
      if (tr.stopped_by(0)) {
        ybrk = {ybv[0], 1.0 / ybv[1], ybv[2], ybv[3], ybv[4], eps * std::log(ybv[1]), ybv[5]};
        compact = true;
        ++shot.switches;
        continue;
      }
      if (tr.stopped_by(2) || tr.stopped_by(3)) return finish(ShotStatus::left_strip, end);
      return finish(ShotStatus::reached_end, end);
    }
    const double t1 = 1e7;
    const auto tr =
        integrate<7>(brk, ybrk, 0.0, t1, brk_cfg, std::span<const EventSpec<7>>(brk_events));
    const std::size_t skip = shot.samples.empty() ? 0 : 1;
    for (std::size_t i = skip; record && i < tr.samples.size(); ++i)
      shot.samples.push_back(from_brk(tr.samples[i].y));
    for (const auto& s : tr.samples) bump(shot.max_kappa, s.y[5]);
    for (const auto& e : tr.events) bump(shot.max_kappa, e.y[5]);
    ybrk = tr.back().y;
    const ProfileSample end = from_brk(ybrk);
    if (tr.termination == Termination::blow_up) return finish(ShotStatus::blow_up, end);
    if (tr.termination == Termination::step_cap) return finish(ShotStatus::step_cap, end);
    if (tr.stopped_by(0)) {
      ybv = {ybrk[0], 1.0 / ybrk[1], ybrk[2], ybrk[3], ybrk[4], ybrk[6]};
      compact = false;
      ++shot.switches;
      continue;
    }
    if (tr.stopped_by(2) || tr.stopped_by(3)) return finish(ShotStatus::left_strip, end);
    if (tr.stopped_by(1)) return finish(ShotStatus::reached_end, end);
    return finish(ShotStatus::step_cap, end);
  }
}

std::array<double, 4> target_residual(const ProfileSample& end, double xi_end,
                                      const RiemannData& rd, const ShockQuantities& sq) {
  const double a2 = xi_end - sq.s;
  return {end.beta - rd.right.beta, end.v - rd.right.v,
          end.w1 - (sq.wR[0] - a2 * rd.right.beta), end.w2 - (sq.wR[1] - a2 * rd.right.v)};
}

double default_window(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                      double eps, const ShootConfig& cfg) {
  const double mu = std::max(0.0, sq.s - eigenvalues(rd.right, p).real_part);
  const double x = -mu + std::sqrt(mu * mu + 2.0 * eps * cfg.window_efolds);
  return sq.s + std::max(cfg.min_window, x);
}

}  // namespace dshock

namespace dshock {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Shooting problem at fixed eps. theta*(alpha) is an escape boundary in
// the angle: on one side the shot reaches the window end, on the other it
// leaves the strip. Near the connection the second condition is resolved
// by the distance to that boundary, hence the (alpha, eta) chart with
// theta = theta* + side 10^-eta.
class Shooter {
 public:
  Shooter(const RiemannData& rd, const ModelParams& p, double eps, const ShootingParams& base,
          const ShootConfig& cfg)
      : rd_(rd), p_(p), sq_(shock_quantities(rd, p)), eps_(eps), base_(base), cfg_(cfg) {}

  std::size_t fires() const { return fires_; }

  Shot fire_at(double alpha, double theta) {
    ShootingParams sp = base_;
    sp.alpha = alpha;
    sp.theta = theta;
    ++fires_;
    return fire(sp, rd_, sq_, p_, eps_, cfg_.shot, false);
  }

  bool reaches(double alpha, double theta) {
    if (!seedable(alpha)) return false;
    return fire_at(alpha, theta).status == ShotStatus::reached_end;
  }

  double objective(double alpha, double theta) {
    if (!seedable(alpha)) return kPenalty;
    const Shot s = fire_at(alpha, theta);
    if (s.status != ShotStatus::reached_end) return kPenalty;
    const auto r = target_residual(s.end, base_.xi_end, rd_, sq_);
    return r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3];
  }

  bool seedable(double alpha) const {
    const double xi = sq_.s + alpha;
    return xi >= base_.xi_start && xi < eigenvalues(rd_.left, p_).real_part;
  }

  // Bisection between an angle that reaches the end and one that does not.
  // Returns the last angle on the escaping side.
  double bisect(double alpha, double th_end, double th_out) {
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (th_end + th_out);
      if (m == th_end || m == th_out) break;
      (reaches(alpha, m) ? th_end : th_out) = m;
    }
    return th_out;
  }

  // theta*(alpha) near a guess; side points from theta* into the region
  // that reaches the end.
  double boundary(double alpha, double guess, double side) {
    double d = 1e-4;
    for (int k = 0; k < 24; ++k, d *= 2.0) {
      const double a = guess + side * d, b = guess - side * d;
      if (reaches(alpha, a) && !reaches(alpha, b)) return bisect(alpha, a, b);
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  static constexpr double kPenalty = 1e6;

 private:
  const RiemannData& rd_;
  const ModelParams& p_;
  ShockQuantities sq_;
  double eps_;
  ShootingParams base_;
  const ShootConfig& cfg_;
  std::size_t fires_ = 0;
};

struct Candidate {
  bool structured = false;
  double alpha = 0.0;
  double theta = 0.0;
  double theta_star = 0.0;
  double side = 1.0;
  double eta = 0.0;
  double f = Shooter::kPenalty;
};

double theta_of(const Candidate& c) {
  return c.structured ? c.theta_star + c.side * std::pow(10.0, -c.eta) : c.theta;
}

// Local minimization from a candidate. Structured candidates move in
// (alpha, eta) with theta*(alpha) tracked by continuation.
Candidate refine(Shooter& sh, Candidate c, double d_alpha, const ShootConfig& cfg,
                 std::size_t budget) {
  NelderMeadOptions o;
  o.f_tol = cfg.profile_tol * cfg.profile_tol * 1e-2;
  o.x_tol = 1e-14;
  o.max_evaluations = budget;
  if (c.structured) {
    double last_star = c.theta_star;
    double last_alpha = c.alpha;
    const auto f = [&](const std::vector<double>& x) {
      const double ts = x[0] == last_alpha ? last_star : sh.boundary(x[0], last_star, c.side);
      if (!std::isfinite(ts)) return Shooter::kPenalty;
      last_star = ts;
      last_alpha = x[0];
      return sh.objective(x[0], ts + c.side * std::pow(10.0, -x[1]));
    };
    o.initial_step = {d_alpha, 0.25};
    const auto r = nelder_mead(f, {c.alpha, c.eta}, o);
    const double ts = r.x[0] == last_alpha ? last_star : sh.boundary(r.x[0], last_star, c.side);
    if (std::isfinite(ts) && r.f < c.f) {
      c.alpha = r.x[0];
      c.eta = r.x[1];
      c.theta_star = ts;
      c.f = r.f;
    }
    c.theta = theta_of(c);
    return c;
  }
  const auto f = [&](const std::vector<double>& x) { return sh.objective(x[0], x[1]); };
  o.initial_step = {d_alpha, 0.5 * kTwoPi / static_cast<double>(cfg.theta_scan)};
  const auto r = nelder_mead(f, {c.alpha, c.theta}, o);
  if (r.f < c.f) {
    c.alpha = r.x[0];
    c.theta = r.x[1];
    c.f = r.f;
  }
  return c;
}

// eta scan below a boundary.
Candidate best_offset(Shooter& sh, double alpha, double theta_star, double side) {
  Candidate c{true, alpha, 0.0, theta_star, side, 0.0, Shooter::kPenalty};
  for (double eta = 0.0; eta <= 14.0; eta += 0.5) {
    const double f = sh.objective(alpha, theta_star + side * std::pow(10.0, -eta));
    if (f < c.f) {
      c.f = f;
      c.eta = eta;
    }
  }
  c.theta = theta_of(c);
  return c;
}

std::vector<Candidate> cold_candidates(Shooter& sh, const ShockQuantities& sq,
                                       const ShootingParams& base, double alpha_hi,
                                       const ShootConfig& cfg, double& d_alpha) {
  constexpr int n_alpha = 16;
  const double a_lo = base.xi_start - sq.s;
  d_alpha = (alpha_hi - a_lo) / n_alpha;
  const std::size_t nt = cfg.theta_scan;
  std::vector<Candidate> out;
  for (int i = 0; i <= n_alpha; ++i) {
    const double alpha = a_lo + d_alpha * i;
    if (!sh.seedable(alpha)) continue;
    std::vector<double> f(nt);
    std::vector<char> ok(nt);
    for (std::size_t j = 0; j < nt; ++j) {
      const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
      f[j] = sh.objective(alpha, th);
      ok[j] = f[j] < Shooter::kPenalty;
      if (ok[j]) out.push_back({false, alpha, th, 0.0, 1.0, 0.0, f[j]});
    }
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = (j + 1) % nt;
      if (ok[j] == ok[k]) continue;
      const double tj = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
      const double tk = tj + kTwoPi / static_cast<double>(nt);
      const double th_end = ok[j] ? tj : tk, th_out = ok[j] ? tk : tj;
      const double ts = sh.bisect(alpha, th_end, th_out);
      out.push_back(best_offset(sh, alpha, ts, th_end > th_out ? 1.0 : -1.0));
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.f < b.f; });
  return out;
}

}  // namespace

ProfileResult evaluate_profile(const ShootingParams& sp, const RiemannData& rd,
                               const ModelParams& p, double eps, const ShootConfig& cfg) {
  const ShockQuantities sq = shock_quantities(rd, p);
  const Shot shot = fire(sp, rd, sq, p, eps, cfg.shot, true);
  ProfileResult pr;
  pr.eps = eps;
  pr.params = sp;
  pr.samples = shot.samples;
  pr.max_eps_log_v = shot.max_kappa;
  pr.residual_vec = target_residual(shot.end, sp.xi_end, rd, sq);
  pr.residual = std::sqrt(pr.residual_vec[0] * pr.residual_vec[0] + pr.residual_vec[1] * pr.residual_vec[1] +
                          pr.residual_vec[2] * pr.residual_vec[2] + pr.residual_vec[3] * pr.residual_vec[3]);
  if (shot.status != ShotStatus::reached_end) pr.residual = std::numeric_limits<double>::infinity();
  pr.x2_trace.reserve(pr.samples.size());
  for (const ProfileSample& s : pr.samples) pr.x2_trace.push_back({s.xi, s.w2 + (s.xi - sq.s) * s.v});
  pr.success = pr.residual < cfg.profile_tol;
  return pr;
}

double x2_concentration(const ProfileResult& pr, const ModelParams& p, double band) {
  const auto& s = pr.samples;
  if (s.size() < 2 || pr.x2_trace.size() != s.size()) throw UsageError("x2_concentration: no profile samples");
  double total = 0.0, near = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double d = std::abs(pr.x2_trace[i][1] - pr.x2_trace[i - 1][1]);
    const double b = 0.5 * (s[i].beta + s[i - 1].beta);
    total += d;
    if (std::abs(b - p.rho1()) < band || std::abs(b - p.rho2()) < band) near += d;
  }
  return total > 0.0 ? near / total : 1.0;
}

ProfileResult shoot(const RiemannData& rd, const ModelParams& p, double eps,
                    const ShootingParams& sp_init, const ShootConfig& cfg) {
  if (!(eps > 0.0 && eps <= 0.5)) throw UsageError("shoot: eps must lie in (0, 0.5]");
  if (!check_h1(rd, p)) throw UsageError("shoot: Riemann data violate H1");
  const ShockQuantities sq = shock_quantities(rd, p);
  if (!(sp_init.xi_start < sq.s && sq.s < sp_init.xi_end))
    throw UsageError("shoot: window must satisfy xi_start < s < xi_end");
  if (!(sp_init.v_switch > std::max(rd.left.v, rd.right.v)))
    throw UsageError("shoot: v_switch must exceed max(vL, vR)");
  if (!(sp_init.delta_seed > 0.0)) throw UsageError("shoot: delta_seed must be positive");

  Shooter sh(rd, p, eps, sp_init, cfg);
  const double tol2 = cfg.profile_tol * cfg.profile_tol;
  const double alpha_hi = std::min(-0.02, eigenvalues(rd.left, p).real_part - sq.s - 0.05);
  Candidate best;
  const auto budget = [&] {
    return cfg.max_evaluations > sh.fires() ? cfg.max_evaluations - sh.fires() : std::size_t{0};
  };
  const auto consider = [&](const Candidate& c) {
    if (c.f < best.f) best = c;
    return best.f < tol2;
  };

  // Warm start: local search from the supplied parameters, in both charts.
  bool done = false;
  if (sh.seedable(sp_init.alpha)) {
    Candidate raw{false, sp_init.alpha, sp_init.theta, 0.0, 1.0, 0.0,
                  sh.objective(sp_init.alpha, sp_init.theta)};
    done = consider(raw);
    for (double side : {-1.0, 1.0}) {
      if (done) break;
      const double ts = sh.boundary(sp_init.alpha, sp_init.theta, side);
      if (!std::isfinite(ts)) continue;
      Candidate c = best_offset(sh, sp_init.alpha, ts, side);
      done = consider(c) || consider(refine(sh, c, 0.02, cfg, 200));
    }
  }
  if (!done) {
    double d_alpha = 0.05;
    const auto cands = cold_candidates(sh, sq, sp_init, alpha_hi, cfg, d_alpha);
    std::size_t tried = 0;
    for (const Candidate& c : cands) {
      if (done || tried >= 6 || budget() == 0) break;
      ++tried;
      done = consider(refine(sh, c, 0.5 * d_alpha, cfg, 400));
    }
  }
  ShootingParams sp = sp_init;
  sp.alpha = best.alpha;
  // Not reduced mod 2 pi: the optimizer's exact angle reproduces its shot.
  sp.theta = theta_of(best);
  ProfileResult pr = evaluate_profile(sp, rd, p, eps, cfg);
  pr.evaluations = sh.fires();
  if (!pr.success) {
    std::ostringstream os;
    os << "shoot: no connection at eps = " << eps << " (best residual " << pr.residual << ")";
    throw NoConvergenceError(os.str(), pr.residual);
  }
  return pr;
}

}  // namespace dshock

namespace dshock {

ShootingParams default_params(const RiemannData& rd, const ModelParams& p, double eps,
                              const ShootConfig& cfg) {
  const ShockQuantities sq = shock_quantities(rd, p);
  ShootingParams sp;
  sp.xi_end = default_window(rd, sq, p, eps, cfg);
  sp.xi_start = sq.s - 1.5;
  return sp;
}

namespace {

bool above(const ProfileSample& s, double r0) { return s.v > 1.0 / r0; }

bool at_level(const ProfileSample& s, double r0) {
  return std::abs(s.v * r0 - 1.0) <= 1e-9;
}

// Restarts the chart integration at sample `from` and stops where r == r0.
ProfileSample locate(const ProfileSample& from, double r0, int direction, const ModelParams& p,
                     double eps, const ShootConfig& cfg) {
  IntegratorConfig ic = cfg.shot.integrator;
  ic.record = false;
  if (from.compact) {
    ic.max_step = std::min(ic.max_step, cfg.shot.max_compact_step);
    const AugmentedBrk f{SlowFastBrk{p, eps}};
    const std::vector<EventSpec<7>> ev{
        {[r0](double, const StateVec<7>& y) { return r0 - y[1]; }, direction, true}};
    const auto tr = integrate<7>(f, {from.beta, from.r, from.w1, from.w2, from.xi, from.kappa, from.zeta},
                                 0.0, 1e7, ic, std::span<const EventSpec<7>>(ev));
    if (!tr.stopped_by(0)) throw NumericalFailure("crossings: restart missed the r0 level");
    return from_brk(tr.back().y);
  }
  const AugmentedBv f{SlowFastBv{p, eps}};
  const std::vector<EventSpec<6>> ev{
      {[r0](double, const StateVec<6>& y) { return y[1] - 1.0 / r0; }, direction, true}};
  const auto tr = integrate<6>(f, {from.beta, from.v, from.w1, from.w2, from.xi, from.zeta}, 0.0,
                               1e7, ic, std::span<const EventSpec<6>>(ev));
  if (!tr.stopped_by(0)) throw NumericalFailure("crossings: restart missed the r0 level");
  return from_bv(tr.back().y, eps);
}

}  // namespace

Crossings crossings(const ProfileResult& pr, const ModelParams& p, double r0,
                    const ShootConfig& cfg) {
  if (!(r0 > 0.0)) throw UsageError("crossings: r0 must be positive");
  const auto& s = pr.samples;
  std::size_t first = s.size(), last = s.size();
  for (std::size_t i = 1; i < s.size(); ++i) {
    const bool in_prev = above(s[i - 1], r0) || at_level(s[i - 1], r0);
    const bool in_now = above(s[i], r0) || at_level(s[i], r0);
    if (!in_prev && in_now && first == s.size()) first = i - 1;
    if (in_prev && !in_now) last = i - 1;
  }
  if (first == s.size() || last == s.size()) {
    std::ostringstream os;
    os << "crossings: the spike stays below v = 1/r0 = " << 1.0 / r0;
    throw NumericalFailure(os.str());
  }
  const ProfileSample in = at_level(s[first + 1], r0) ? s[first + 1]
                                                      : locate(s[first], r0, 1, p, pr.eps, cfg);
  const ProfileSample out = at_level(s[last], r0) ? s[last] : locate(s[last], r0, -1, p, pr.eps, cfg);
  return {r0, in.xi, out.xi, in.zeta, out.zeta, in.beta, out.beta};
}

SweepReport sweep(const RiemannData& rd, const ModelParams& p, const std::vector<double>& eps_list,
                  const ShootConfig& cfg) {
  if (eps_list.size() < 3) throw UsageError("sweep: need at least 3 eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) throw UsageError("sweep: eps list must be decreasing");

  const ShockQuantities sq = shock_quantities(rd, p);
  SweepReport rep;
  std::optional<ShootingParams> prev;
  for (double eps : eps_list) {
    SweepEntry e;
    e.eps = eps;
    ShootingParams sp = default_params(rd, p, eps, cfg);
    if (prev) {
      sp.alpha = prev->alpha;
      sp.theta = prev->theta;
    }
    try {
      e.profile = shoot(rd, p, eps, sp, cfg);
      e.success = true;
    } catch (const NoConvergenceError& ex) {
      e.failure = ex.what();
    }
    rep.entries.push_back(std::move(e));
    if (rep.entries.back().success) prev = rep.entries.back().profile.params;
  }

  // Least-squares line through (eps, max eps log v) of the successful members.
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const SweepEntry& e : rep.entries) {
    if (!e.success) continue;
    const double x = e.eps, y = e.profile.max_eps_log_v;
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.kappa0 = slow_quantities(sq, p).kappa0;
  rep.printed = printed_growth_rate(sq, p);
  if (n >= 2) {
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.extrapolated = (sy - rep.slope * sx) / n;
  } else {
    rep.extrapolated = std::numeric_limits<double>::quiet_NaN();
  }
  rep.rel_gap_kappa0 = std::abs(rep.extrapolated - rep.kappa0) / rep.kappa0;
  rep.rel_gap_printed = std::abs(rep.extrapolated - rep.printed) / rep.printed;
  const bool k = rep.rel_gap_kappa0 < 0.1, pp = rep.rel_gap_printed < 0.1;
  rep.closer = k && pp ? "both" : k ? "kappa0" : pp ? "printed" : "neither";
  return rep;
}

}  // namespace dshock
