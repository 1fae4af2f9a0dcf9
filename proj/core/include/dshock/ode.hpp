#pragma once

// Embedded Dormand-Prince 5(4) integrator with PI step control and
// bisection-located events. Header-only for the fixed-dimension path used by
// the analysis modules; the VectorFieldId entry point lives in ode.cpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dshock/errors.hpp"
#include "dshock/model.hpp"

namespace dshock {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
  double event_tol = 1e-12;
  double initial_step = 0.0;  // 0 selects automatically
  double blow_up = 1e12;      // |y_i| above this terminates the run
  bool record = true;         // keep every accepted step in samples

  void validate() const;
};

enum class Termination { time_reached, event, step_cap, blow_up };

const char* to_string(Termination t) noexcept;

template <std::size_t N>
struct EventSpec {
  std::function<double(double, const StateVec<N>&)> fn;
  int direction = 0;  // +1 rising only, -1 falling only, 0 either
  bool terminal = true;
};

template <std::size_t N>
struct Sample {
  double t;
  StateVec<N> y;
};

template <std::size_t N>
struct EventHit {
  std::size_t id;
  double t;
  StateVec<N> y;
};

template <std::size_t N>
struct TypedTrajectory {
  std::vector<Sample<N>> samples;
  std::vector<EventHit<N>> events;
  Termination termination = Termination::time_reached;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  const Sample<N>& back() const { return samples.back(); }
  bool stopped_by(std::size_t event_id) const {
    return termination == Termination::event && !events.empty() && events.back().id == event_id;
  }
};

namespace detail {

// Dormand & Prince (1980) tableau.
struct Dopri5Tableau {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - bhat (error weights)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <std::size_t N>
struct StepResult {
  StateVec<N> y;
  StateVec<N> err;
  StateVec<N> k7;  // f(t+h, y), reused as next k1 (FSAL)
};

template <std::size_t N, class F>
StepResult<N> dopri_step(const F& f, double t, const StateVec<N>& y, const StateVec<N>& k1,
                            double h) {
  using T = Dopri5Tableau;
  StateVec<N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * T::a21 * k1[i];
  const StateVec<N> k2 = f(t + T::c2 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
  const StateVec<N> k3 = f(t + T::c3 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
  const StateVec<N> k4 = f(t + T::c4 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
  const StateVec<N> k5 = f(t + T::c5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] + T::a64 * k4[i] +
                         T::a65 * k5[i]);
  const StateVec<N> k6 = f(t + h, tmp);
  StepResult<N> r;
  for (std::size_t i = 0; i < N; ++i)
    r.y[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] + T::b5 * k5[i] +
                         T::b6 * k6[i]);
  r.k7 = f(t + h, r.y);
  for (std::size_t i = 0; i < N; ++i)
    r.err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                    T::e6 * k6[i] + T::e7 * r.k7[i]);
  return r;
}

template <std::size_t N>
double max_abs(const StateVec<N>& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N>
bool all_finite(const StateVec<N>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

inline bool crosses(double g0, double g1, int direction) {
  if (!(std::isfinite(g0) && std::isfinite(g1))) return false;
  const bool rising = g0 < 0.0 && g1 >= 0.0;
  const bool falling = g0 > 0.0 && g1 <= 0.0;
  if (direction > 0) return rising;
  if (direction < 0) return falling;
  return rising || falling;
}

}  // namespace detail

// Integrates y' = f(t, y) from t0 towards t1 (either direction). The field
// is any callable StateVec<N>(double, const StateVec<N>&).
template <std::size_t N, class F>
TypedTrajectory<N> integrate(const F& f, const StateVec<N>& y0, double t0, double t1,
                             const IntegratorConfig& cfg,
                             std::span<const EventSpec<N>> events = {}) {
  cfg.validate();
  if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw UsageError("integrate: degenerate or non-finite time span");

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  TypedTrajectory<N> tr;
  double t = t0;
  StateVec<N> y = y0;
  if (cfg.record) tr.samples.push_back({t, y});
  if (!detail::all_finite(y) || detail::max_abs(y) > cfg.blow_up) {
    if (!cfg.record) tr.samples.push_back({t, y});
    tr.termination = Termination::blow_up;
    return tr;
  }

  StateVec<N> k1 = f(t, y);
  std::vector<double> g_prev(events.size());
  for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].fn(t, y);

  auto scale = [&](std::size_t i, const StateVec<N>& a, const StateVec<N>& b) {
    return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h = cfg.initial_step;
  if (h <= 0.0) {
    // Hairer-Wanner starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min({h, span, cfg.max_step});

  constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 10.0;
  constexpr double kAlpha = 0.7 / 5.0, kBeta = 0.4 / 5.0;
  double err_prev = 1e-4;
  bool last_rejected = false;

  while (true) {
    if (tr.steps >= cfg.max_steps) {
      tr.termination = Termination::step_cap;
      break;
    }
    const double remaining = std::abs(t1 - t);
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (remaining <= hmin) {
      tr.termination = Termination::time_reached;
      break;
    }
    bool final_step = false;
    if (h >= remaining) {
      h = remaining;
      final_step = true;
    }
    if (h < hmin) {
      throw StiffnessError("integrate: step size underflow at t=" + std::to_string(t));
    }

    const auto step = detail::dopri_step<N>(f, t, y, k1, dir * h);
    double err = 0.0;
    bool finite = detail::all_finite(step.y) && detail::all_finite(step.k7);
    if (finite) {
      for (std::size_t i = 0; i < N; ++i)
        err = std::max(err, std::abs(step.err[i]) / scale(i, y, step.y));
      finite = std::isfinite(err);
    }
    if (!finite) {
      h *= 0.1;
      last_rejected = true;
      ++tr.rejected;
      continue;
    }

    if (err > 1.0) {
      const double fac = std::max(kFacMin, kSafety * std::pow(err, -kAlpha));
      h *= last_rejected ? std::min(fac, 0.5) : fac;
      last_rejected = true;
      ++tr.rejected;
      continue;
    }

    // Accepted.
    const double t_new = final_step ? t1 : t + dir * h;
    ++tr.steps;

    // Event scan over the accepted step.
    struct Located {
      std::size_t id;
      double h;
      StateVec<N> y;
    };
    std::vector<Located> located;
    std::vector<double> g_new(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
      g_new[e] = events[e].fn(t_new, step.y);
      if (!detail::crosses(g_prev[e], g_new[e], events[e].direction)) continue;
      // Bisection on restarted single steps from (t, y).
      double lo = 0.0, hi = h;
      StateVec<N> y_hi = step.y;
      double g_lo = g_prev[e];
      for (int it = 0; it < 200; ++it) {
        const double g_hi = events[e].fn(t + dir * hi, y_hi);
        if (std::abs(g_hi) <= cfg.event_tol * (1.0 + detail::max_abs(y_hi))) break;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
          break;
        const double mid = 0.5 * (lo + hi);
        const auto ms = detail::dopri_step<N>(f, t, y, k1, dir * mid);
        const double g_mid = events[e].fn(t + dir * mid, ms.y);
        if (detail::crosses(g_lo, g_mid, 0)) {
          hi = mid;
          y_hi = ms.y;
        } else {
          lo = mid;
          g_lo = g_mid;
        }
      }
      located.push_back({e, hi, y_hi});
    }
    std::sort(located.begin(), located.end(),
              [](const Located& a, const Located& b) { return a.h < b.h; });
    for (const Located& hit : located) {
      const double t_hit = t + dir * hit.h;
      tr.events.push_back({hit.id, t_hit, hit.y});
      if (events[hit.id].terminal) {
        if (cfg.record) tr.samples.push_back({t_hit, hit.y});
        else tr.samples.assign(1, {t_hit, hit.y});
        tr.termination = Termination::event;
        return tr;
      }
    }

    t = t_new;
    y = step.y;
    k1 = step.k7;
    g_prev = std::move(g_new);
    if (cfg.record) tr.samples.push_back({t, y});

    if (detail::max_abs(y) > cfg.blow_up) {
      tr.termination = Termination::blow_up;
      break;
    }
    if (final_step) {
      tr.termination = Termination::time_reached;
      break;
    }

    const double fac = kSafety * std::pow(std::max(err, 1e-10), -kAlpha) * std::pow(err_prev, kBeta);
    h *= std::clamp(fac, kFacMin, last_rejected ? 1.0 : kFacMax);
    h = std::min(h, cfg.max_step);
    err_prev = std::max(err, 1e-4);
    last_rejected = false;
  }
  if (!cfg.record) tr.samples.assign(1, {t, y});
  return tr;
}

// Fixed-step propagation with the fifth-order solution of the pair; used for
// order verification.
template <std::size_t N, class F>
StateVec<N> integrate_fixed(const F& f, const StateVec<N>& y0, double t0, double t1,
                            std::size_t n_steps) {
  if (n_steps == 0) throw UsageError("integrate_fixed: n_steps must be positive");
  const double h = (t1 - t0) / static_cast<double>(n_steps);
  StateVec<N> y = y0;
  double t = t0;
  StateVec<N> k1 = f(t, y);
  for (std::size_t i = 0; i < n_steps; ++i) {
    const auto st = detail::dopri_step<N>(f, t, y, k1, h);
    y = st.y;
    k1 = st.k7;
    t = t0 + h * static_cast<double>(i + 1);
  }
  return y;
}

// ---------------------------------------------------------------------------
// Runtime-dispatched entry point over the named model fields.

enum class VectorFieldId {
  sf_bv,        // (beta, v, w1, w2, xi), fast time, eps
  fast_bv,      // (beta, v) with frozen (w, xi)
  sf_brk,       // (beta, r, w1, w2, xi, kappa), r = 1/v, eps
  fast_brk,     // (beta, r) with frozen (w, xi, kappa)
  dafermos_xi,  // (beta, v, w1, w2) with xi as the independent variable, eps
  harmonic,     // y'' = -y as (y, y'); plumbing test problem
};

std::size_t dimension(VectorFieldId id) noexcept;
const char* to_string(VectorFieldId id) noexcept;

struct FieldParams {
  ModelParams model{2.0, 1.0};
  double eps = 0.0;
  Vec2 w{};         // frozen w for the fast fields
  double xi = 0.0;  // frozen xi for the fast fields
};

struct ScalarEvent {
  std::function<double(double, std::span<const double>)> fn;
  int direction = 0;
  bool terminal = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  struct Event {
    std::size_t id;
    double t;
    std::vector<double> y;
  };
  std::vector<Event> events;
  Termination termination = Termination::time_reached;
};

Trajectory integrate(VectorFieldId field, const FieldParams& params, std::span<const double> y0,
                     double t0, double t1, const IntegratorConfig& cfg,
                     std::span<const ScalarEvent> events = {});

// Measured order of the fifth-order solution on a problem with a known
// closed form, from the error ratio of successive step halvings.
enum class OrderTestProblem { linear_decay, rotation };

struct OrderMeasurement {
  std::vector<std::size_t> steps;
  std::vector<double> errors;
  double order = 0.0;  // from the last halving
};

OrderMeasurement convergence_order(OrderTestProblem problem, std::size_t base_steps = 8,
                                   std::size_t halvings = 3);

}  // namespace dshock
