#include "dshock/ode.hpp"

#include <cmath>
#include <sstream>

#include "dshock/fields.hpp"

namespace dshock {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(event_tol > 0.0) || !(max_step > 0.0) ||
      max_steps < 1 || !(blow_up > 0.0)) {
    throw UsageError("IntegratorConfig: tolerances and max_step must be positive, max_steps >= 1");
  }
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::time_reached: return "time_reached";
    case Termination::event: return "event";
    case Termination::step_cap: return "step_cap";
    case Termination::blow_up: return "blow_up";
  }
  return "unknown";
}

std::size_t dimension(VectorFieldId id) noexcept {
  switch (id) {
    case VectorFieldId::sf_bv: return 5;
    case VectorFieldId::fast_bv: return 2;
    case VectorFieldId::sf_brk: return 6;
    case VectorFieldId::fast_brk: return 2;
    case VectorFieldId::dafermos_xi: return 4;
    case VectorFieldId::harmonic: return 2;
  }
  return 0;
}

const char* to_string(VectorFieldId id) noexcept {
  switch (id) {
    case VectorFieldId::sf_bv: return "SF_BV";
    case VectorFieldId::fast_bv: return "FAST_BV";
    case VectorFieldId::sf_brk: return "SF_BRK";
    case VectorFieldId::fast_brk: return "FAST_BRK";
    case VectorFieldId::dafermos_xi: return "DAFERMOS_XI";
    case VectorFieldId::harmonic: return "HARMONIC";
  }
  return "unknown";
}

namespace {

template <std::size_t N, class F>
Trajectory run(const F& field, std::span<const double> y0, double t0, double t1,
               const IntegratorConfig& cfg, std::span<const ScalarEvent> events) {
  StateVec<N> y{};
  std::copy(y0.begin(), y0.end(), y.begin());
  std::vector<EventSpec<N>> typed;
  typed.reserve(events.size());
  for (const ScalarEvent& e : events) {
    typed.push_back({[fn = e.fn](double t, const StateVec<N>& s) {
                       return fn(t, std::span<const double>(s.data(), N));
                     },
                     e.direction, e.terminal});
  }
  const TypedTrajectory<N> tr =
      integrate<N>(field, y, t0, t1, cfg, std::span<const EventSpec<N>>(typed));
  Trajectory out;
  out.termination = tr.termination;
  out.times.reserve(tr.samples.size());
  out.states.reserve(tr.samples.size());
  for (const auto& s : tr.samples) {
    out.times.push_back(s.t);
    out.states.emplace_back(s.y.begin(), s.y.end());
  }
  for (const auto& e : tr.events) out.events.push_back({e.id, e.t, {e.y.begin(), e.y.end()}});
  return out;
}

}  // namespace

Trajectory integrate(VectorFieldId field, const FieldParams& params, std::span<const double> y0,
                     double t0, double t1, const IntegratorConfig& cfg,
                     std::span<const ScalarEvent> events) {
  if (y0.size() != dimension(field)) {
    std::ostringstream os;
    os << "integrate: " << to_string(field) << " expects a state of dimension " << dimension(field)
       << ", got " << y0.size();
    throw UsageError(os.str());
  }
  const ModelParams& p = params.model;
  switch (field) {
    case VectorFieldId::sf_bv:
      return run<5>(SlowFastBv{p, params.eps}, y0, t0, t1, cfg, events);
    case VectorFieldId::fast_bv:
      return run<2>(FastBv{p, params.w, params.xi}, y0, t0, t1, cfg, events);
    case VectorFieldId::sf_brk:
      return run<6>(SlowFastBrk{p, params.eps}, y0, t0, t1, cfg, events);
    case VectorFieldId::fast_brk:
      return run<2>(FastBrk{p, params.w, params.xi}, y0, t0, t1, cfg, events);
    case VectorFieldId::dafermos_xi:
      if (!(params.eps > 0.0)) throw UsageError("integrate: DAFERMOS_XI requires eps > 0");
      return run<4>(DafermosXi{p, params.eps}, y0, t0, t1, cfg, events);
    case VectorFieldId::harmonic:
      return run<2>(HarmonicOscillator{}, y0, t0, t1, cfg, events);
  }
  throw UsageError("integrate: unknown vector field");
}

OrderMeasurement convergence_order(OrderTestProblem problem, std::size_t base_steps,
                                   std::size_t halvings) {
  if (base_steps == 0 || halvings == 0) throw UsageError("convergence_order: need steps and halvings");
  OrderMeasurement m;
  std::size_t n = base_steps;
  for (std::size_t k = 0; k <= halvings; ++k, n *= 2) {
    double err = 0.0;
    if (problem == OrderTestProblem::linear_decay) {
      const auto f = [](double, const StateVec<1>& y) { return StateVec<1>{-y[0]}; };
      const auto y = integrate_fixed<1>(f, StateVec<1>{1.0}, 0.0, 1.0, n);
      err = std::abs(y[0] - std::exp(-1.0));
    } else {
      // y' = i y written in real form.
      const auto f = [](double, const StateVec<2>& y) { return StateVec<2>{-y[1], y[0]}; };
      const auto y = integrate_fixed<2>(f, StateVec<2>{1.0, 0.0}, 0.0, 1.0, n);
      err = std::hypot(y[0] - std::cos(1.0), y[1] - std::sin(1.0));
    }
    m.steps.push_back(n);
    m.errors.push_back(err);
  }
  const std::size_t last = m.errors.size() - 1;
  m.order = std::log2(m.errors[last - 1] / m.errors[last]);
  return m;
}

}  // namespace dshock
