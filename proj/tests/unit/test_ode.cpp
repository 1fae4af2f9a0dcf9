#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dshock/errors.hpp"
#include "dshock/fields.hpp"
#include "dshock/ode.hpp"
#include "dshock/singular_config.hpp"
#include "sample.hpp"

using namespace dshock;
using doctest::Approx;

TEST_SUITE("ode") {
  TEST_CASE("harmonic oscillator returns after one period") {
    const std::vector<double> y0{1.0, 0.0};
    const Trajectory tr =
        integrate(VectorFieldId::harmonic, {}, y0, 0.0, 2.0 * std::numbers::pi, IntegratorConfig{});
    CHECK(tr.termination == Termination::time_reached);
    CHECK(std::abs(tr.states.back()[0] - 1.0) < 1e-8);
    CHECK(std::abs(tr.states.back()[1]) < 1e-8);
    for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
  }

  TEST_CASE("backward integration has decreasing times") {
    const std::vector<double> y0{1.0, 0.0};
    const Trajectory tr = integrate(VectorFieldId::harmonic, {}, y0, 0.0, -1.0, IntegratorConfig{});
    CHECK(std::abs(tr.states.back()[0] - std::cos(1.0)) < 1e-9);
    CHECK(std::abs(tr.states.back()[1] - std::sin(1.0)) < 1e-9);
    for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] < tr.times[i - 1]);
  }

  TEST_CASE("measured order of the fifth-order solution") {
    for (auto prob : {OrderTestProblem::linear_decay, OrderTestProblem::rotation}) {
      const OrderMeasurement m = convergence_order(prob);
      CHECK(m.order >= 4.5);
      CHECK(m.order <= 5.5);
      for (std::size_t i = 1; i < m.errors.size(); ++i) CHECK(m.errors[i] < m.errors[i - 1]);
    }
  }

  TEST_CASE("usage errors") {
    const std::vector<double> bad{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(integrate(VectorFieldId::harmonic, {}, bad, 0.0, 1.0, IntegratorConfig{}), UsageError);
    const std::vector<double> y0{1.0, 0.0};
    CHECK_THROWS_AS(integrate(VectorFieldId::harmonic, {}, y0, 0.0, 0.0, IntegratorConfig{}), UsageError);
    IntegratorConfig neg;
    neg.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate(VectorFieldId::harmonic, {}, y0, 0.0, 1.0, neg), UsageError);
    const std::vector<double> y4{1.9, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(integrate(VectorFieldId::dafermos_xi, {}, y4, -0.3, 0.3, IntegratorConfig{}), UsageError);
  }

  TEST_CASE("events are located to tolerance") {
    const std::vector<double> y0{1.0, 0.0};
    IntegratorConfig cfg;
    const std::vector<ScalarEvent> ev{{[](double, std::span<const double> y) { return y[0] - 0.3; }, -1, true}};
    const Trajectory tr = integrate(VectorFieldId::harmonic, {}, y0, 0.0, 10.0, cfg, ev);
    REQUIRE(tr.termination == Termination::event);
    REQUIRE(tr.events.size() == 1);
    CHECK(std::abs(tr.events[0].y[0] - 0.3) <= cfg.event_tol * 2.0);
    CHECK(tr.events[0].t == Approx(std::acos(0.3)).epsilon(1e-9));
  }

  TEST_CASE("step cap and blow-up terminate with distinct reasons") {
    const std::vector<double> y0{1.0, 0.0};
    IntegratorConfig capped;
    capped.max_steps = 3;
    CHECK(integrate(VectorFieldId::harmonic, {}, y0, 0.0, 100.0, capped).termination == Termination::step_cap);

    const auto riccati = [](double, const StateVec<1>& y) { return StateVec<1>{y[0] * y[0]}; };
    const auto tr = integrate<1>(riccati, StateVec<1>{1.0}, 0.0, 2.0, IntegratorConfig{});
    CHECK(tr.termination == Termination::blow_up);
    CHECK(tr.back().t < 1.0);
  }

  TEST_CASE("compactified field keeps the plane r = 0 invariant") {
    const ModelParams p = test::sample_params();
    FieldParams fp{p, 0.05, {}, 0.0};
    const std::vector<double> y0{1.9, 0.0, -0.05, 0.2, 0.0, 0.05};
    const Trajectory tr = integrate(VectorFieldId::sf_brk, fp, y0, 0.0, 3.0, IntegratorConfig{});
    for (const auto& y : tr.states) CHECK(y[1] == 0.0);
  }

  TEST_CASE("layer field vanishes on the line through P_L") {
    const ModelParams p = test::sample_params();
    const ShockQuantities sq = shock_quantities(test::sample_data(), p);
    const FastBrk f{p, sq.wL, sq.s};
    const auto d = f(0.0, StateVec<2>{2.0, 0.0});
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 0.0);
  }

  TEST_CASE("time reversal of the layer field") {
    const ModelParams p = test::sample_params();
    const ShockQuantities sq = shock_quantities(test::sample_data(), p);
    const FastBrk f{p, sq.wL, sq.s};
    IntegratorConfig cfg;
    const StateVec<2> y0{1.7, 0.8};  // off the equilibrium at (beta_L, 1/v_L)
    const auto fwd = integrate<2>(f, y0, 0.0, 2.0, cfg);
    const auto back = integrate<2>(f, fwd.back().y, 2.0, 0.0, cfg);
    const double bound = 10.0 * (cfg.rel_tol * std::hypot(y0[0], y0[1]) + cfg.abs_tol);
    CHECK(std::hypot(back.back().y[0] - y0[0], back.back().y[1] - y0[1]) < bound);
  }

  TEST_CASE("backward layer flow from the stable direction of P_L reaches uL") {
    const ModelParams p = test::sample_params();
    const RiemannData rd = test::sample_data();
    const ShockQuantities sq = shock_quantities(rd, p);
    const SaddleData sd = saddle_at_P(Side::left, sq, p);
    const FastBrk f{p, sq.wL, sq.s};
    const double delta = 1e-7;
    // orient y_s into r > 0
    const double sgn = sd.y_s[1] >= 0.0 ? 1.0 : -1.0;
    const StateVec<2> y0{sd.point[0] + sgn * delta * sd.y_s[0], sd.point[1] + sgn * delta * sd.y_s[1]};
    IntegratorConfig cfg;
    const auto tr = integrate<2>(f, y0, 0.0, -200.0, cfg);
    CHECK(std::abs(tr.back().y[0] - 1.9) < 1e-6);
    CHECK(std::abs(tr.back().y[1] - 1.0) < 1e-6);

    // fixed-step oracle at h = 1e-3 over the same span
    const auto fixed = integrate_fixed<2>(f, y0, 0.0, -200.0, 200000);
    CHECK(std::abs(fixed[0] - tr.back().y[0]) < 1e-7);
    CHECK(std::abs(fixed[1] - tr.back().y[1]) < 1e-7);
  }

  TEST_CASE("slow-fast run is insensitive to tolerance") {
    const ModelParams p = test::sample_params();
    FieldParams fp{p, 0.1, {}, 0.0};
    const std::vector<double> y0{1.8, 1.1, -0.05, 0.2, -0.2};
    IntegratorConfig loose, tight;
    loose.rel_tol = 1e-6;
    loose.abs_tol = 1e-8;
    const auto a = integrate(VectorFieldId::sf_bv, fp, y0, 0.0, 2.0, loose);
    const auto b = integrate(VectorFieldId::sf_bv, fp, y0, 0.0, 2.0, tight);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(a.states.back()[i] - b.states.back()[i]) < 1e-5);
  }
}
