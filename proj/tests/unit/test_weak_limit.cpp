#include <cmath>

#include "doctest.h"
#include "dshock/errors.hpp"
#include "dshock/weak_limit.hpp"
#include "profiles.hpp"
#include "sample.hpp"

using namespace dshock;
using doctest::Approx;

namespace {

// Piecewise-constant synthetic profile: v = 1/r0 * 2 on [a, b], small elsewhere.
ProfileResult synthetic(double a, double b, double vin) {
  ProfileResult pr;
  pr.eps = 0.01;
  pr.success = true;
  for (int i = 0; i <= 400; ++i) {
    const double xi = -0.2 + 0.4 * i / 400.0;
    ProfileSample q;
    q.xi = xi;
    q.beta = 1.5;
    q.v = (xi >= a && xi <= b) ? vin : 1.0;
    q.r = 1.0 / q.v;
    pr.samples.push_back(q);
  }
  return pr;
}

}  // namespace

TEST_SUITE("weak_limit") {
  TEST_CASE("inner mass equals the exact time integral") {
    const ProfileResult& pr = test::sample_profile(0.01);
    const WeakLimitReport w = analyze(pr, test::sample_data(), test::sample_params());
    CHECK(w.identity_rel_gap < 1e-3);
    CHECK(w.delta_strength > 0.0);
    CHECK(w.xi_in < 0.0);
    CHECK(w.xi_out > 0.0);
    CHECK(w.beta_inner <= 2.0 * (w.xi_out - w.xi_in));
  }

  TEST_CASE("crossings contract and the inner mass grows as eps decreases") {
    const WeakLimitReport a = analyze(test::sample_profile(0.02), test::sample_data(), test::sample_params());
    const WeakLimitReport b = analyze(test::sample_profile(0.01), test::sample_data(), test::sample_params());
    const auto reach = [](const WeakLimitReport& w) { return std::max(-w.xi_in, w.xi_out); };
    CHECK(reach(b) < reach(a));
    CHECK(b.xi_out - b.xi_in < a.xi_out - a.xi_in);
    CHECK(b.delta_strength > a.delta_strength);
    CHECK(b.beta_inner < a.beta_inner);
  }

  TEST_CASE("no crossing when the spike stays below 1/r0") {
    CHECK_THROWS_AS(analyze(test::sample_profile(0.1), test::sample_data(), test::sample_params()),
                    NumericalFailure);
  }

  TEST_CASE("pairing with a bump at s") {
    const ProfileResult& pr = test::sample_profile(0.01);
    const ShockQuantities sq = shock_quantities(test::sample_data(), test::sample_params());
    const TestFunction tf = bump(sq.s, 0.15);
    const Pairing pg = pair_similarity(pr, test::sample_data(), test::sample_params(), tf);
    CHECK(std::abs(pg.error[1]) < 0.05 * sq.e0 * tf.psi(sq.s));
    CHECK(std::abs(pg.error[0]) < 1e-3);
  }

  TEST_CASE("pairing is linear and vanishes for psi = 0") {
    const ProfileResult& pr = test::sample_profile(0.02);
    const TestFunction a = bump(0.0, 0.1), b = bump(0.05, 0.1);
    const TestFunction sum{[&](double x) { return a.psi(x) + 2.0 * b.psi(x); }, -0.1, 0.15};
    const TestFunction zero{[](double) { return 0.0; }, -0.1, 0.1};
    const auto rd = test::sample_data();
    const auto p = test::sample_params();
    const Pairing pa = pair_similarity(pr, rd, p, a), pb = pair_similarity(pr, rd, p, b),
                  ps = pair_similarity(pr, rd, p, sum), pz = pair_similarity(pr, rd, p, zero);
    for (int c = 0; c < 2; ++c) {
      CHECK(ps.profile[c] == Approx(pa.profile[c] + 2.0 * pb.profile[c]).epsilon(1e-12));
      CHECK(pz.profile[c] == 0.0);
      CHECK(pz.limit[c] == 0.0);
    }
  }

  TEST_CASE("psi vanishing at s leaves only the side states") {
    const ProfileResult& pr = test::sample_profile(0.02);
    const TestFunction tf = bump(-0.1, 0.05);
    const Pairing pg = pair_similarity(pr, test::sample_data(), test::sample_params(), tf);
    const double mass = pg.limit[0] / 1.9;
    CHECK(pg.limit[1] == Approx(1.0 * mass).epsilon(1e-12));
    CHECK_THROWS_AS(pair_similarity(pr, test::sample_data(), test::sample_params(), bump(0.0, 5.0)),
                    NumericalFailure);
  }

  TEST_CASE("space-time delta coefficient") {
    ShockQuantities sq;
    sq.e0 = test::kE0;
    CHECK(spacetime_delta_coefficient(sq) == Approx(test::kE0).epsilon(1e-15));
    sq.s = 1e8;
    CHECK(spacetime_delta_coefficient(sq) < 1e-8);
    sq.e0 = 0.0;
    CHECK(spacetime_delta_coefficient(sq) == 0.0);
  }

  TEST_CASE("synthetic plateau quadrature") {
    // analyze needs integrable crossings, so check the trapezoid directly via pairing
    const ProfileResult pr = synthetic(-0.05, 0.05, 20.0);
    const TestFunction one{[](double) { return 1.0; }, -0.2, 0.2};
    const Pairing pg = pair_similarity(pr, test::sample_data(), test::sample_params(), one);
    CHECK(pg.profile[0] == Approx(1.5 * 0.4).epsilon(1e-12));
  }
}
