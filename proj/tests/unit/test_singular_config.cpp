#include <cmath>

#include "doctest.h"
#include "dshock/errors.hpp"
#include "dshock/fields.hpp"
#include "dshock/singular_config.hpp"
#include "sample.hpp"

using namespace dshock;
using doctest::Approx;

namespace {

struct SampleCase {
  ModelParams p = test::sample_params();
  RiemannData rd = test::sample_data();
  ShockQuantities sq = shock_quantities(rd, p);
};

void check_eigenpair(const SaddleData& sd) {
  for (const auto& [l, y] : {std::pair{sd.lambda_u, sd.y_u}, std::pair{sd.lambda_s, sd.y_s}}) {
    CHECK(std::hypot(y[0], y[1]) == Approx(1.0).epsilon(1e-14));
    for (int r = 0; r < 2; ++r)
      CHECK(std::abs(sd.jacobian[r][0] * y[0] + sd.jacobian[r][1] * y[1] - l * y[r]) < 1e-12);
  }
}

}  // namespace

TEST_SUITE("singular_config") {
  TEST_CASE("saddle at P_L") {
    const SampleCase s;
    const SaddleData sd = saddle_at_P(Side::left, s.sq, s.p);
    CHECK(sd.point[0] == 2.0);
    CHECK(sd.point[1] == 0.0);
    CHECK(std::abs(sd.lambda_u - 0.5) < 1e-12);
    CHECK(std::abs(sd.lambda_s + 0.25) < 1e-12);
    check_eigenpair(sd);
    // off-diagonal includes the w1 term: -(s rho1 + w1L)
    CHECK(sd.jacobian[0][1] == Approx(-(s.sq.s * 2.0 + s.sq.wL[0])).epsilon(1e-14));
    const Mat2 fd = fast_brk_fd_jacobian(sd.point, s.sq.wL, s.sq.s, s.p, 1e-6);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(std::abs(fd[r][c] - sd.jacobian[r][c]) < 1e-6);
  }

  TEST_CASE("saddle at P_R") {
    const SampleCase s;
    const SaddleData sd = saddle_at_P(Side::right, s.sq, s.p);
    CHECK(sd.point[0] == 1.0);
    // B1'(rho2) = -1 along beta, -B2(rho2) = +0.5 transverse
    CHECK(std::abs(sd.lambda_s + 1.0) < 1e-12);
    CHECK(std::abs(sd.lambda_u - 0.5) < 1e-12);
    check_eigenpair(sd);
    const Mat2 fd = fast_brk_fd_jacobian(sd.point, s.sq.wR, s.sq.s, s.p, 1e-6);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(std::abs(fd[r][c] - sd.jacobian[r][c]) < 1e-6);
  }

  TEST_CASE("slow quantities solve both defining relations") {
    const SampleCase s;
    const SlowQuantities q = slow_quantities(s.sq, s.p);
    CHECK(std::abs(q.tau10 + q.tau20 - s.sq.e0) < 1e-14);
    CHECK(std::abs(b2(2.0, s.p) * q.tau10 + b2(1.0, s.p) * q.tau20) < 1e-14);
    CHECK(std::abs(s.sq.wL[1] - q.tau10 - (s.sq.wR[1] + q.tau20)) < 1e-14);
    CHECK(q.tau10 == Approx(test::kTau10).epsilon(1e-14));
    CHECK(q.tau20 == Approx(test::kTau20).epsilon(1e-14));
    CHECK(q.kappa0 == Approx(test::kKappa0).epsilon(1e-14));
    CHECK(q.tau10 / q.tau20 == Approx(2.0).epsilon(1e-14));
    CHECK(q.w20 == Approx(0.0013850415512465374).epsilon(1e-12));
    // the printed closed forms disagree and are reported
    CHECK(q.warnings.size() == 4);
    CHECK(printed_growth_rate(s.sq, s.p) == Approx(2.0 * test::kKappa0).epsilon(1e-14));
  }

  TEST_CASE("slow quantities scale linearly with e0") {
    const SampleCase s;
    ShockQuantities twice = s.sq;
    twice.wL[1] += s.sq.e0;
    twice.e0 *= 2.0;
    const SlowQuantities a = slow_quantities(s.sq, s.p), b = slow_quantities(twice, s.p);
    CHECK(b.tau10 == Approx(2.0 * a.tau10).epsilon(1e-14));
    CHECK(b.tau20 == Approx(2.0 * a.tau20).epsilon(1e-14));
    CHECK(b.kappa0 == Approx(2.0 * a.kappa0).epsilon(1e-14));
    ShockQuantities none = s.sq;
    none.e0 = 0.0;
    CHECK_THROWS_AS(slow_quantities(none, s.p), NumericalFailure);
  }

  TEST_CASE("heteroclinic legs land") {
    const SampleCase s;
    const GammaLeg g1 = compute_gamma1(s.rd, s.sq, s.p);
    const GammaLeg g2 = compute_gamma2(s.rd, s.sq, s.p);
    REQUIRE(g1.landed());
    REQUIRE(g2.landed());
    CHECK(g1.endpoint_residual < 1e-6);
    CHECK(g2.endpoint_residual < 1e-6);
    // forward order: gamma1 from uL to P_L, gamma2 from P_R to uR
    CHECK(std::hypot(g1.path.front()[0] - 1.9, g1.path.front()[1] - 1.0) < 1e-6);
    CHECK(std::hypot(g1.path.back()[0] - 2.0, g1.path.back()[1]) < 1e-6);
    CHECK(std::hypot(g2.path.front()[0] - 1.0, g2.path.front()[1]) < 1e-6);
    CHECK(std::hypot(g2.path.back()[0] - 1.1, g2.path.back()[1] - 1.9 / 1.1) < 1e-6);
    for (const Vec2& y : g1.path) {
      CHECK(y[0] >= 1.0 - 1e-12);
      CHECK(y[0] <= 2.0 + 1e-12);
      CHECK(y[1] >= -1e-12);
    }
  }

  TEST_CASE("landing is insensitive to the seed offset") {
    const SampleCase s;
    ConfigOptions half;
    half.delta = 0.5e-7;
    const GammaLeg a = compute_gamma1(s.rd, s.sq, s.p);
    const GammaLeg b = compute_gamma1(s.rd, s.sq, s.p, half);
    REQUIRE(b.landed());
    CHECK(std::hypot(a.path.front()[0] - b.path.front()[0], a.path.front()[1] - b.path.front()[1]) < 1e-5);
  }

  TEST_CASE("H3 diagnostics on the sample and under perturbation") {
    const SampleCase s;
    const H3Report h = check_h3(s.rd, s.sq, s.p);
    CHECK(h.verified);
    CHECK(h.diagnostics.theta1_increasing);
    CHECK(h.diagnostics.theta2_decreasing);
    CHECK(h.diagnostics.theta2_positive_at_rho1);
    CHECK(h.diagnostics.divergence_positive);
    CHECK(h.diagnostics.boundary_signs);
    CHECK(bendixson_divergence(1.5, 1.0, 0.0, s.p) == Approx(2.0 / 9.0).epsilon(1e-14));

    for (double f : {0.99, 1.01}) {
      RiemannData rd = s.rd;
      rd.left.v *= f;
      rd.right.v *= 2.0 - f;
      CHECK(check_h3(rd, shock_quantities(rd, s.p), s.p).verified);
    }
  }

  TEST_CASE("H3 fails when w2L is not positive") {
    const ModelParams p = test::sample_params();
    // beta_L below sqrt(rho1 rho2) gives B2(beta_L) < 0; with s near 0 this makes w2L < 0.
    const RiemannData rd{{1.3, 1.0}, {1.1, 2.0}};
    const ShockQuantities sq = shock_quantities(rd, p);
    REQUIRE(sq.wL[1] < 0.0);
    const H3Report h = check_h3(rd, sq, p);
    CHECK_FALSE(h.verified);
    CHECK_FALSE(h.diagnostics.theta2_positive_at_rho1);
  }

  TEST_CASE("singular configuration") {
    const SampleCase s;
    const SingularConfiguration sc = build_configuration(s.rd, s.sq, s.p);
    CHECK(std::abs(sc.max_kappa() - test::kKappa0) < 1e-12);
    CHECK(sc.junction_error < kJunctionTol);
    // gamma0 runs monotonically from rho1 to rho2
    for (std::size_t i = 1; i < sc.gamma0.size(); ++i) CHECK(sc.gamma0[i].beta <= sc.gamma0[i - 1].beta);
    CHECK(sc.gamma0.front().beta == 2.0);
    CHECK(sc.gamma0.back().beta == 1.0);
    // w2 descends with slope -1 in slow time along sigma1 and sigma2
    const double A = b2(2.0, s.p), B = b2(1.0, s.p);
    for (const ChartPoint& c : sc.sigma1) CHECK(c.kappa == Approx(A * (s.sq.wL[1] - c.w2)).epsilon(1e-12));
    for (const ChartPoint& c : sc.sigma2) CHECK(c.kappa == Approx(-B * (c.w2 - s.sq.wR[1])).epsilon(1e-12));
    CHECK(sc.sigma1.back().w2 == sc.gamma0.front().w2);
    CHECK(sc.sigma2.front().w2 == Approx(sc.gamma0.back().w2).epsilon(1e-14));
  }
}
