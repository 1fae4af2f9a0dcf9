#include <cmath>
#include <utility>

#include "doctest.h"
#include "dshock/errors.hpp"
#include "dshock/riemann.hpp"
#include "sample.hpp"

using namespace dshock;
using doctest::Approx;

namespace {

// uR over (rho2, beta_L) x (0, 2 vL) on a 50 x 50 cell-centred grid.
template <class F>
void for_each_grid_point(F&& f) {
  const RiemannData base = test::sample_data();
  const double rho2 = 1.0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      RiemannData rd = base;
      rd.right = {rho2 + (base.left.beta - rho2) * (i + 0.5) / 50.0, 2.0 * base.left.v * (j + 0.5) / 50.0};
      f(rd);
    }
}

}  // namespace

TEST_SUITE("riemann") {
  TEST_CASE("sample data shock quantities") {
    const ShockQuantities sq = shock_quantities(test::sample_data(), test::sample_params());
    CHECK(sq.s == 0.0);
    CHECK(sq.wL[0] == Approx(test::kW1).epsilon(1e-14));
    CHECK(sq.wR[0] == Approx(test::kW1).epsilon(1e-14));
    CHECK(sq.wL[1] == Approx(test::kW2L).epsilon(1e-14));
    CHECK(sq.wR[1] == Approx(test::kW2R).epsilon(1e-14));
    CHECK(sq.e0 == Approx(test::kE0).epsilon(1e-14));
    // two-decimal values printed for the example
    CHECK(std::abs(sq.wL[0] + 0.05) < 0.005);
    CHECK(std::abs(sq.wL[1] - 0.22) < 0.005);
    CHECK(std::abs(sq.wR[1] + 0.11) < 0.005);
  }

  TEST_CASE("degenerate data") {
    const ModelParams p = test::sample_params();
    const RiemannData rd{{1.5, 1.0}, {1.5, 0.7}};
    CHECK_THROWS_AS(shock_speed(rd, p), DegenerateDataError);
    CHECK_FALSE(check_h1(rd, p));
    CHECK_FALSE(check_h2(rd, p));
    CHECK(classify(rd, p).degenerate);
  }

  TEST_CASE("first jump condition holds exactly and e0 is antisymmetric") {
    const ModelParams p = test::sample_params();
    for_each_grid_point([&](const RiemannData& rd) {
      const ShockQuantities sq = shock_quantities(rd, p);
      CHECK(std::abs(sq.wL[0] - sq.wR[0]) < 1e-13);
      const ShockQuantities sw = shock_quantities({rd.right, rd.left}, p);
      CHECK(sw.e0 == Approx(-sq.e0).epsilon(1e-12));
    });
  }

  TEST_CASE("hypothesis checks on the sample") {
    const ModelParams p = test::sample_params();
    const RiemannData rd = test::sample_data();
    CHECK(check_h1(rd, p));
    CHECK(check_h2(rd, p));
    CHECK_FALSE(check_h2({rd.right, rd.left}, p));
    const ShockQuantities sq = shock_quantities(rd, p);
    CHECK(boundary_sign_check(sq, p));
    CHECK(check_h3_sufficient(rd, sq, p, 0.05));
    CHECK_FALSE(check_h3_sufficient(rd, sq, p, 0.0));
    ShockQuantities bad = sq;
    bad.wL[0] = 1.0;
    CHECK_FALSE(boundary_sign_check(bad, p));
    RiemannData above = rd;
    above.right.beta = 1.5;  // beyond sqrt(2)
    CHECK_FALSE(check_h3_sufficient(above, shock_quantities(above, p), p, 0.05));
  }

  TEST_CASE("region boundary curves") {
    const ModelParams p = test::sample_params();
    const State uL = test::sample_data().left;
    CHECK(curve_s_equals_left_speed(uL, 1.5, p) == Approx(1.3545706371191135).epsilon(1e-14));
    CHECK(curve_s_equals_left_speed(uL, 1.9 - 1e-9, p) == Approx(1.0).epsilon(1e-7));
    CHECK(curve_s_equals_right_speed(uL, 1.9 - 1e-9, p) == Approx(1.0).epsilon(1e-7));
    CHECK(in_overcompressive_region(test::sample_data(), p));

    // On each curve the shock speed equals the named characteristic speed.
    for (double beta = 1.05; beta < 1.9; beta += 0.1) {
      const double vl = curve_s_equals_left_speed(uL, beta, p);
      if (std::isfinite(vl) && vl > 0.0) {
        const RiemannData rd{uL, {beta, vl}};
        CHECK(std::abs(shock_speed(rd, p) - eigenvalues(uL, p).real_part) < 1e-10);
        CHECK_FALSE(in_overcompressive_region(rd, p));
      }
      const double vr = curve_s_equals_right_speed(uL, beta, p);
      if (std::isfinite(vr) && vr > 0.0) {
        const RiemannData rd{uL, {beta, vr}};
        CHECK(std::abs(shock_speed(rd, p) - eigenvalues(rd.right, p).real_part) < 1e-10);
        CHECK_FALSE(in_overcompressive_region(rd, p));
      }
    }
  }

  TEST_CASE("curve membership agrees with H1 on the grid, and H1 implies H2 and the sign check") {
    const ModelParams p = test::sample_params();
    int compared = 0, inside = 0;
    for_each_grid_point([&](const RiemannData& rd) {
      const bool h1 = check_h1(rd, p);
      if (distance_to_oc_boundary(rd, p) > kRegionBoundaryTol) {
        ++compared;
        CHECK(in_overcompressive_region(rd, p) == h1);
      }
      if (h1) {
        ++inside;
        CHECK(check_h2(rd, p));
        CHECK(boundary_sign_check(shock_quantities(rd, p), p));
      }
    });
    CHECK(compared > 2400);
    CHECK(inside > 10);
  }
}
