#include <cmath>

#include "doctest.h"
#include "dshock/errors.hpp"
#include "dshock/model.hpp"
#include "sample.hpp"

using namespace dshock;
using doctest::Approx;

TEST_SUITE("model") {
  TEST_CASE("B1 and B2 at hand-evaluated points") {
    const ModelParams p = test::sample_params();
    CHECK(b1(1.9, p) == Approx(-0.09 / 1.9).epsilon(1e-15));
    CHECK(b2(1.9, p) == Approx(1.61 / 7.22).epsilon(1e-15));
    CHECK(b1(2.0, p) == 0.0);
    CHECK(b1(1.0, p) == 0.0);
    CHECK(b2(std::sqrt(2.0), p) == Approx(0.0).epsilon(1e-15));
    CHECK(b2(2.0, p) == Approx(0.25));
    CHECK(b2(1.0, p) == Approx(-0.5));
  }

  TEST_CASE("B1' equals 2 B2 across the strip") {
    const ModelParams p = test::sample_params();
    for (double beta = 1.0; beta <= 2.0; beta += 0.05) {
      CHECK(b1_prime(beta, p) == Approx(2.0 * b2(beta, p)).epsilon(1e-14));
      const double h = 1e-6;
      CHECK(b1_prime(beta, p) == Approx((b1(beta + h, p) - b1(beta - h, p)) / (2 * h)).epsilon(1e-8));
      CHECK(b2_prime(beta, p) == Approx((b2(beta + h, p) - b2(beta - h, p)) / (2 * h)).epsilon(1e-8));
    }
  }

  TEST_CASE("invalid parameters and poles") {
    CHECK_THROWS_AS(ModelParams(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(b1(0.0, test::sample_params()), DomainError);
  }

  TEST_CASE("flux Jacobian matches finite differences") {
    const ModelParams p = test::sample_params();
    const State u{1.6, 1.3};
    const Mat2 J = jacobian(u, p);
    const double h = 1e-6;
    for (int c = 0; c < 2; ++c) {
      State a = u, b = u;
      (c == 0 ? a.beta : a.v) += h;
      (c == 0 ? b.beta : b.v) -= h;
      const Vec2 fa = flux(a, p), fb = flux(b, p);
      for (int r = 0; r < 2; ++r) CHECK(J[r][c] == Approx((fa[r] - fb[r]) / (2 * h)).epsilon(1e-8));
    }
  }

  TEST_CASE("eigenvalues are the roots of the characteristic polynomial") {
    const ModelParams p = test::sample_params();
    for (const State u : {State{1.9, 1.0}, State{1.1, 0.6}, State{2.0, 1.0}, State{1.5, 0.0}}) {
      const Mat2 J = jacobian(u, p);
      const EigenPair e = eigenvalues(u, p);
      const double tr = J[0][0] + J[1][1], det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      for (const auto l : {e.lambda_plus, e.lambda_minus})
        CHECK(std::abs(l * l - tr * l + det) < 1e-12);
      CHECK(e.real_part == Approx(2.0 * u.v * b2(u.beta, p)));
    }
  }

  TEST_CASE("hyperbolicity only on the strip walls or at v = 0") {
    const ModelParams p = test::sample_params();
    CHECK_FALSE(is_hyperbolic({1.9, 1.0}, p));
    CHECK(is_hyperbolic({2.0, 1.0}, p));
    CHECK(is_hyperbolic({1.0, 1.0}, p));
    CHECK(is_hyperbolic({1.5, 0.0}, p));
  }
}
