#include <cmath>

#include "doctest.h"
#include "dshock/optimize.hpp"

using namespace dshock;

TEST_SUITE("optimize") {
  TEST_CASE("quadratic bowl") {
    const auto f = [](const std::vector<double>& x) {
      return (x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 2.0) * (x[1] + 2.0);
    };
    const NelderMeadResult r = nelder_mead(f, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-6);
    CHECK(std::abs(r.x[1] + 2.0) < 1e-6);
  }

  TEST_CASE("Rosenbrock") {
    const auto f = [](const std::vector<double>& x) {
      return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions o;
    o.max_evaluations = 5000;
    const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, o);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
    CHECK(std::abs(r.x[1] - 1.0) < 1e-5);
  }

  TEST_CASE("non-finite values are avoided and f_tol stops early") {
    const auto f = [](const std::vector<double>& x) { return x[0] < 0.0 ? NAN : (x[0] - 0.5) * (x[0] - 0.5); };
    NelderMeadOptions o;
    o.initial_step = {0.3};
    const NelderMeadResult r = nelder_mead(f, {0.1}, o);
    CHECK(std::abs(r.x[0] - 0.5) < 1e-6);
    o.f_tol = 1e-2;
    const NelderMeadResult early = nelder_mead(f, {0.1}, o);
    CHECK(early.f <= 1e-2);
    CHECK(early.evaluations < r.evaluations);
  }
}
