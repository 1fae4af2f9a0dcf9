#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dshock {

struct NelderMeadOptions {
  std::vector<double> initial_step;  // per coordinate; empty means 0.05 (or 0.05 |x|)
  double x_tol = 1e-12;              // simplex diameter, max norm
  double f_tol = 0.0;                // stop once the best value is at or below this
  std::size_t max_evaluations = 2000;
  std::size_t restarts = 2;  // re-expansions around the best point after convergence
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;  // simplex collapsed or f_tol reached
};

// Adaptive-parameter Nelder-Mead (Gao-Han coefficients). Non-finite objective
// values are treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opt = {});

}  // namespace dshock
