#include "dshock/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dshock/errors.hpp"

namespace dshock {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0) throw UsageError("nelder_mead: empty starting point");
  if (!opt.initial_step.empty() && opt.initial_step.size() != n)
    throw UsageError("nelder_mead: initial_step size mismatch");

  const double dn = static_cast<double>(n);
  const double rho = 1.0, chi = 1.0 + 2.0 / dn, psi = 0.75 - 0.5 / dn, sigma = 1.0 - 1.0 / dn;

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  auto budget_left = [&] { return res.evaluations < opt.max_evaluations; };

  Vertex best{x0, eval(x0)};
  for (std::size_t round = 0; round <= opt.restarts && budget_left(); ++round) {
    std::vector<Vertex> s{best};
    for (std::size_t i = 0; i < n; ++i) {
      Vertex v{best.x, 0.0};
      double step = opt.initial_step.empty() ? (v.x[i] != 0.0 ? 0.05 * std::abs(v.x[i]) : 0.05)
                                             : opt.initial_step[i];
      if (round > 0) step *= std::pow(0.1, static_cast<double>(round));
      v.x[i] += step;
      v.f = eval(v.x);
      s.push_back(std::move(v));
    }

    bool collapsed = false;
    while (budget_left()) {
      std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (s.front().f <= opt.f_tol) break;
      double diam = 0.0;
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i) diam = std::max(diam, std::abs(s[k].x[i] - s[0].x[i]));
      if (diam <= opt.x_tol) {
        collapsed = true;
        break;
      }

      std::vector<double> c(n, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) c[i] += s[k].x[i] / dn;
      auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = c[i] + t * (s[n].x[i] - c[i]);
        return x;
      };

      Vertex r{along(-rho), 0.0};
      r.f = eval(r.x);
      if (r.f < s[0].f) {
        Vertex e{along(-rho * chi), 0.0};
        e.f = eval(e.x);
        s[n] = e.f < r.f ? std::move(e) : std::move(r);
        continue;
      }
      if (r.f < s[n - 1].f) {
        s[n] = std::move(r);
        continue;
      }
      const bool outside = r.f < s[n].f;
      Vertex k{along(outside ? -rho * psi : psi), 0.0};
      k.f = eval(k.x);
      if (k.f < (outside ? r.f : s[n].f)) {
        s[n] = std::move(k);
        continue;
      }
      for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) s[j].x[i] = s[0].x[i] + sigma * (s[j].x[i] - s[0].x[i]);
        s[j].f = eval(s[j].x);
      }
    }
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (s.front().f <= best.f) best = s.front();
    res.converged = collapsed || best.f <= opt.f_tol;
    if (best.f <= opt.f_tol) break;
  }
  res.x = best.x;
  res.f = best.f;
  return res;
}

}  // namespace dshock
