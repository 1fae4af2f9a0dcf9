#include "dshock/fv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dshock/errors.hpp"

namespace dshock {

void Grid1D::validate() const {
  if (!(x_max > x_min) || n_cells < 10)
    throw UsageError("Grid1D: need x_max > x_min and at least 10 cells");
}

FvState riemann_initial_state(const RiemannData& rd, const Grid1D& grid) {
  grid.validate();
  FvState s;
  s.grid = grid;
  s.beta.resize(grid.n_cells);
  s.v.resize(grid.n_cells);
  const double dx = grid.dx();
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double a = grid.x_min + i * dx;
    // fraction of the cell left of x = 0
    const double fl = std::clamp(-a / dx, 0.0, 1.0);
    s.beta[i] = fl * rd.left.beta + (1.0 - fl) * rd.right.beta;
    s.v[i] = fl * rd.left.v + (1.0 - fl) * rd.right.v;
  }
  return s;
}

double max_speed(const FvState& s, const ModelParams& p) {
  double c = 0.0;
  for (std::size_t i = 0; i < s.beta.size(); ++i) {
    const EigenPair e = eigenvalues({s.beta[i], s.v[i]}, p);
    c = std::max({c, std::abs(e.lambda_plus.real()) + std::abs(e.lambda_plus.imag()),
                  std::abs(e.lambda_minus.real()) + std::abs(e.lambda_minus.imag())});
  }
  return c;
}

FvState lf_step(const FvState& s, const ModelParams& p, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("lf_step: cfl must lie in (0, 1]");
  const std::size_t n = s.beta.size();
  const double dx = s.grid.dx();
  const double dt = cfl * dx / std::max(max_speed(s, p), 1.0);
  const double lam = dt / dx;

  // u and f on cells -1..n with outflow ghosts.
  std::vector<Vec2> u(n + 2), f(n + 2);
  for (std::size_t i = 0; i < n; ++i) u[i + 1] = {s.beta[i], s.v[i]};
  u[0] = u[1];
  u[n + 1] = u[n];
  for (std::size_t i = 0; i < n + 2; ++i) f[i] = flux({u[i][0], u[i][1]}, p);

  // F_{j+1/2} for j = -1..n-1, stored at index j + 1.
  std::vector<Vec2> F(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    for (int c = 0; c < 2; ++c)
      F[j][c] = 0.5 * (f[j][c] + f[j + 1][c]) - 0.5 / lam * (u[j + 1][c] - u[j][c]);

  FvState out;
  out.grid = s.grid;
  out.beta.resize(n);
  out.v.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.beta[j] = u[j + 1][0] - lam * (F[j + 1][0] - F[j][0]);
    out.v[j] = u[j + 1][1] - lam * (F[j + 1][1] - F[j][1]);
    if (!std::isfinite(out.beta[j]) || !std::isfinite(out.v[j])) {
      std::ostringstream os;
      os << "lf_step: non-finite value in cell " << j << " at step " << s.steps + 1;
      throw NumericalFailure(os.str());
    }
  }
  out.t = s.t + dt;
  out.steps = s.steps + 1;
  out.boundary_budget = {s.boundary_budget[0] + dt * (F[0][0] - F[n][0]),
                         s.boundary_budget[1] + dt * (F[0][1] - F[n][1])};
  return out;
}

namespace {

FvRecord record_of(const FvState& s) {
  FvRecord r;
  r.step = s.steps;
  r.t = s.t;
  const double dx = s.grid.dx();
  r.max_v = *std::max_element(s.v.begin(), s.v.end());
  const auto mm = std::minmax_element(s.beta.begin(), s.beta.end());
  r.min_beta = *mm.first;
  r.max_beta = *mm.second;
  for (std::size_t i = 0; i < s.beta.size(); ++i) {
    r.total_beta += s.beta[i] * dx;
    r.total_v += s.v[i] * dx;
  }
  return r;
}

}  // namespace

FvRun run_lf(const RiemannData& rd, const ModelParams& p, const Grid1D& grid, double cfl,
             std::size_t n_steps, std::size_t record_every) {
  if (record_every == 0) throw UsageError("run_lf: record_every must be positive");
  FvRun run;
  FvState s = riemann_initial_state(rd, grid);
  const FvRecord r0 = record_of(s);
  run.history.push_back(r0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    try {
      s = lf_step(s, p, cfl);
    } catch (const NumericalFailure&) {
      run.blown_up = true;
      run.blow_up_step = s.steps + 1;
      break;
    }
    const FvRecord r = record_of(s);
    run.conservation_error_beta =
        std::max(run.conservation_error_beta,
                 std::abs(r.total_beta - r0.total_beta - s.boundary_budget[0]) / std::abs(r0.total_beta));
    run.conservation_error_v =
        std::max(run.conservation_error_v,
                 std::abs(r.total_v - r0.total_v - s.boundary_budget[1]) / std::abs(r0.total_v));
    if (s.steps % record_every == 0 || k + 1 == n_steps) run.history.push_back(r);
  }
  run.final_state = std::move(s);
  return run;
}

double delta_estimate(const FvState& s, const RiemannData& rd, const ShockQuantities& sq) {
  if (s.t == 0.0) return 0.0;
  const double dx = s.grid.dx();
  const double xs = sq.s * s.t;
  double m = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    const double bg = s.grid.center(i) < xs ? rd.left.v : rd.right.v;
    m += (s.v[i] - bg) * dx;
  }
  return m / s.t;
}

double spike_centroid(const FvState& s, const RiemannData& rd, const ShockQuantities& sq) {
  const double xs = sq.s * s.t;
  double m = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    const double x = s.grid.center(i);
    const double e = std::max(0.0, s.v[i] - (x < xs ? rd.left.v : rd.right.v));
    m += e;
    mx += e * x;
  }
  return m > 0.0 ? mx / m : xs;
}

}  // namespace dshock
