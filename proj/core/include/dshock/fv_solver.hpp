#pragma once

#include <cstddef>
#include <vector>

#include "dshock/model.hpp"
#include "dshock/riemann.hpp"

namespace dshock {

struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_cells = 400;

  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n_cells); }
  double center(std::size_t i) const noexcept { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
  void validate() const;  // n_cells >= 10 and x_max > x_min
};

struct FvState {
  Grid1D grid;
  std::vector<double> beta;
  std::vector<double> v;
  double t = 0.0;
  std::size_t steps = 0;
  // Time-integrated boundary fluxes (left inflow minus right outflow) of the
  // conserved components since t = 0.
  Vec2 boundary_budget{};
};

// Cell averages of the Riemann data split at x = 0.
FvState riemann_initial_state(const RiemannData& rd, const Grid1D& grid);

// max over cells of |Re lambda| + |Im lambda|.
double max_speed(const FvState& s, const ModelParams& p);

// One Lax-Friedrichs step in conservation form with outflow ghost cells and
// dt = cfl dx / max(c_max, 1). Throws NumericalFailure on non-finite values.
FvState lf_step(const FvState& s, const ModelParams& p, double cfl);

struct FvRecord {
  std::size_t step = 0;
  double t = 0.0;
  double max_v = 0.0;
  double min_beta = 0.0;
  double max_beta = 0.0;
  double total_beta = 0.0;  // sum of cell averages times dx
  double total_v = 0.0;
};

struct FvRun {
  FvState final_state;
  std::vector<FvRecord> history;
  bool blown_up = false;
  std::size_t blow_up_step = 0;
  // max over steps of |total(t) - total(0) - boundary budget| / |total(0)|
  double conservation_error_beta = 0.0;
  double conservation_error_v = 0.0;
};

// record_every = k keeps every k-th step (and the first and last).
FvRun run_lf(const RiemannData& rd, const ModelParams& p, const Grid1D& grid, double cfl,
             std::size_t n_steps, std::size_t record_every = 100);

// (int (v - background) dx) / t with the background split at x = s t;
// 0 at t = 0. Compares with e0.
double delta_estimate(const FvState& s, const RiemannData& rd, const ShockQuantities& sq);

// Centroid of the positive part of v - background.
double spike_centroid(const FvState& s, const RiemannData& rd, const ShockQuantities& sq);

}  // namespace dshock
