#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "dshock/model.hpp"
#include "dshock/ode.hpp"
#include "dshock/riemann.hpp"

namespace dshock {

// Point of the slow-fast phase space in the (beta, v) chart:
// (beta, v, w1, w2, xi).
using PhasePoint = StateVec<5>;

struct ShootingParams {
  double alpha = -0.3;       // seed on U_L at w = wL - alpha uL, xi = s + alpha
  double theta = 0.0;        // angle in the unstable plane at the seed
  double delta_seed = 1e-4;  // seed radius
  double xi_start = -1.5;    // lower bound for the seed xi in searches
  double xi_end = 0.3;       // end of the integration window
  double v_switch = 10.0;    // chart switch threshold on v
};

// Real basis (e1, e2) of the unstable plane of Df(uL) - xi I.
// Throws NumericalFailure when the plane is not 2-dimensional.
std::array<Vec2, 2> unstable_plane(const State& uL, double xi, const ModelParams& p);

PhasePoint seed_point(const ShootingParams& sp, const RiemannData& rd, const ShockQuantities& sq,
                      const ModelParams& p);

enum class ShotStatus { reached_end, left_strip, blow_up, step_cap };

const char* to_string(ShotStatus s) noexcept;

struct ProfileSample {
  double xi = 0.0;
  double beta = 0.0;
  double v = 0.0;      // 1/r in the compact chart
  double r = 0.0;      // 1/v in the (beta, v) chart
  double kappa = 0.0;  // eps log v (NaN for v <= 0)
  double w1 = 0.0;
  double w2 = 0.0;
  double zeta = 0.0;  // compact-chart time, d zeta = v dt
  bool compact = false;
};

struct ShotOptions {
  IntegratorConfig integrator{1e-11, 1e-13};
  double strip_margin = 0.05;      // beta outside [rho2 - m, rho1 + m] ends the shot
  double max_compact_step = 0.1;   // step bound in the compact chart (quadrature density)
  std::size_t max_switches = 64;
};

struct Shot {
  ShotStatus status = ShotStatus::step_cap;
  ProfileSample end;
  double max_kappa = 0.0;
  std::vector<ProfileSample> samples;  // empty unless recorded
  std::size_t switches = 0;
};

// One forward integration of the slow-fast system from the seed, switching
// to the compact chart above v_switch.
Shot fire(const ShootingParams& sp, const RiemannData& rd, const ShockQuantities& sq,
          const ModelParams& p, double eps, const ShotOptions& opt, bool record);

// (u - uR, w - (wR - (xi_end - s) uR)) at the end of the window.
std::array<double, 4> target_residual(const ProfileSample& end, double xi_end,
                                      const RiemannData& rd, const ShockQuantities& sq);

struct ShootConfig {
  ShotOptions shot{};
  double profile_tol = 1e-6;
  std::size_t max_evaluations = 20000;
  // Half-width of the default window is chosen so that the attraction of U_R
  // over [s, xi_end] amounts to this many e-foldings.
  double window_efolds = 20.0;
  std::size_t theta_scan = 96;  // angle samples when locating escape boundaries
  double min_window = 0.3;
};

struct ProfileResult {
  double eps = 0.0;
  ShootingParams params;
  std::vector<ProfileSample> samples;
  double max_eps_log_v = 0.0;
  double residual = 0.0;
  std::array<double, 4> residual_vec{};
  std::vector<std::array<double, 2>> x2_trace;  // (xi, w2 + (xi - s) v)
  std::size_t evaluations = 0;
  bool success = false;
};

// Default xi_end for a given eps.
double default_window(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                      double eps, const ShootConfig& cfg);

// Window for eps: xi_end from default_window, xi_start = s - 1.5.
ShootingParams default_params(const RiemannData& rd, const ModelParams& p, double eps,
                              const ShootConfig& cfg = {});

// Re-integrates at (alpha, theta) and fills samples, max eps log v, the x2
// trace and the residual.
ProfileResult evaluate_profile(const ShootingParams& sp, const RiemannData& rd,
                               const ModelParams& p, double eps, const ShootConfig& cfg);

// Share of the total variation of the x2 trace accumulated on segments whose
// mean beta lies within band of rho1 or rho2.
double x2_concentration(const ProfileResult& pr, const ModelParams& p, double band = 0.1);

// Two-parameter shooting in (alpha, theta). Throws NoConvergenceError when
// the residual stays above profile_tol.
ProfileResult shoot(const RiemannData& rd, const ModelParams& p, double eps,
                    const ShootingParams& sp_init, const ShootConfig& cfg = {});

struct Crossings {
  double r0 = 0.0;
  double xi_in = 0.0;
  double xi_out = 0.0;
  double zeta_in = 0.0;
  double zeta_out = 0.0;
  double beta_in = 0.0;
  double beta_out = 0.0;
};

// First and last xi where r crosses r0, located by event detection on
// restarted integrations. Throws NumericalFailure if the spike stays below 1/r0.
Crossings crossings(const ProfileResult& pr, const ModelParams& p, double r0,
                    const ShootConfig& cfg = {});

struct SweepEntry {
  double eps = 0.0;
  bool success = false;
  std::string failure;
  ProfileResult profile;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  double slope = 0.0;         // d(max eps log v)/d eps of the fit
  double extrapolated = 0.0;  // fit value at eps = 0
  double kappa0 = 0.0;
  double printed = 0.0;
  double rel_gap_kappa0 = 0.0;
  double rel_gap_printed = 0.0;
  // "kappa0", "printed", "both" or "neither" at 10% relative tolerance.
  std::string closer;
};

// eps_list must be strictly decreasing with at least 3 entries. Each member
// is warm-started from the previous solution.
SweepReport sweep(const RiemannData& rd, const ModelParams& p, const std::vector<double>& eps_list,
                  const ShootConfig& cfg = {});

}  // namespace dshock
