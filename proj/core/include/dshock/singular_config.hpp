#pragma once

#include <string>
#include <vector>

#include "dshock/model.hpp"
#include "dshock/ode.hpp"
#include "dshock/riemann.hpp"

namespace dshock {

enum class Side { left, right };

// Hyperbolic saddle of the compactified layer problem at P_L = (rho1, 0) or
// P_R = (rho2, 0), with (w, xi) frozen at (wL, s) or (wR, s).
struct SaddleData {
  Vec2 point{};
  double lambda_u = 0.0;
  double lambda_s = 0.0;
  Vec2 y_u{};  // unit eigenvectors
  Vec2 y_s{};
  Mat2 jacobian{};
};

SaddleData saddle_at_P(Side side, const ShockQuantities& sq, const ModelParams& p);

// Central finite-difference Jacobian of the compactified layer field.
Mat2 fast_brk_fd_jacobian(const Vec2& at, const Vec2& w, double xi, const ModelParams& p,
                          double h = 1e-6);

struct ConfigOptions {
  double delta = 1e-7;         // seed offset along the saddle eigenvector
  double endpoint_tol = 1e-6;  // landing ball radius in (beta, r)
  double t_max = 1e4;          // time horizon of each leg
  double strip_tol = 1e-9;     // slack on the strip walls for the exit test
  IntegratorConfig integrator{};
};

enum class LegStatus { landed, left_strip, inconclusive };

const char* to_string(LegStatus s) noexcept;

// One fast heteroclinic leg in (beta, r), stored in forward time.
struct GammaLeg {
  LegStatus status = LegStatus::inconclusive;
  std::vector<double> t;
  std::vector<Vec2> path;
  Vec2 target{};
  double endpoint_residual = 0.0;  // distance from the landing end to target
  double seed_offset = 0.0;

  bool landed() const noexcept { return status == LegStatus::landed; }
};

// gamma1: from (beta_L, 1/v_L) to P_L. Integrated backward from P_L along
// the stable eigenvector.
GammaLeg compute_gamma1(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                        const ConfigOptions& opt = {});
// gamma2: from P_R to (beta_R, 1/v_R) along the unstable eigenvector.
GammaLeg compute_gamma2(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                        const ConfigOptions& opt = {});

// Null-clines of the layer problem at (wL, s) in the (beta, v) chart.
double nullcline_theta1(double beta, const ShockQuantities& sq, const ModelParams& p);
double nullcline_theta2(double beta, const ShockQuantities& sq, const ModelParams& p);

// Divergence of the (beta, v) layer field: 4 v B2(beta) - 2 xi.
double bendixson_divergence(double beta, double v, double xi, const ModelParams& p);

struct H3Diagnostics {
  bool theta1_increasing = false;  // on (sqrt(rho1 rho2), rho1)
  bool theta2_decreasing = false;
  bool theta2_positive_at_rho1 = false;
  bool divergence_positive = false;  // sampled over beta in [beta_L, rho1], v >= v_L
  double min_divergence = 0.0;
  bool boundary_signs = false;
};

struct H3Report {
  bool verified = false;  // both legs landed
  GammaLeg gamma1;
  GammaLeg gamma2;
  H3Diagnostics diagnostics;
};

H3Report check_h3(const RiemannData& rd, const ShockQuantities& sq, const ModelParams& p,
                  const ConfigOptions& opt = {});

struct SlowQuantities {
  double tau10 = 0.0;
  double tau20 = 0.0;
  double w20 = 0.0;
  double kappa0 = 0.0;
  // Closed forms as printed alongside the defining relations, for comparison.
  double printed_tau10 = 0.0;
  double printed_tau20 = 0.0;
  double printed_w20 = 0.0;
  double printed_kappa0 = 0.0;
  std::vector<std::string> warnings;
};

// Solves tau10 + tau20 = e0, B2(rho1) tau10 + B2(rho2) tau20 = 0.
// Throws NumericalFailure if e0 <= 0.
SlowQuantities slow_quantities(const ShockQuantities& sq, const ModelParams& p);

// (rho1 - rho2) e0 / (rho1 + rho2): printed limit of max eps log v.
double printed_growth_rate(const ShockQuantities& sq, const ModelParams& p);

// Point of the singular configuration in (beta, r, w1, w2, xi, kappa).
struct ChartPoint {
  double beta = 0.0;
  double r = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double xi = 0.0;
  double kappa = 0.0;
};

using ChartPath = std::vector<ChartPoint>;

struct SingularConfiguration {
  ChartPath gamma1;
  ChartPath sigma1;
  ChartPath gamma0;
  ChartPath sigma2;
  ChartPath gamma2;
  SlowQuantities slow;
  H3Report h3;
  double junction_error = 0.0;

  double max_kappa() const;
};

inline constexpr double kJunctionTol = 1e-8;

// Throws NumericalFailure if H3 fails or a junction misses by more than
// kJunctionTol.
SingularConfiguration build_configuration(const RiemannData& rd, const ShockQuantities& sq,
                                          const ModelParams& p, const ConfigOptions& opt = {},
                                          std::size_t slow_samples = 64);

struct H3GridPoint {
  State uR;
  bool h1 = false;
  bool h3 = false;
};

// Scans uR over (rho2, beta_L) x (0, v_max] and runs the numerical H3 test at
// every H1 point.
std::vector<H3GridPoint> h3_grid(const State& uL, const ModelParams& p, std::size_t n_beta,
                                 std::size_t n_v, double v_max, const ConfigOptions& opt = {});

}  // namespace dshock
