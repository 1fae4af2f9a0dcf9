#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "dshock/errors.hpp"
#include "dshock/fv_solver.hpp"
#include "dshock/riemann.hpp"
#include "dshock/singular_config.hpp"
#include "dshock/viscous_profile.hpp"
#include "dshock/weak_limit.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dshock;
using namespace dshock::cli;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

// Fixed-column numeric table written as CSV or as a JSON array of rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
    rows.push_back(std::move(row));
  }
};

fs::path output_path(const RunConfig& c, const std::string& stem, const std::string& ext) {
  fs::create_directories(c.out_dir);
  return c.out_dir / (stem + ext);
}

void write_json(const RunConfig& c, const std::string& stem, const json& j) {
  const fs::path path = output_path(c, stem, ".json");
  std::ofstream(path) << j.dump(2) << '\n';
  // Round-trip check of the emitted document.
  std::ifstream in(path);
  if (json::parse(in) != j) throw NumericalFailure("report " + path.string() + " failed the round-trip check");
  std::cout << "wrote " << path.string() << '\n';
}

void write_table(const RunConfig& c, const std::string& stem, const Table& t) {
  if (c.format == Format::json) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.size(); ++i)
        o[t.columns[i]] = std::isfinite(r[i]) ? json(r[i]) : json(nullptr);
      rows.push_back(std::move(o));
    }
    write_json(c, stem, rows);
    return;
  }
  const fs::path path = output_path(c, stem, ".csv");
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw UsageError("cannot write " + path.string());
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", t.columns[i].c_str());
  std::fputc('\n', f);
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::fprintf(f, "%s%.17g", i ? "," : "", r[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
  std::cout << "wrote " << path.string() << '\n';
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json vec(const Vec2& v) { return json::array({num(v[0]), num(v[1])}); }

json shock_json(const ShockQuantities& sq) {
  return {{"s", sq.s}, {"wL", vec(sq.wL)}, {"wR", vec(sq.wR)}, {"e0", sq.e0}};
}

int run_classify(const RunConfig& c) {
  const ModelParams p = c.model();
  const Classification cl = classify(c.riemann, p, c.classify.s_max);
  const ShockQuantities& sq = cl.shock;
  std::printf("s = %.17g\nwL = (%.17g, %.17g)\nwR = (%.17g, %.17g)\ne0 = %.17g\n", sq.s, sq.wL[0], sq.wL[1],
              sq.wR[0], sq.wR[1], sq.e0);
  std::printf("H1 = %s\nH2 = %s\nH3 (sufficient) = %s\nboundary signs = %s\nin over-compressive region = %s\n",
              cl.h1 ? "true" : "false", cl.h2 ? "true" : "false", cl.h3_sufficient ? "true" : "false",
              cl.boundary_signs ? "true" : "false", cl.in_region ? "true" : "false");

  const OcBoundaryCurves oc = oc_boundary_curves(c.riemann.left, p, c.classify.region_samples);
  Table t{{"beta", "v_left_speed", "v_right_speed", "left_valid", "right_valid"}, {}};
  for (std::size_t i = 0; i < oc.left_speed.size(); ++i) {
    const CurveSample& a = oc.left_speed[i];
    const CurveSample& b = oc.right_speed[i];
    t.add({a.beta, a.v, b.v, a.valid ? 1.0 : 0.0, b.valid ? 1.0 : 0.0});
  }
  write_table(c, "oc_curves", t);
  write_json(c, "classify",
             {{"shock", shock_json(sq)},
              {"h1", cl.h1},
              {"h2", cl.h2},
              {"h3_sufficient", cl.h3_sufficient},
              {"boundary_signs", cl.boundary_signs},
              {"in_region", cl.in_region},
              {"distance_to_region_boundary", num(distance_to_oc_boundary(c.riemann, p))},
              {"s_max", c.classify.s_max}});
  return 0;
}

json leg_json(const GammaLeg& g) {
  return {{"status", to_string(g.status)}, {"endpoint_residual", g.endpoint_residual}, {"points", g.path.size()}};
}

int run_configure(const RunConfig& c) {
  const ModelParams p = c.model();
  const ShockQuantities sq = shock_quantities(c.riemann, p);
  const SingularConfiguration sc =
      build_configuration(c.riemann, sq, p, c.configure.options, c.configure.slow_samples);
  for (const std::string& w : sc.slow.warnings) std::cerr << "warning: " << w << '\n';

  Table t{{"segment", "beta", "r", "w1", "w2", "xi", "kappa"}, {}};
  const ChartPath* segs[] = {&sc.gamma1, &sc.sigma1, &sc.gamma0, &sc.sigma2, &sc.gamma2};
  for (int k = 0; k < 5; ++k)
    for (const ChartPoint& q : *segs[k]) t.add({double(k), q.beta, q.r, q.w1, q.w2, q.xi, q.kappa});
  write_table(c, "configuration", t);

  const SlowQuantities& s = sc.slow;
  const H3Diagnostics& d = sc.h3.diagnostics;
  write_json(c, "slow_quantities",
             {{"shock", shock_json(sq)},
              {"tau10", s.tau10},
              {"tau20", s.tau20},
              {"w20", s.w20},
              {"kappa0", s.kappa0},
              {"printed", {{"tau10", s.printed_tau10}, {"tau20", s.printed_tau20}, {"w20", s.printed_w20},
                           {"kappa0", s.printed_kappa0}, {"growth_rate", printed_growth_rate(sq, p)}}},
              {"warnings", s.warnings},
              {"max_kappa", sc.max_kappa()},
              {"junction_error", sc.junction_error},
              {"segments", {"gamma1", "sigma1", "gamma0", "sigma2", "gamma2"}},
              {"h3", {{"verified", sc.h3.verified},
                      {"gamma1", leg_json(sc.h3.gamma1)},
                      {"gamma2", leg_json(sc.h3.gamma2)},
                      {"theta1_increasing", d.theta1_increasing},
                      {"theta2_decreasing", d.theta2_decreasing},
                      {"theta2_positive_at_rho1", d.theta2_positive_at_rho1},
                      {"divergence_positive", d.divergence_positive},
                      {"min_divergence", d.min_divergence},
                      {"boundary_signs", d.boundary_signs}}}});
  std::printf("kappa0 = %.17g\ntau10 = %.17g\ntau20 = %.17g\n", s.kappa0, s.tau10, s.tau20);
  return 0;
}

ShootingParams profile_params(const RunConfig& c, double eps) {
  const ProfileBlock& b = c.profile;
  ShootingParams sp = default_params(c.riemann, c.model(), eps, b.shoot);
  if (b.xi_start) sp.xi_start = *b.xi_start;
  if (b.xi_end) sp.xi_end = *b.xi_end;
  if (b.alpha) sp.alpha = *b.alpha;
  if (b.theta) sp.theta = *b.theta;
  return sp;
}

json params_json(const ShootingParams& sp) {
  return {{"alpha", sp.alpha},       {"theta", sp.theta},   {"delta_seed", sp.delta_seed},
          {"xi_start", sp.xi_start}, {"xi_end", sp.xi_end}, {"v_switch", sp.v_switch}};
}

Table profile_table(const ProfileResult& pr, double s) {
  Table t{{"xi", "beta", "v", "r", "kappa", "w1", "w2", "x2", "zeta", "compact"}, {}};
  for (const ProfileSample& q : pr.samples)
    t.add({q.xi, q.beta, q.v, q.r, q.kappa, q.w1, q.w2, q.w2 + (q.xi - s) * q.v, q.zeta, q.compact ? 1.0 : 0.0});
  return t;
}

int run_profile(const RunConfig& c, double eps) {
  const ModelParams p = c.model();
  const ShockQuantities sq = shock_quantities(c.riemann, p);
  const ShootConfig& cfg = c.profile.shoot;
  const ProfileResult pr = shoot(c.riemann, p, eps, profile_params(c, eps), cfg);
  write_table(c, "profile", profile_table(pr, sq.s));
  const IntegratorConfig& ic = cfg.shot.integrator;
  write_json(c, "profile",
             {{"eps", eps},
              {"params", params_json(pr.params)},
              {"rel_tol", ic.rel_tol},
              {"abs_tol", ic.abs_tol},
              {"residual", pr.residual},
              {"residual_vec", pr.residual_vec},
              {"max_eps_log_v", pr.max_eps_log_v},
              {"evaluations", pr.evaluations},
              {"samples", pr.samples.size()}});
  std::printf("eps = %.17g\nresidual = %.3e\nmax eps log v = %.17g\n", eps, pr.residual, pr.max_eps_log_v);
  return 0;
}

int run_sweep(const RunConfig& c, const std::vector<double>& eps_list) {
  const ModelParams p = c.model();
  const SweepReport r = sweep(c.riemann, p, eps_list, c.profile.shoot);
  Table t{{"eps", "success", "alpha", "theta", "residual", "max_eps_log_v", "evaluations"}, {}};
  json failures = json::array();
  for (const SweepEntry& e : r.entries) {
    const ProfileResult& pr = e.profile;
    t.add({e.eps, e.success ? 1.0 : 0.0, pr.params.alpha, pr.params.theta, pr.residual, pr.max_eps_log_v,
           double(pr.evaluations)});
    if (!e.success) failures.push_back({{"eps", e.eps}, {"reason", e.failure}});
  }
  write_table(c, "sweep", t);
  write_json(c, "sweep",
             {{"eps_list", eps_list},
              {"slope", num(r.slope)},
              {"extrapolated", num(r.extrapolated)},
              {"kappa0", r.kappa0},
              {"printed", r.printed},
              {"rel_gap_kappa0", num(r.rel_gap_kappa0)},
              {"rel_gap_printed", num(r.rel_gap_printed)},
              {"closer", r.closer},
              {"failures", failures}});
  std::printf("extrapolated = %.17g\nkappa0 = %.17g (gap %.3f)\nprinted = %.17g (gap %.3f)\nwithin 10%%: %s\n",
              r.extrapolated, r.kappa0, r.rel_gap_kappa0, r.printed, r.rel_gap_printed, r.closer.c_str());
  for (const auto& f : failures) std::cerr << "sweep member failed: " << f.dump() << '\n';
  return failures.empty() ? 0 : kExitNumerical;
}

int run_lf_cmd(const RunConfig& c) {
  const ModelParams p = c.model();
  const ShockQuantities sq = shock_quantities(c.riemann, p);
  const LfBlock& l = c.lf;
  const FvRun run = run_lf(c.riemann, p, l.grid, l.cfl, l.n_steps, l.record_every);

  Table h{{"step", "t", "max_v", "min_beta", "max_beta", "total_beta", "total_v"}, {}};
  for (const FvRecord& r : run.history)
    h.add({double(r.step), r.t, r.max_v, r.min_beta, r.max_beta, r.total_beta, r.total_v});
  write_table(c, "lf_history", h);
  const FvState& s = run.final_state;
  Table f{{"x", "beta", "v"}, {}};
  for (std::size_t i = 0; i < s.beta.size(); ++i) f.add({s.grid.center(i), s.beta[i], s.v[i]});
  write_table(c, "lf_final", f);
  write_json(c, "lf",
             {{"n_cells", l.grid.n_cells},
              {"dx", l.grid.dx()},
              {"cfl", l.cfl},
              {"steps", s.steps},
              {"t", s.t},
              {"blown_up", run.blown_up},
              {"blow_up_step", run.blow_up_step},
              {"conservation_error_beta", run.conservation_error_beta},
              {"conservation_error_v", run.conservation_error_v},
              {"delta_estimate", delta_estimate(s, c.riemann, sq)},
              {"e0", sq.e0},
              {"spike_centroid", spike_centroid(s, c.riemann, sq)},
              {"shock_position", sq.s * s.t}});
  if (run.blown_up) {
    std::cerr << "lf: non-finite state at step " << run.blow_up_step << "; history kept\n";
    return kExitNumerical;
  }
  return 0;
}

int run_pair(const RunConfig& c, const fs::path& stored) {
  std::ifstream in(stored);
  if (!in) throw ConfigError("cannot read stored profile " + stored.string());
  json j;
  ShootingParams sp;
  ShootConfig cfg = c.profile.shoot;
  double eps = 0.0;
  try {
    j = json::parse(in);
    eps = j.at("eps").get<double>();
    const json& q = j.at("params");
    sp = {q.at("alpha").get<double>(),    q.at("theta").get<double>(),  q.at("delta_seed").get<double>(),
          q.at("xi_start").get<double>(), q.at("xi_end").get<double>(), q.at("v_switch").get<double>()};
    cfg.shot.integrator.rel_tol = j.at("rel_tol").get<double>();
    cfg.shot.integrator.abs_tol = j.at("abs_tol").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError("stored profile " + stored.string() + ": " + e.what());
  }
  const ModelParams p = c.model();
  const ShockQuantities sq = shock_quantities(c.riemann, p);
  const ProfileResult pr = evaluate_profile(sp, c.riemann, p, eps, cfg);

  json out{{"eps", eps}, {"e0", sq.e0}, {"s", sq.s}, {"residual", pr.residual}};
  if (pr.residual > cfg.profile_tol)
    std::cerr << "warning: stored profile re-evaluates with residual " << pr.residual << '\n';
  try {
    const WeakLimitReport w = analyze(pr, c.riemann, p, c.pair.r0, cfg);
    out["weak_limit"] = {{"r0", w.r0},
                         {"xi_in", w.xi_in},
                         {"xi_out", w.xi_out},
                         {"delta_strength", w.delta_strength},
                         {"delta_identity", w.delta_identity},
                         {"identity_rel_gap", w.identity_rel_gap},
                         {"delta_rel_error", (w.delta_strength - sq.e0) / sq.e0},
                         {"beta_inner", w.beta_inner},
                         {"outer_l1_left", w.outer_l1_left},
                         {"outer_l1_right", w.outer_l1_right},
                         {"tail_left", num(w.tail_left)},
                         {"tail_right", num(w.tail_right)}};
  } catch (const NumericalFailure& e) {
    std::cerr << "weak limit unavailable: " << e.what() << '\n';
    out["weak_limit"] = nullptr;
    out["weak_limit_error"] = e.what();
  }
  const Pairing pg = pair_similarity(pr, c.riemann, p, bump(sq.s, c.pair.bump_half_width));
  out["pairing"] = {{"bump_center", sq.s},
                    {"bump_half_width", c.pair.bump_half_width},
                    {"profile", vec(pg.profile)},
                    {"limit", vec(pg.limit)},
                    {"error", vec(pg.error)}};
  write_json(c, "pair", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dshock: viscous profiles and singular shocks of a two-phase conservation law"};
  app.require_subcommand(1);
  std::string config_path = DSHOCK_SAMPLE_CONFIG;
  std::string out_dir;
  std::string format;
  app.add_option("-c,--config", config_path, "JSON run configuration")->capture_default_str();
  app.add_option("-o,--out", out_dir, "output directory (overrides OUT_DIR and the config)");
  app.add_option("-f,--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));

  auto* classify_cmd = app.add_subcommand("classify", "shock quantities and hypothesis verdicts");
  auto* configure_cmd = app.add_subcommand("configure", "singular configuration and slow quantities");
  auto* profile_cmd = app.add_subcommand("profile", "shoot one viscous profile");
  double eps = 0.0;
  auto* eps_opt = profile_cmd->add_option("--eps", eps, "viscosity epsilon (default from config)");
  auto* sweep_cmd = app.add_subcommand("sweep", "profiles over a decreasing eps list and extrapolation");
  std::vector<double> eps_list;
  sweep_cmd->add_option("--eps-list", eps_list, "strictly decreasing eps values");
  auto* lf_cmd = app.add_subcommand("lf", "Lax-Friedrichs finite-volume run");
  auto* pair_cmd = app.add_subcommand("pair", "weak-limit report for a stored profile");
  std::string stored;
  pair_cmd->add_option("--profile", stored, "profile.json written by the profile subcommand")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    RunConfig c = load_config(config_path);
    if (const char* env = std::getenv("OUT_DIR"); env && *env) c.out_dir = env;
    if (!out_dir.empty()) c.out_dir = out_dir;
    if (!format.empty()) c.format = format == "json" ? Format::json : Format::csv;

    if (*classify_cmd) return run_classify(c);
    if (*configure_cmd) return run_configure(c);
    if (*profile_cmd) {
      if (!*eps_opt) return run_profile(c, c.profile.eps);
      if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("--eps must be positive");
      return run_profile(c, eps);
    }
    if (*sweep_cmd) {
      if (!eps_list.empty()) {
        for (std::size_t i = 0; i < eps_list.size(); ++i)
          if (!(eps_list[i] > 0.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1])) || eps_list.size() < 3)
            throw ConfigError("--eps-list: need >= 3 positive, strictly decreasing values");
        return run_sweep(c, eps_list);
      }
      return run_sweep(c, c.sweep.eps_list);
    }
    if (*lf_cmd) return run_lf_cmd(c);
    if (*pair_cmd) return run_pair(c, stored);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}
