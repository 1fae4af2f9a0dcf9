#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dshock/fv_solver.hpp"
#include "dshock/model.hpp"
#include "dshock/riemann.hpp"
#include "dshock/singular_config.hpp"
#include "dshock/viscous_profile.hpp"

namespace dshock::cli {

// Malformed or invalid configuration; the message names the line or field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct ClassifyBlock {
  double s_max = kDefaultSMax;
  std::size_t region_samples = 64;
};

struct ConfigureBlock {
  ConfigOptions options{};
  std::size_t slow_samples = 64;
};

struct ProfileBlock {
  double eps = 0.01;
  ShootConfig shoot{};
  std::optional<double> xi_start;
  std::optional<double> xi_end;
  std::optional<double> alpha;
  std::optional<double> theta;
};

struct SweepBlock {
  std::vector<double> eps_list{0.1, 0.05, 0.02, 0.01};
};

struct LfBlock {
  Grid1D grid{};
  double cfl = 0.05;
  std::size_t n_steps = 20000;
  std::size_t record_every = 100;
};

struct PairBlock {
  double r0 = 0.1;
  double bump_half_width = 0.15;
};

struct RunConfig {
  double rho1 = 2.0;
  double rho2 = 1.0;
  RiemannData riemann{};
  std::filesystem::path out_dir = "dshock_out";
  Format format = Format::csv;
  ClassifyBlock classify;
  ConfigureBlock configure;
  ProfileBlock profile;
  SweepBlock sweep;
  LfBlock lf;
  PairBlock pair;

  ModelParams model() const { return ModelParams(rho1, rho2); }
};

// Parses and validates a JSON config. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace dshock::cli
