#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dshock/errors.hpp"
#include "json.hpp"

namespace dshock::cli {

namespace {

using nlohmann::json;

// Object view that tracks its JSON path and rejects keys nobody asked for.
class Block {
 public:
  Block(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "expected an object");
    for (const auto& [k, v] : j_.items())
      if (!allowed.count(k)) fail(k, "unknown key");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  Block child(const std::string& k, std::set<std::string> allowed) const {
    return Block(j_.at(k), path_ + "/" + k, std::move(allowed));
  }

  double number(const std::string& k) const {
    const json& v = j_.at(k);
    if (!v.is_number()) fail(k, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(k, "must be finite");
    return x;
  }

  double positive(const std::string& k) const {
    const double x = number(k);
    if (!(x > 0.0)) fail(k, "must be positive");
    return x;
  }

  std::size_t count(const std::string& k, std::size_t min) const {
    const json& v = j_.at(k);
    if (!v.is_number_unsigned() || v.get<std::size_t>() < min)
      fail(k, "expected an integer >= " + std::to_string(min));
    return v.get<std::size_t>();
  }

  std::string string(const std::string& k) const {
    const json& v = j_.at(k);
    if (!v.is_string()) fail(k, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& k) const {
    const json& v = j_.at(k);
    if (!v.is_array()) fail(k, "expected an array of numbers");
    std::vector<double> out;
    for (const json& x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) fail(k, "expected an array of finite numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& k, const std::string& what) const {
    throw ConfigError("config field " + (k.empty() ? path_ : path_ + "/" + k) + ": " + what);
  }

 private:
  const json& j_;
  std::string path_;
};

State read_state(const Block& b) { return {b.number("beta"), b.positive("v")}; }

void read_integrator(const Block& b, IntegratorConfig& ic) {
  if (b.has("rel_tol")) ic.rel_tol = b.positive("rel_tol");
  if (b.has("abs_tol")) ic.abs_tol = b.positive("abs_tol");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the line and column of the offending token.
    throw ConfigError(std::string("config: ") + e.what());
  }

  RunConfig c;
  const Block root(j, "", {"model", "riemann", "output", "classify", "configure", "profile", "sweep", "lf", "pair"});
  for (const char* k : {"model", "riemann"})
    if (!root.has(k)) root.fail(k, "missing required block");

  const Block model = root.child("model", {"rho1", "rho2"});
  c.rho1 = model.number("rho1");
  c.rho2 = model.number("rho2");
  try {
    (void)c.model();
  } catch (const DomainError& e) {
    model.fail("", e.what());
  }

  const Block rb = root.child("riemann", {"left", "right"});
  c.riemann.left = read_state(rb.child("left", {"beta", "v"}));
  c.riemann.right = read_state(rb.child("right", {"beta", "v"}));
  const ModelParams p = c.model();
  for (const char* side : {"left", "right"}) {
    const State& u = side[0] == 'l' ? c.riemann.left : c.riemann.right;
    if (!p.in_strip(u.beta)) rb.child(side, {"beta", "v"}).fail("beta", "must lie in [rho2, rho1]");
  }
  if (c.riemann.left.beta == c.riemann.right.beta)
    rb.fail("", "beta_L == beta_R leaves the shock speed s = [v B1(beta)] / [beta] undefined (degenerate data)");

  if (root.has("output")) {
    const Block b = root.child("output", {"dir", "format"});
    if (b.has("dir")) c.out_dir = b.string("dir");
    if (b.has("format")) {
      const std::string f = b.string("format");
      if (f == "csv")
        c.format = Format::csv;
      else if (f == "json")
        c.format = Format::json;
      else
        b.fail("format", "expected \"csv\" or \"json\"");
    }
  }

  if (root.has("classify")) {
    const Block b = root.child("classify", {"s_max", "region_samples"});
    if (b.has("s_max")) c.classify.s_max = b.positive("s_max");
    if (b.has("region_samples")) c.classify.region_samples = b.count("region_samples", 2);
  }

  if (root.has("configure")) {
    const Block b = root.child("configure",
                               {"delta", "endpoint_tol", "t_max", "slow_samples", "rel_tol", "abs_tol"});
    ConfigOptions& o = c.configure.options;
    if (b.has("delta")) o.delta = b.positive("delta");
    if (b.has("endpoint_tol")) o.endpoint_tol = b.positive("endpoint_tol");
    if (b.has("t_max")) o.t_max = b.positive("t_max");
    if (b.has("slow_samples")) c.configure.slow_samples = b.count("slow_samples", 2);
    read_integrator(b, o.integrator);
  }

  if (root.has("profile")) {
    const Block b = root.child("profile", {"eps", "profile_tol", "max_evaluations", "xi_start", "xi_end",
                                           "alpha", "theta", "rel_tol", "abs_tol"});
    ProfileBlock& pb = c.profile;
    if (b.has("eps")) pb.eps = b.positive("eps");
    if (b.has("profile_tol")) pb.shoot.profile_tol = b.positive("profile_tol");
    if (b.has("max_evaluations")) pb.shoot.max_evaluations = b.count("max_evaluations", 1);
    if (b.has("xi_start")) pb.xi_start = b.number("xi_start");
    if (b.has("xi_end")) pb.xi_end = b.number("xi_end");
    if (b.has("alpha")) pb.alpha = b.number("alpha");
    if (b.has("theta")) pb.theta = b.number("theta");
    read_integrator(b, pb.shoot.shot.integrator);
    if (pb.xi_start && pb.xi_end && !(*pb.xi_start < *pb.xi_end)) b.fail("xi_end", "must exceed xi_start");
  }

  if (root.has("sweep")) {
    const Block b = root.child("sweep", {"eps_list"});
    if (b.has("eps_list")) c.sweep.eps_list = b.numbers("eps_list");
  }
  {
    const auto& e = c.sweep.eps_list;
    const auto bad = [&] {
      if (e.size() < 3) return true;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (!(e[i] > 0.0) || (i > 0 && !(e[i] < e[i - 1]))) return true;
      return false;
    };
    if (bad()) throw ConfigError("config field /sweep/eps_list: need >= 3 positive, strictly decreasing values");
  }

  if (root.has("lf")) {
    const Block b = root.child("lf", {"x_min", "x_max", "n_cells", "cfl", "n_steps", "record_every"});
    LfBlock& l = c.lf;
    if (b.has("x_min")) l.grid.x_min = b.number("x_min");
    if (b.has("x_max")) l.grid.x_max = b.number("x_max");
    if (b.has("n_cells")) l.grid.n_cells = b.count("n_cells", 10);
    if (b.has("cfl")) l.cfl = b.positive("cfl");
    if (b.has("n_steps")) l.n_steps = b.count("n_steps", 1);
    if (b.has("record_every")) l.record_every = b.count("record_every", 1);
    if (!(l.grid.x_max > l.grid.x_min)) b.fail("x_max", "must exceed x_min");
    if (l.cfl > 1.0) b.fail("cfl", "must lie in (0, 1]");
  }

  if (root.has("pair")) {
    const Block b = root.child("pair", {"r0", "bump_half_width"});
    if (b.has("r0")) c.pair.r0 = b.positive("r0");
    if (b.has("bump_half_width")) c.pair.bump_half_width = b.positive("bump_half_width");
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

}  // namespace dshock::cli
