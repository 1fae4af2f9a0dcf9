#include "dshock/weak_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dshock/errors.hpp"

namespace dshock {

namespace {

struct Node {
  double xi;
  double beta;
  double v;
};

template <class G>
double trapezoid(const std::vector<Node>& n, const G& g) {
  double sum = 0.0;
  for (std::size_t i = 1; i < n.size(); ++i)
    sum += 0.5 * (n[i].xi - n[i - 1].xi) * (g(n[i]) + g(n[i - 1]));
  return sum;
}

// Samples strictly inside (a, b) framed by the given end nodes.
std::vector<Node> slice(const std::vector<ProfileSample>& s, double a, double b, Node at_a, Node at_b) {
  std::vector<Node> out{at_a};
  for (const ProfileSample& x : s)
    if (x.xi > a && x.xi < b) out.push_back({x.xi, x.beta, x.v});
  out.push_back(at_b);
  return out;
}

}  // namespace

WeakLimitReport analyze(const ProfileResult& pr, const RiemannData& rd, const ModelParams& p,
                        double r0, const ShootConfig& cfg) {
  if (!pr.success || pr.samples.size() < 2)
    throw NumericalFailure("analyze: profile is not a converged shooting result");
  const Crossings c = crossings(pr, p, r0, cfg);
  const auto& s = pr.samples;

  WeakLimitReport rep;
  rep.r0 = r0;
  rep.xi_in = c.xi_in;
  rep.xi_out = c.xi_out;
  const auto inner = slice(s, c.xi_in, c.xi_out, {c.xi_in, c.beta_in, 1.0 / r0},
                           {c.xi_out, c.beta_out, 1.0 / r0});
  rep.delta_strength = trapezoid(inner, [](const Node& n) { return n.v; });
  rep.beta_inner = trapezoid(inner, [](const Node& n) { return n.beta; });
  rep.delta_identity = pr.eps * (c.zeta_out - c.zeta_in);
  rep.identity_rel_gap = std::abs(rep.delta_strength - rep.delta_identity) / rep.delta_identity;

  const double xi_first = s.front().xi, xi_last = s.back().xi;
  const auto left = slice(s, xi_first, c.xi_in, {xi_first, s.front().beta, s.front().v},
                          {c.xi_in, c.beta_in, 1.0 / r0});
  const auto right = slice(s, c.xi_out, xi_last, {c.xi_out, c.beta_out, 1.0 / r0},
                           {xi_last, s.back().beta, s.back().v});
  const auto dist_l = [&rd](const Node& n) { return std::hypot(n.beta - rd.left.beta, n.v - rd.left.v); };
  const auto dist_r = [&rd](const Node& n) {
    return std::hypot(n.beta - rd.right.beta, n.v - rd.right.v);
  };
  rep.outer_l1_left = trapezoid(left, dist_l);
  rep.outer_l1_right = trapezoid(right, dist_r);

  // Beyond the window the distance to U_L / U_R decays at the linearized
  // fast rate |Re lambda - xi| / eps.
  const double mu_l = (eigenvalues(rd.left, p).real_part - xi_first) / pr.eps;
  const double mu_r = (xi_last - eigenvalues(rd.right, p).real_part) / pr.eps;
  rep.tail_left = mu_l > 0.0 ? dist_l(left.front()) / mu_l : std::numeric_limits<double>::infinity();
  rep.tail_right = mu_r > 0.0 ? dist_r(right.back()) / mu_r : std::numeric_limits<double>::infinity();
  return rep;
}

TestFunction bump(double center, double half_width, double height) {
  if (!(half_width > 0.0)) throw UsageError("bump: half_width must be positive");
  return {[=](double xi) {
            const double z = (xi - center) / half_width;
            return std::abs(z) < 1.0 ? height * std::exp(-1.0 / (1.0 - z * z)) : 0.0;
          },
          center - half_width, center + half_width};
}

Pairing pair_similarity(const ProfileResult& pr, const RiemannData& rd, const ModelParams& p,
                        const TestFunction& tf) {
  if (pr.samples.size() < 2) throw NumericalFailure("pair_similarity: empty profile");
  const auto& s = pr.samples;
  if (tf.support_lo < s.front().xi || tf.support_hi > s.back().xi) {
    std::ostringstream os;
    os << "pair_similarity: support [" << tf.support_lo << ", " << tf.support_hi
       << "] leaves the window [" << s.front().xi << ", " << s.back().xi << "]";
    throw NumericalFailure(os.str());
  }
  const ShockQuantities sq = shock_quantities(rd, p);
  Pairing out;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double h = s[i].xi - s[i - 1].xi;
    const double a = tf.psi(s[i - 1].xi), b = tf.psi(s[i].xi);
    out.profile[0] += 0.5 * h * (a * s[i - 1].beta + b * s[i].beta);
    out.profile[1] += 0.5 * h * (a * s[i - 1].v + b * s[i].v);
  }
  // Composite Simpson for the psi integrals on either side of s.
  const auto simpson = [&tf](double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    constexpr int n = 4000;
    const double h = (hi - lo) / n;
    double sum = tf.psi(lo) + tf.psi(hi);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * tf.psi(lo + i * h);
    return sum * h / 3.0;
  };
  const double il = simpson(tf.support_lo, std::min(sq.s, tf.support_hi));
  const double ir = simpson(std::max(sq.s, tf.support_lo), tf.support_hi);
  const double ps = tf.psi(sq.s);
  out.limit = {rd.left.beta * il + rd.right.beta * ir, rd.left.v * il + rd.right.v * ir + sq.e0 * ps};
  out.error = {out.profile[0] - out.limit[0], out.profile[1] - out.limit[1]};
  return out;
}

double spacetime_delta_coefficient(const ShockQuantities& sq) {
  return sq.e0 / std::sqrt(1.0 + sq.s * sq.s);
}

}  // namespace dshock
