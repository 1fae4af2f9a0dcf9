#pragma once

// Vector fields of the Dafermos-regularized two-phase system, in the
// (beta, v) chart and in the compactified (beta, r = 1/v) chart. All of them
// use the orientation u' = f(u) - xi u - w.

#include "dshock/model.hpp"
#include "dshock/ode.hpp"

namespace dshock {

// Slow-fast system in fast time: (beta, v, w1, w2, xi).
struct SlowFastBv {
  ModelParams p;
  double eps;

  StateVec<5> operator()(double, const StateVec<5>& y) const {
    const double beta = y[0], v = y[1], w1 = y[2], w2 = y[3], xi = y[4];
    return {v * b1(beta, p) - xi * beta - w1, v * v * b2(beta, p) - xi * v - w2, -eps * beta,
            -eps * v, eps};
  }
};

// Layer problem with (w, xi) frozen: (beta, v).
struct FastBv {
  ModelParams p;
  Vec2 w;
  double xi;

  StateVec<2> operator()(double, const StateVec<2>& y) const {
    const double beta = y[0], v = y[1];
    return {v * b1(beta, p) - xi * beta - w[0], v * v * b2(beta, p) - xi * v - w[1]};
  }
};

// Compactified slow-fast system, time rescaled by r:
// (beta, r, w1, w2, xi, kappa) with kappa = eps log(1/r).
struct SlowFastBrk {
  ModelParams p;
  double eps;

  StateVec<6> operator()(double, const StateVec<6>& y) const {
    const double beta = y[0], r = y[1], w1 = y[2], w2 = y[3], xi = y[4];
    const double B2 = b2(beta, p);
    return {b1(beta, p) - xi * beta * r - w1 * r,
            -r * B2 + xi * r * r + w2 * r * r * r,
            -eps * beta * r,
            -eps,
            eps * r,
            eps * (B2 - xi * r - w2 * r * r)};
  }
};

// Compactified layer problem with (w, xi) frozen: (beta, r).
struct FastBrk {
  ModelParams p;
  Vec2 w;
  double xi;

  StateVec<2> operator()(double, const StateVec<2>& y) const {
    const double beta = y[0], r = y[1];
    return {b1(beta, p) - xi * beta * r - w[0] * r, -r * b2(beta, p) + xi * r * r + w[1] * r * r * r};
  }

  // Analytic Jacobian in (beta, r).
  Mat2 jacobian(const StateVec<2>& y) const {
    const double beta = y[0], r = y[1];
    return Mat2{Vec2{b1_prime(beta, p) - xi * r, -xi * beta - w[0]},
                Vec2{-r * b2_prime(beta, p), -b2(beta, p) + 2.0 * xi * r + 3.0 * w[1] * r * r}};
  }
};

// Profile equations with xi as independent variable: eps u' = f(u) - xi u - w,
// w' = -u. State (beta, v, w1, w2).
struct DafermosXi {
  ModelParams p;
  double eps;

  StateVec<4> operator()(double xi, const StateVec<4>& y) const {
    const double beta = y[0], v = y[1], w1 = y[2], w2 = y[3];
    return {(v * b1(beta, p) - xi * beta - w1) / eps, (v * v * b2(beta, p) - xi * v - w2) / eps,
            -beta, -v};
  }
};

// y'' = -y.
struct HarmonicOscillator {
  StateVec<2> operator()(double, const StateVec<2>& y) const { return {y[1], -y[0]}; }
};

}  // namespace dshock
