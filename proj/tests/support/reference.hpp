#pragma once

// Independent oracles for the test suite: a restarted projected fast gradient
// solver certified by the Frank-Wolfe gap, finite differences, and reference
// values of the smoothed dual functions.

#include <functional>

#include "conicfo/problem.hpp"

namespace conicfo::ref {

using ScalarFn = std::function<double(const Vec&)>;
using GradFn = std::function<Vec(const Vec&)>;

struct RefResult {
  Vec u;
  double value = 0.0;
  // Certified upper bound on value - min (Frank-Wolfe gap over U).
  double certificate = 0.0;
  long iterations = 0;
};

// Linear minimization oracle argmin_{v in U} <c, v> for box and ball sets.
Vec lmo(const SimpleSet& U, const Vec& c);

// Minimizes a smooth convex F over a bounded box or ball.
RefResult minimize(const ScalarFn& F, const GradFn& grad, double L, const SimpleSet& U,
                   const Vec& z0, double target_gap = 1e-12, long max_iter = 2'000'000);

Vec fd_gradient(const ScalarFn& F, const Vec& x, double h = 1e-6);

// d^ag_mu(x) = min_U L^ag_mu(u, x), with the minimizer and its certificate.
RefResult auglag_dual(const ConicProblem& p, const Vec& x, double mu, double target_gap = 1e-12);

// d_{U,mu}(x) = min_U f(u) + <x, G u + g> + mu/2 ||u - u0||^2.
RefResult smoothed_dual(const ConicProblem& p, const Vec& x, double mu, const Vec& u0,
                        double target_gap = 1e-12);

// min_U f(u) + rho/2 dist_K(G u + g)^2.
RefResult quad_penalty_min(const ConicProblem& p, double rho, double target_gap = 1e-12);

}  // namespace conicfo::ref

namespace conicfo::ref {

// Multiplier of the equality QP min 1/2|u|^2 + q^T u + mu/2 |u - u0|^2
// s.t. G u + g = 0, box ignored: solves G G^T x = G (mu u0 - q) + (1 + mu) g.
Vec equality_qp_smoothed_multiplier(const ConicProblem& p, double mu, const Vec& u0);

}  // namespace conicfo::ref
