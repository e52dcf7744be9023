#pragma once

#include <optional>

#include "conicfo/auglag.hpp"

namespace conicfo {

// L_mu(u, x) = f(u) + <x, G u + g> + mu/2 ||u - u0||^2, with x-gradient G u + g.
LagrangianEval smoothed_lag_eval(RunContext& ctx, const Vec& u, const Vec& x, double mu,
                                 const Vec& u0);

// max(1, ceil(sqrt(L_f / mu) * log(L_f D_U^2 / (4 delta)))).
long ns_inner_budget(double L_f, double mu, double D_U, double delta);

// Minimizer of L_mu(., x) over U. Simple f: one prox of f at u0 - G^T x / mu.
// Smooth f: accelerated method for strongly convex objectives, gap <= delta.
Vec inner_solve_ns(RunContext& ctx, const Vec& x, double mu, double delta, const Vec& u0,
                   InnerPath path = InnerPath::Auto);

struct NsParams {
  double mu = 0.0;
  double delta = 0.0;
  long n_out = 0;  // ceil(6 ||G|| D_U R_d / eps)
};

// mu(K) = 2^{3/2} ||G|| R_d / (D_U K);
// delta = min(eps^2 / (8 ||G|| D_U R_d), eps / (6 N_out)).
NsParams ns_params(long K_outer, double norm_G, double R_d, double D_U, double eps);

struct NsConfig {
  double mu = 1.0;
  double delta = 0.0;  // 0 allowed on the simple-f path
  Vec u0;              // prox center; empty means the set center
  long K_outer = 1;
  InnerPath inner = InnerPath::Auto;
  Vec x0;  // empty means 0
  std::optional<double> f_star;
  bool record_history = true;

  double L_d(double norm_G) const { return norm_G * norm_G / mu; }
};

// Accelerated composite method on the negated smoothed dual with prox equal to
// the projection onto K*, K_outer iterations, theta-weighted primal average.
SolveReport ns_run(RunContext& ctx, const NsConfig& config);

}  // namespace conicfo
