#pragma once

#include <optional>

#include "conicfo/icfg.hpp"
#include "conicfo/problem.hpp"
#include "conicfo/report.hpp"

namespace conicfo {

enum class PenaltyKind { D, N };  // quadratic penalty / smoothed distance penalty

struct PenaltyEval {
  double value = 0.0;
  Vec grad;  // empty when not requested
};

// psi_rho(u) = f(u) + rho/2 dist_K(G u + g)^2.
PenaltyEval quad_penalty_eval(RunContext& ctx, const Vec& u, double rho, bool with_grad = true);

// phi_{rho,mu}(u) = f(u) + rho sqrt(dist_K(G u + g)^2 + mu^2).
PenaltyEval smooth_ndp_eval(RunContext& ctx, const Vec& u, double rho, double mu,
                            bool with_grad = true);

struct PenaltyParams {
  double rho = 1.0;
  std::optional<double> mu_smooth;
  bool precondition_warning = false;  // kind D with eps >= Delta*/2
};

// D: rho = 4 Delta* / eps^2 (1 when Delta* = 0). N: rho = 2 Delta* / eps + 1, mu = eps / 2.
PenaltyParams penalty_params(PenaltyKind kind, double eps, double delta_star);

// Gradient Lipschitz constants of the two penalty objectives. The smoothed
// penalty's true constant is L_f + rho ||G||^2 / mu; we use
// L_f + rho max(||G||, ||G||^2) / mu so the bound is safe for any ||G||.
double penalty_L_psi(double L_f, double rho, double norm_G);
double penalty_L_phi(double L_f, double rho, double mu, double norm_G);

struct PenaltyConfig {
  PenaltyKind kind = PenaltyKind::D;
  double rho = 1.0;
  double mu_smooth = 0.0;  // kind N only
  InnerPath path = InnerPath::Auto;  // Simple: split scheme with prox of f
  std::optional<long> max_iterations;  // overrides the theorem budget
  std::optional<double> f_star;
  bool record_history = true;
  // Optional early stop, evaluated on each iterate (used by tests that need
  // converged subproblem minimizers).
  std::function<bool(long k, const Vec& u)> stop;
};

// Iterations after which the accelerated scheme reaches subproblem gap eps:
// ceil(sqrt(2 L_f D^2 / eps) + sqrt(2 (L - L_f) D^2 / eps)), L the penalty
// objective's constant. L_f is 0 on the split (simple f) path.
long penalty_budget(const PenaltyConfig& config, double L_f, double norm_G, double D_U, double eps);

SolveReport penalty_run(RunContext& ctx, const PenaltyConfig& config, double eps);

struct ApmOptions {
  int max_doublings = 60;
  InnerPath path = InnerPath::Auto;
  std::optional<double> f_star;
  bool record_history = true;
};

// Adaptive penalty: solve the subproblem to gap eps, stop once eps-feasible,
// otherwise double rho.
SolveReport a_pm_run(RunContext& ctx, double rho0, double eps, PenaltyKind kind,
                     const ApmOptions& options = {});

}  // namespace conicfo
