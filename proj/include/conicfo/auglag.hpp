#pragma once

#include <optional>

#include "conicfo/icfg.hpp"
#include "conicfo/problem.hpp"
#include "conicfo/report.hpp"

namespace conicfo {

struct LagrangianEval {
  double value = 0.0;
  Vec grad_x;
};

// L^ag_mu(u, x) = f(u) + mu/2 dist_K(Gu + g + x/mu)^2 - ||x||^2 / (2 mu)
// and its x-gradient Gu + g - P_K(Gu + g + x/mu). One K-projection.
LagrangianEval auglag_eval(RunContext& ctx, const Vec& u, const Vec& x, double mu);

enum class InnerMode { SimpleF, SmoothF };

// ceil(D_U sqrt(2 (L_f + mu ||G||^2) / delta)), with L_f taken as 0 in
// SimpleF mode; never below 1.
long inner_budget(InnerMode mode, double norm_G, double D_U, double mu, double L_f, double delta);

// Resolves InnerPath::Auto against the problem's objective.
InnerMode resolve_inner_mode(const ConicProblem& problem, InnerPath path);

// Approximate minimizer u_mu(x) of L^ag_mu(., x) over U with gap <= delta,
// from a fixed-budget accelerated composite run started at the set center.
Vec inner_solve(RunContext& ctx, const Vec& x, double mu, double delta,
                InnerPath path = InnerPath::Auto);

// (3 delta, 2/mu)-oracle for the negated augmented dual -d^ag_mu.
class AugLagDualOracle {
 public:
  AugLagDualOracle(RunContext& ctx, double mu, double delta, InnerPath path = InnerPath::Auto);

  OracleValue operator()(const Vec& x);
  double delta_out() const { return 3.0 * delta_; }
  double L_out() const { return 2.0 / mu_; }
  const Vec& last_primal() const { return last_u_; }
  DeltaLOracle as_oracle();

 private:
  RunContext& ctx_;
  double mu_, delta_;
  InnerPath path_;
  Vec last_u_;
};

inline AugLagDualOracle dual_oracle_auglag(RunContext& ctx, double mu, double delta,
                                           InnerPath path = InnerPath::Auto) {
  return AugLagDualOracle(ctx, mu, delta, path);
}

enum class AugLagVariant { Gradient, Fast };

struct AugLagParams {
  double mu = 0.0;
  double delta = 0.0;
};

// Gradient: mu = max(16 R^2 / eps, L_f / ||G||^2), delta = eps / 3.
// Fast:     mu = 16 R^2 / eps, delta = eps / 24.
AugLagParams optimal_params_auglag(AugLagVariant variant, double eps, double R_d, double L_f,
                                   double norm_G);

// Outer iterations certifying eps-optimality at a given mu:
// ceil(16 R^2 / (mu eps)) (gradient) or ceil(4 R / sqrt(mu eps)) (fast).
long auglag_outer_budget(AugLagVariant variant, double mu, double eps, double R_d);

// Inner accuracy matching an outer budget N at a given mu: eps / 3 (gradient),
// min(eps / (3N), eps^2 N mu / (384 R^2)) (fast). Both reduce to the optimal
// parameter choice at the optimal mu.
double auglag_inner_accuracy(AugLagVariant variant, double mu, double eps, double R_d, long outer);

struct AugLagConfig {
  double mu = 1.0;
  double delta = 1e-3;
  Vec x0;  // empty means 0
  long outer_budget = 1;
  ThetaSchedule schedule = ThetaSchedule::Constant;
  InnerPath inner = InnerPath::Auto;
  std::optional<double> f_star;  // enables suboptimality in the history
  bool record_history = true;

  double L_d() const { return 1.0 / mu; }
};

// Dual (fast) gradient method on the augmented dual with primal averaging.
SolveReport ial_run(RunContext& ctx, const AugLagConfig& config);

struct AialOptions {
  int max_doublings = 60;
  Vec x0;
  InnerPath inner = InnerPath::Auto;
  std::optional<double> f_star;
  bool record_history = true;
};

// Adaptive scheme: multiplier step with the current mu, stop once the inner
// point is eps-feasible, otherwise double mu.
SolveReport a_ial_run(RunContext& ctx, double mu0, double eps, const AialOptions& options = {});

}  // namespace conicfo
