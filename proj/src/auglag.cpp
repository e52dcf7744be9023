#include "conicfo/auglag.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace conicfo {

using detail::require_positive;

LagrangianEval auglag_eval(RunContext& ctx, const Vec& u, const Vec& x, double mu) {
  require_positive(mu, "auglag_eval: mu");
  const auto& p = ctx.problem();
  if (u.size() != p.n() || x.size() != p.m()) throw InputError("auglag_eval: dimension mismatch");
  const Vec r = ctx.residual(u);
  const Vec v = r + x / mu;
  const Vec pv = ctx.project_K(v);
  LagrangianEval e;
  e.value = p.f().value(u) + 0.5 * mu * (v - pv).squaredNorm() - x.squaredNorm() / (2.0 * mu);
  e.grad_x = r - pv;
  return e;
}

long inner_budget(InnerMode mode, double norm_G, double D_U, double mu, double L_f, double delta) {
  require_positive(delta, "inner_budget: delta");
  require_positive(mu, "inner_budget: mu");
  if (!(D_U >= 0.0) || !std::isfinite(D_U)) throw ParameterError("inner_budget: U must be bounded");
  if (!(norm_G >= 0.0) || !(L_f >= 0.0)) throw ParameterError("inner_budget: negative constant");
  const double lf = mode == InnerMode::SimpleF ? 0.0 : L_f;
  return detail::to_budget(D_U * std::sqrt(2.0 * (lf + mu * norm_G * norm_G) / delta), "inner_budget");
}

InnerMode resolve_inner_mode(const ConicProblem& problem, InnerPath path) {
  const bool simple = problem.f().simple_on(problem.U());
  const bool smooth = problem.f().smooth();
  switch (path) {
    case InnerPath::Simple:
      if (!simple) throw CapabilityError("inner solve: objective is not simple on U");
      return InnerMode::SimpleF;
    case InnerPath::Smooth:
      if (!smooth) throw CapabilityError("inner solve: objective is not smooth");
      return InnerMode::SmoothF;
    case InnerPath::Auto:
      if (simple) return InnerMode::SimpleF;
      if (smooth) return InnerMode::SmoothF;
      throw CapabilityError("inner solve: objective is neither simple nor smooth");
  }
  return InnerMode::SimpleF;
}

Vec inner_solve(RunContext& ctx, const Vec& x, double mu, double delta, InnerPath path) {
  require_positive(mu, "inner_solve: mu");
  const auto& p = ctx.problem();
  if (x.size() != p.m()) throw InputError("inner_solve: multiplier has wrong dimension");
  const InnerMode mode = resolve_inner_mode(p, path);
  const double lf = mode == InnerMode::SimpleF ? 0.0 : p.f().lipschitz();
  const long budget = inner_budget(mode, p.norm_G(), p.D_U(), mu, lf, delta);
  const Vec shift = x / mu;

  DeltaLOracle oracle;
  oracle.delta = 0.0;
  oracle.L = lf + mu * p.norm_G() * p.norm_G();
  // phi is constant when G = 0; any step length is exact then.
  if (!(oracle.L > 0.0)) oracle.L = 1.0;
  ProxFn prox;
  if (mode == InnerMode::SimpleF) {
    // phi = mu/2 dist_K(G u + g + x/mu)^2, psi = f + indicator of U.
    oracle.eval = [&](const Vec& u) {
      const Vec v = ctx.residual(u) + shift;
      const Vec d = v - ctx.project_K(v);
      return OracleValue{0.5 * mu * d.squaredNorm(), mu * ctx.Gt_times(d)};
    };
    prox = [&](const Vec& v, double t) { return ctx.prox_f(v, t); };
  } else {
    // phi = L^ag(., x) up to the constant -||x||^2/(2 mu), psi = indicator of U.
    oracle.eval = [&](const Vec& u) {
      const Vec v = ctx.residual(u) + shift;
      const Vec d = v - ctx.project_K(v);
      return OracleValue{p.f().value(u) + 0.5 * mu * d.squaredNorm(),
                         ctx.grad_f(u) + mu * ctx.Gt_times(d)};
    };
    prox = [&](const Vec& v, double) { return ctx.project_U(v); };
  }
  IcfgOptions opt;
  opt.schedule = ThetaSchedule::Accelerated;
  opt.max_iterations = budget;
  return icfg_run(oracle, prox, p.U().center(), opt).last;
}

AugLagDualOracle::AugLagDualOracle(RunContext& ctx, double mu, double delta, InnerPath path)
    : ctx_(ctx), mu_(mu), delta_(delta), path_(path) {
  require_positive(mu, "augmented dual oracle: mu");
  require_positive(delta, "augmented dual oracle: delta");
}

OracleValue AugLagDualOracle::operator()(const Vec& x) {
  last_u_ = inner_solve(ctx_, x, mu_, delta_, path_);
  LagrangianEval e = auglag_eval(ctx_, last_u_, x, mu_);
  return OracleValue{-e.value, -e.grad_x};
}

DeltaLOracle AugLagDualOracle::as_oracle() {
  return DeltaLOracle{[this](const Vec& x) { return (*this)(x); }, delta_out(), L_out()};
}

AugLagParams optimal_params_auglag(AugLagVariant variant, double eps, double R_d, double L_f,
                                   double norm_G) {
  require_positive(eps, "optimal_params_auglag: eps");
  require_positive(R_d, "optimal_params_auglag: R_d");
  if (!(L_f >= 0.0)) throw ParameterError("optimal_params_auglag: L_f must be >= 0");
  const double mu0 = 16.0 * R_d * R_d / eps;
  if (variant == AugLagVariant::Fast) return {mu0, eps / 24.0};
  double mu = mu0;
  if (L_f > 0.0) {
    if (!(norm_G > 0.0)) throw ParameterError("optimal_params_auglag: ||G|| = 0 with L_f > 0");
    mu = std::max(mu0, L_f / (norm_G * norm_G));
  }
  return {mu, eps / 3.0};
}

long auglag_outer_budget(AugLagVariant variant, double mu, double eps, double R_d) {
  require_positive(mu, "auglag_outer_budget: mu");
  require_positive(eps, "auglag_outer_budget: eps");
  require_positive(R_d, "auglag_outer_budget: R_d");
  if (variant == AugLagVariant::Gradient) {
    return detail::to_budget(16.0 * R_d * R_d / (mu * eps), "auglag_outer_budget");
  }
  return detail::to_budget(4.0 * R_d / std::sqrt(mu * eps), "auglag_outer_budget");
}

double auglag_inner_accuracy(AugLagVariant variant, double mu, double eps, double R_d, long outer) {
  require_positive(eps, "auglag_inner_accuracy: eps");
  if (variant == AugLagVariant::Gradient) return eps / 3.0;
  require_positive(mu, "auglag_inner_accuracy: mu");
  require_positive(R_d, "auglag_inner_accuracy: R_d");
  if (outer < 1) throw ParameterError("auglag_inner_accuracy: outer budget must be >= 1");
  const double n = static_cast<double>(outer);
  return std::min(eps / (3.0 * n), eps * eps * n * mu / (384.0 * R_d * R_d));
}

SolveReport ial_run(RunContext& ctx, const AugLagConfig& config) {
  const auto& p = ctx.problem();
  require_positive(config.mu, "ial: mu");
  require_positive(config.delta, "ial: delta");
  if (config.outer_budget < 1) throw ParameterError("ial: outer budget must be >= 1");
  AugLagDualOracle dual(ctx, config.mu, config.delta, config.inner);
  const Vec x0 = detail::zero_if_empty(config.x0, p.m());

  SolveReport rep;
  rep.method = config.schedule == ThetaSchedule::Constant ? "ial" : "fial";
  PrimalAverage avg;
  IcfgOptions opt;
  opt.schedule = config.schedule;
  opt.max_iterations = config.outer_budget;
  opt.observer = [&](const IcfgStep& s) {
    avg.add(dual.last_primal(), s.theta);
    if (config.record_history) {
      rep.history.push_back(
          detail::make_record(p, s.k, avg.value(), config.f_star, config.mu, ctx.counters()));
      rep.history.back().x = s.z;
    }
    return false;
  };
  ProxFn identity = [](const Vec& v, double) { return v; };
  IcfgResult res = icfg_run(dual.as_oracle(), identity, x0, opt);

  rep.u = avg.value();
  rep.x = res.last;
  rep.outer_iterations = res.iterations;
  rep.final_param = config.mu;
  detail::finish_report(rep, p, ctx, config.f_star);
  return rep;
}

SolveReport a_ial_run(RunContext& ctx, double mu0, double eps, const AialOptions& options) {
  const auto& p = ctx.problem();
  require_positive(mu0, "a_ial: mu0");
  require_positive(eps, "a_ial: eps");
  if (options.max_doublings < 0) throw ParameterError("a_ial: doubling cap must be >= 0");
  Vec x = detail::zero_if_empty(options.x0, p.m());
  double mu = mu0;
  SolveReport rep;
  rep.method = "aial";
  for (int k = 0;; ++k) {
    Vec u = inner_solve(ctx, x, mu, eps / 3.0, options.inner);
    LagrangianEval e = auglag_eval(ctx, u, x, mu);
    x += mu * e.grad_x;
    const double infeas = ctx.dist_K(u);
    if (options.record_history) {
      rep.history.push_back(detail::make_record(p, k + 1, u, options.f_star, mu, ctx.counters()));
      rep.history.back().x = x;
    }
    if (infeas <= eps) {
      rep.u = std::move(u);
      rep.x = std::move(x);
      rep.outer_iterations = k + 1;
      rep.doublings = k;
      rep.final_param = mu;
      detail::finish_report(rep, p, ctx, options.f_star);
      return rep;
    }
    if (k == options.max_doublings) {
      throw NonConvergenceError("a_ial: no eps-feasible point after " +
                                std::to_string(options.max_doublings) + " doublings of mu");
    }
    mu *= 2.0;
  }
}

}  // namespace conicfo
