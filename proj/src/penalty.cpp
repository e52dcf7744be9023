#include "conicfo/penalty.hpp"

#include <algorithm>
#include <cmath>

#include "conicfo/auglag.hpp"
#include "detail.hpp"

namespace conicfo {

using detail::require_positive;

namespace {

struct DistTerm {
  double dist = 0.0;
  Vec resid;  // r - P_K(r)
};

DistTerm dist_term(RunContext& ctx, const Vec& u) {
  const Vec r = ctx.residual(u);
  DistTerm t;
  t.resid = r - ctx.project_K(r);
  t.dist = t.resid.norm();
  return t;
}

}  // namespace

PenaltyEval quad_penalty_eval(RunContext& ctx, const Vec& u, double rho, bool with_grad) {
  require_positive(rho, "quad_penalty_eval: rho");
  const auto& p = ctx.problem();
  if (u.size() != p.n()) throw InputError("quad_penalty_eval: dimension mismatch");
  if (with_grad && !p.f().smooth()) throw CapabilityError("quad_penalty_eval: objective has no gradient");
  const DistTerm t = dist_term(ctx, u);
  PenaltyEval e;
  e.value = p.f().value(u) + 0.5 * rho * t.dist * t.dist;
  if (with_grad) e.grad = ctx.grad_f(u) + rho * ctx.Gt_times(t.resid);
  return e;
}

PenaltyEval smooth_ndp_eval(RunContext& ctx, const Vec& u, double rho, double mu, bool with_grad) {
  require_positive(rho, "smooth_ndp_eval: rho");
  require_positive(mu, "smooth_ndp_eval: mu");
  const auto& p = ctx.problem();
  if (u.size() != p.n()) throw InputError("smooth_ndp_eval: dimension mismatch");
  if (with_grad && !p.f().smooth()) throw CapabilityError("smooth_ndp_eval: objective has no gradient");
  const DistTerm t = dist_term(ctx, u);
  const double s = std::hypot(t.dist, mu);
  PenaltyEval e;
  e.value = p.f().value(u) + rho * s;
  if (with_grad) e.grad = ctx.grad_f(u) + (rho / s) * ctx.Gt_times(t.resid);
  return e;
}

PenaltyParams penalty_params(PenaltyKind kind, double eps, double delta_star) {
  require_positive(eps, "penalty_params: eps");
  if (!(delta_star >= 0.0) || !std::isfinite(delta_star))
    throw ParameterError("penalty_params: Delta* must be finite and >= 0");
  PenaltyParams r;
  if (kind == PenaltyKind::D) {
    r.rho = delta_star > 0.0 ? 4.0 * delta_star / (eps * eps) : 1.0;
    r.precondition_warning = eps >= 0.5 * delta_star;
  } else {
    r.rho = 2.0 * delta_star / eps + 1.0;
    r.mu_smooth = 0.5 * eps;
  }
  return r;
}

double penalty_L_psi(double L_f, double rho, double norm_G) { return L_f + rho * norm_G * norm_G; }

double penalty_L_phi(double L_f, double rho, double mu, double norm_G) {
  return L_f + rho * std::max(norm_G, norm_G * norm_G) / mu;
}

long penalty_budget(const PenaltyConfig& config, double L_f, double norm_G, double D_U, double eps) {
  require_positive(eps, "penalty_budget: eps");
  require_positive(config.rho, "penalty_budget: rho");
  if (!std::isfinite(D_U)) throw ParameterError("penalty_budget: U must be bounded");
  double L_pen;
  if (config.kind == PenaltyKind::D) {
    L_pen = penalty_L_psi(0.0, config.rho, norm_G);
  } else {
    require_positive(config.mu_smooth, "penalty_budget: mu");
    L_pen = penalty_L_phi(0.0, config.rho, config.mu_smooth, norm_G);
  }
  const double d2 = D_U * D_U;
  return detail::to_budget(std::sqrt(2.0 * L_f * d2 / eps) + std::sqrt(2.0 * L_pen * d2 / eps),
                           "penalty_budget");
}

SolveReport penalty_run(RunContext& ctx, const PenaltyConfig& config, double eps) {
  const auto& p = ctx.problem();
  require_positive(eps, "penalty: eps");
  require_positive(config.rho, "penalty: rho");
  if (config.kind == PenaltyKind::N) require_positive(config.mu_smooth, "penalty: mu");
  const bool split = resolve_inner_mode(p, config.path) == InnerMode::SimpleF;
  const double lf = split ? 0.0 : p.f().lipschitz();
  const double nG = p.norm_G();
  const double rho = config.rho;
  const double mu = config.mu_smooth;

  DeltaLOracle oracle;
  oracle.delta = 0.0;
  ProxFn prox;
  if (split) {
    // Penalty term only; f enters through its prox over U.
    if (config.kind == PenaltyKind::D) {
      oracle.L = penalty_L_psi(0.0, rho, nG);
      oracle.eval = [&](const Vec& u) {
        const DistTerm t = dist_term(ctx, u);
        return OracleValue{0.5 * rho * t.dist * t.dist, rho * ctx.Gt_times(t.resid)};
      };
    } else {
      oracle.L = penalty_L_phi(0.0, rho, mu, nG);
      oracle.eval = [&](const Vec& u) {
        const DistTerm t = dist_term(ctx, u);
        const double s = std::hypot(t.dist, mu);
        return OracleValue{rho * s, (rho / s) * ctx.Gt_times(t.resid)};
      };
    }
    prox = [&](const Vec& v, double t) { return ctx.prox_f(v, t); };
  } else {
    if (config.kind == PenaltyKind::D) {
      oracle.L = penalty_L_psi(lf, rho, nG);
      oracle.eval = [&](const Vec& u) {
        PenaltyEval e = quad_penalty_eval(ctx, u, rho);
        return OracleValue{e.value, std::move(e.grad)};
      };
    } else {
      oracle.L = penalty_L_phi(lf, rho, mu, nG);
      oracle.eval = [&](const Vec& u) {
        PenaltyEval e = smooth_ndp_eval(ctx, u, rho, mu);
        return OracleValue{e.value, std::move(e.grad)};
      };
    }
    prox = [&](const Vec& v, double) { return ctx.project_U(v); };
  }
  if (!(oracle.L > 0.0)) oracle.L = 1.0;

  SolveReport rep;
  rep.method = config.kind == PenaltyKind::D ? "qp" : "np";
  IcfgOptions opt;
  opt.schedule = ThetaSchedule::Accelerated;
  opt.max_iterations = config.max_iterations ? *config.max_iterations
                                             : penalty_budget(config, lf, nG, p.D_U(), eps);
  if (opt.max_iterations < 1) throw ParameterError("penalty: iteration budget must be >= 1");
  opt.observer = [&](const IcfgStep& s) {
    if (config.record_history) {
      rep.history.push_back(detail::make_record(p, s.k, s.z, config.f_star, rho, ctx.counters()));
    }
    return config.stop ? config.stop(s.k, s.z) : false;
  };
  IcfgResult res = icfg_run(oracle, prox, p.U().center(), opt);

  rep.u = std::move(res.last);
  rep.outer_iterations = res.iterations;
  rep.final_param = rho;
  detail::finish_report(rep, p, ctx, config.f_star);
  return rep;
}

SolveReport a_pm_run(RunContext& ctx, double rho0, double eps, PenaltyKind kind,
                     const ApmOptions& options) {
  const auto& p = ctx.problem();
  require_positive(rho0, "a_pm: rho0");
  require_positive(eps, "a_pm: eps");
  if (options.max_doublings < 0) throw ParameterError("a_pm: doubling cap must be >= 0");
  SolveReport rep;
  rep.method = "apm";
  PenaltyConfig cfg;
  cfg.kind = kind;
  cfg.mu_smooth = 0.5 * eps;
  cfg.path = options.path;
  cfg.record_history = false;
  double rho = rho0;
  long total_iters = 0;
  for (int k = 0;; ++k) {
    cfg.rho = rho;
    SolveReport stage = penalty_run(ctx, cfg, eps);
    total_iters += stage.outer_iterations;
    const double infeas = ctx.dist_K(stage.u);
    if (options.record_history) {
      rep.history.push_back(detail::make_record(p, k + 1, stage.u, options.f_star, rho, ctx.counters()));
    }
    if (infeas <= eps) {
      rep.u = std::move(stage.u);
      rep.outer_iterations = k + 1;
      rep.doublings = k;
      rep.final_param = rho;
      rep.notes.push_back("inner iterations: " + std::to_string(total_iters));
      detail::finish_report(rep, p, ctx, options.f_star);
      return rep;
    }
    if (k == options.max_doublings) {
      throw NonConvergenceError("a_pm: no eps-feasible point after " +
                                std::to_string(options.max_doublings) + " doublings of rho");
    }
    rho *= 2.0;
  }
}

}  // namespace conicfo
