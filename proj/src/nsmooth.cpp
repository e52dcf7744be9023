#include "conicfo/nsmooth.hpp"

#include <cmath>

#include "detail.hpp"

namespace conicfo {

using detail::require_positive;

LagrangianEval smoothed_lag_eval(RunContext& ctx, const Vec& u, const Vec& x, double mu,
                                 const Vec& u0) {
  if (!(mu >= 0.0)) throw ParameterError("smoothed_lag_eval: mu must be >= 0");
  const auto& p = ctx.problem();
  if (u.size() != p.n() || u0.size() != p.n() || x.size() != p.m())
    throw InputError("smoothed_lag_eval: dimension mismatch");
  LagrangianEval e;
  e.grad_x = ctx.residual(u);
  e.value = p.f().value(u) + x.dot(e.grad_x) + 0.5 * mu * (u - u0).squaredNorm();
  return e;
}

long ns_inner_budget(double L_f, double mu, double D_U, double delta) {
  require_positive(mu, "ns_inner_budget: mu");
  if (!(L_f >= 0.0)) throw ParameterError("ns_inner_budget: L_f must be >= 0");
  if (L_f == 0.0) return 1;
  require_positive(delta, "ns_inner_budget: delta");
  if (!std::isfinite(D_U)) throw ParameterError("ns_inner_budget: U must be bounded");
  const double lg = std::log(L_f * D_U * D_U / (4.0 * delta));
  return detail::to_budget(std::sqrt(L_f / mu) * lg, "ns_inner_budget");
}

Vec inner_solve_ns(RunContext& ctx, const Vec& x, double mu, double delta, const Vec& u0,
                   InnerPath path) {
  require_positive(mu, "inner_solve_ns: mu");
  const auto& p = ctx.problem();
  if (x.size() != p.m() || u0.size() != p.n()) throw InputError("inner_solve_ns: dimension mismatch");
  const InnerMode mode = resolve_inner_mode(p, path);
  const Vec gtx = ctx.Gt_times(x);
  if (mode == InnerMode::SimpleF) {
    // f(u) + <G^T x, u> + mu/2 ||u - u0||^2 = f(u) + mu/2 ||u - (u0 - G^T x / mu)||^2 + const
    return ctx.prox_f(u0 - gtx / mu, 1.0 / mu);
  }
  // Smooth part f + <G^T x, .> + mu/2 ||. - u0||^2 is mu-strongly convex with
  // L = L_f + mu; constant-momentum accelerated projected gradient.
  const double lf = p.f().lipschitz();
  const long budget = ns_inner_budget(lf, mu, p.D_U(), delta);
  const double L = lf + mu;
  const double beta = (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu));
  Vec y = u0;
  Vec u_prev = u0;
  Vec step(p.n());
  for (long k = 0; k < budget; ++k) {
    step = y - (ctx.grad_f(y) + gtx + mu * (y - u0)) / L;
    Vec u = ctx.project_U(step);
    y = u + beta * (u - u_prev);
    u_prev = std::move(u);
  }
  if (!u_prev.allFinite()) throw NumericalError("inner_solve_ns: non-finite iterate");
  return u_prev;
}

NsParams ns_params(long K_outer, double norm_G, double R_d, double D_U, double eps) {
  if (K_outer < 1) throw ParameterError("ns_params: K_outer must be >= 1");
  require_positive(norm_G, "ns_params: ||G||");
  require_positive(R_d, "ns_params: R_d");
  require_positive(D_U, "ns_params: D_U");
  require_positive(eps, "ns_params: eps");
  NsParams r;
  const double gdr = norm_G * D_U * R_d;
  r.mu = std::pow(2.0, 1.5) * norm_G * R_d / (D_U * static_cast<double>(K_outer));
  r.n_out = detail::to_budget(6.0 * gdr / eps, "ns_params");
  r.delta = std::min(eps * eps / (8.0 * gdr), eps / (6.0 * static_cast<double>(r.n_out)));
  return r;
}

SolveReport ns_run(RunContext& ctx, const NsConfig& config) {
  const auto& p = ctx.problem();
  require_positive(config.mu, "ns: mu");
  if (!(config.delta >= 0.0)) throw ParameterError("ns: delta must be >= 0");
  if (config.K_outer < 1) throw ParameterError("ns: K_outer must be >= 1");
  if (!p.U().bounded()) throw ParameterError("ns: U must be bounded");
  const Vec u0 = config.u0.size() == 0 ? p.U().center() : config.u0;
  if (u0.size() != p.n() || !p.U().contains(u0, 1e-12)) throw InputError("ns: prox center must lie in U");
  const Vec x0 = detail::zero_if_empty(config.x0, p.m());
  const double mu = config.mu;

  Vec last_u;
  DeltaLOracle oracle;
  oracle.delta = 3.0 * config.delta;
  oracle.L = 2.0 * config.L_d(p.norm_G());
  if (!(oracle.L > 0.0)) oracle.L = 1.0;
  oracle.eval = [&](const Vec& x) {
    last_u = inner_solve_ns(ctx, x, mu, config.delta, u0, config.inner);
    LagrangianEval e = smoothed_lag_eval(ctx, last_u, x, mu, u0);
    return OracleValue{-e.value, -e.grad_x};
  };
  ProxFn prox = [&](const Vec& v, double) { return ctx.project_Kstar(v); };

  SolveReport rep;
  rep.method = "ns";
  PrimalAverage avg;
  IcfgOptions opt;
  opt.schedule = ThetaSchedule::Accelerated;
  opt.max_iterations = config.K_outer;
  opt.observer = [&](const IcfgStep& s) {
    avg.add(last_u, s.theta);
    if (config.record_history) {
      rep.history.push_back(
          detail::make_record(p, s.k, avg.value(), config.f_star, mu, ctx.counters()));
      rep.history.back().x = s.z;
    }
    return false;
  };
  IcfgResult res = icfg_run(oracle, prox, x0, opt);

  rep.u = avg.value();
  rep.x = res.last;
  rep.outer_iterations = res.iterations;
  rep.final_param = mu;
  detail::finish_report(rep, p, ctx, config.f_star);
  return rep;
}

}  // namespace conicfo
