#pragma once

// Helpers shared by the solver translation units.

#include <cmath>
#include <limits>
#include <string>

#include "conicfo/problem.hpp"
#include "conicfo/report.hpp"

namespace conicfo::detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

// Iteration budgets above this are treated as a parameter error rather than
// an effectively endless run.
inline constexpr double kMaxBudget = 4e9;

inline long to_budget(double raw, const char* what) {
  if (!(raw <= kMaxBudget)) {
    throw ParameterError(std::string(what) + ": iteration budget " + std::to_string(raw) +
                         " is out of range");
  }
  const double c = std::ceil(raw);
  return c < 1.0 ? 1L : static_cast<long>(c);
}

inline IterationRecord make_record(const ConicProblem& p, long k, const Vec& u,
                                   const std::optional<double>& f_star, double param,
                                   const Counters& counters) {
  IterationRecord r;
  r.k = k;
  r.infeas = p.infeasibility(u);
  if (f_star) r.subopt_gap = p.f().value(u) - *f_star;
  r.param = param;
  r.counters = counters;
  return r;
}

inline void finish_report(SolveReport& rep, const ConicProblem& p, const RunContext& ctx,
                          const std::optional<double>& f_star) {
  rep.counters = ctx.counters();
  rep.infeas = p.infeasibility(rep.u);
  if (f_star) rep.subopt_gap = p.f().value(rep.u) - *f_star;
}

inline Vec zero_if_empty(const Vec& v, Index n) {
  if (v.size() == 0) return Vec::Zero(n);
  if (v.size() != n) throw InputError("initial point has wrong dimension");
  return v;
}

}  // namespace conicfo::detail
