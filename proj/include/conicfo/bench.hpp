#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conicfo/problem.hpp"
#include "conicfo/report.hpp"

namespace conicfo {

struct Instance {
  std::string generator;
  std::uint64_t seed = 0;
  ConicProblem problem;
  KnownSolution known;
};

// min 1/2 ||u||^2 + q^T u  s.t.  A u = b,  u in [-B, B]^n. The multiplier
// solves A A^T x = -b - A q; throws if the resulting u* is not strictly inside
// the box. A must have full row rank.
Instance make_equality_qp(const Mat& A, const Vec& b, const Vec& q, double box_bound);

// Random equality QP with m = max(1, n/2) rows, ||A|| = 1, u* in [-1, 1]^n and
// box [-2, 2]^n.
Instance gen_equality_qp(Index n, std::uint64_t seed);

// min u2 s.t. |u2|^p <= u1, u1 = 0, with U capped at u1 <= B.
Instance gen_example42(double p, double B = 10.0);

// min c^T u s.t. G u + g >= 0 over a box, built backward from a primal-dual pair.
Instance gen_orthant_lp(Index n, Index m, std::uint64_t seed);

// min 1/2 ||u||^2 + q^T u s.t. G u + g in SOC(m) over a box.
Instance gen_soc_feasibility(Index n, std::uint64_t seed);

struct SweepRecord {
  std::string method;
  double eps = 0.0;
  std::uint64_t proj_U = 0;
  std::uint64_t proj_K = 0;
  std::uint64_t proj_Kstar = 0;
  std::uint64_t matvec = 0;
  std::uint64_t outer_iters = 0;
  double subopt_gap = 0.0;  // NaN when f* is unknown
  double infeas = 0.0;
  double wall_ms = 0.0;
};

struct SweepParams {
  std::optional<double> R_d;     // defaults to max(1, ||x*||)
  std::optional<double> mu;      // auglag / ns smoothing override
  std::optional<double> delta;   // inner accuracy override
  std::optional<double> rho;     // penalty override
  double mu_scale = 1.0;         // auglag: mu = mu_scale * optimal mu
  double mu0 = 1.0;              // aial start
  double rho0 = 1.0;             // apm start
  std::optional<long> kouter;    // ns outer iterations; default N_out
  std::optional<int> max_doublings;  // aial / apm cap
  InnerPath inner = InnerPath::Auto;
};

extern const std::vector<std::string> kMethods;

// Runs one eps-targeted solve and returns the report with counters.
SolveReport run_method(const Instance& instance, const std::string& method, double eps,
                       const SweepParams& params);

std::vector<SweepRecord> sweep_run(const Instance& instance, const std::string& method,
                                   const std::vector<double>& eps_list,
                                   const SweepParams& params = {});

// Optimality test matching the method's guarantee: two-sided for the dual
// methods, one-sided (lower bound -Delta*) for the adaptive and penalty ones.
bool sweep_record_passes(const SweepRecord& record, const KnownSolution& known);

enum class CountField { ProjU, ProjK, ProjKstar, Total };
CountField parse_count_field(const std::string& name);

// Least-squares slope of log(count) against log(1/eps).
double fit_slope(const std::vector<SweepRecord>& records, CountField field);

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> parse_csv(const std::string& path);
std::string format_double(double v);

}  // namespace conicfo
