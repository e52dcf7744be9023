#include "conicfo/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "conicfo/auglag.hpp"
#include "conicfo/nsmooth.hpp"
#include "conicfo/penalty.hpp"

namespace conicfo {

namespace {

Mat gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = nd(rng);
  return A;
}

Vec uniform_vector(Index n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = ud(rng);
  return v;
}

Vec gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

// Scale to unit spectral norm (exact SVD; generators only).
Mat normalized(const Mat& A) {
  const double s = Eigen::JacobiSVD<Mat>(A).singularValues()(0);
  return A / s;
}

// min over [-B, B]^n of 1/2 ||u||^2 + q^T u.
double box_min_unit_quadratic(const Vec& q, double B) {
  double v = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    const double u = std::clamp(-q[i], -B, B);
    v += 0.5 * u * u + q[i] * u;
  }
  return v;
}

std::shared_ptr<SeparableQuadratic> unit_quadratic(const Vec& q) {
  return SeparableQuadratic::quadratic_diag(Vec::Ones(q.size()), q);
}

SimpleSet cube(Index n, double B) { return SimpleSet::box(Vec::Constant(n, -B), Vec::Constant(n, B)); }

template <class E>
[[noreturn]] void rethrow_annotated(const E& e, double eps) {
  throw E("eps=" + format_double(eps) + ": " + e.what());
}

}  // namespace

Instance make_equality_qp(const Mat& A, const Vec& b, const Vec& q, double box_bound) {
  if (A.rows() != b.size() || A.cols() != q.size()) throw InputError("equality_qp: dimension mismatch");
  if (!(box_bound > 0.0)) throw ParameterError("equality_qp: box bound must be positive");
  const Mat AAt = A * A.transpose();
  Eigen::LDLT<Mat> ldlt(AAt);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12)
    throw InputError("equality_qp: A must have full row rank");
  const Vec x = ldlt.solve(-b - A * q);
  const Vec u = -q - A.transpose() * x;
  if (u.cwiseAbs().maxCoeff() >= box_bound)
    throw InputError("equality_qp: solution is not strictly inside the box");
  auto f = unit_quadratic(q);
  Instance inst{"equality_qp", 0, ConicProblem(f, cube(A.cols(), box_bound), A, -b, Cone::zero(A.rows())), {}};
  inst.known.u_star = u;
  inst.known.x_star = x;
  inst.known.f_star = f->value(u);
  inst.known.R_d = x.norm();
  inst.known.f_lower = box_min_unit_quadratic(q, box_bound);
  return inst;
}

Instance gen_equality_qp(Index n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("equality_qp: n must be >= 2");
  const Index m = std::max<Index>(1, n / 2);
  std::mt19937_64 rng(seed);
  const Mat A = normalized(gaussian_matrix(m, n, rng));
  const Vec u = uniform_vector(n, -1.0, 1.0, rng);
  const Vec x = gaussian_vector(m, rng);
  const Vec q = -u - A.transpose() * x;
  const Vec b = A * u;
  const double B = 2.0;
  auto f = unit_quadratic(q);
  Instance inst{"equality_qp", seed, ConicProblem(f, cube(n, B), A, -b, Cone::zero(m)), {}};
  inst.known.u_star = u;
  inst.known.x_star = x;
  inst.known.f_star = f->value(u);
  inst.known.R_d = x.norm();
  inst.known.f_lower = box_min_unit_quadratic(q, B);
  return inst;
}

Instance gen_example42(double p, double B) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("example42: p must be >= 2");
  if (!(B >= 1.0)) throw ParameterError("example42: cap B must be >= 1");
  Mat G(1, 2);
  G << 1.0, 0.0;
  auto f = SeparableQuadratic::linear(Eigen::Vector2d(0.0, 1.0));
  Instance inst{"example42", 0,
                ConicProblem(f, SimpleSet::p_power_epigraph(p, B), G, Vec::Zero(1), Cone::zero(1)), {}};
  inst.known.u_star = Eigen::Vector2d(0.0, 0.0);
  inst.known.f_star = 0.0;
  // u2 is smallest at the corner (B, -B^{1/p}) of the capped set.
  inst.known.f_lower = -std::pow(B, 1.0 / p);
  return inst;
}

Instance gen_orthant_lp(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ParameterError("orthant_lp: dimensions must be positive");
  std::mt19937_64 rng(seed);
  const Mat G = normalized(gaussian_matrix(m, n, rng));
  // u*: even coordinates interior, odd ones at a bound with a normal-cone
  // component nu pointing outward.
  Vec u = uniform_vector(n, -0.9, 0.9, rng);
  Vec nu = Vec::Zero(n);
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  for (Index i = 1; i < n; i += 2) {
    const double s = ud(rng) < 0.55 ? 1.0 : -1.0;
    u[i] = s;
    nu[i] = s * ud(rng);
  }
  // Moreau split of a random vector gives a complementary pair s* in K, x* in K*.
  const Vec v = gaussian_vector(m, rng);
  const Cone K = Cone::nonneg(m);
  const Vec s = K.project(v);
  const Vec x = K.project_polar(v);
  const Vec g = s - G * u;
  const Vec c = -G.transpose() * x - nu;
  auto f = SeparableQuadratic::linear(c);
  Instance inst{"orthant_lp", seed, ConicProblem(f, cube(n, 1.0), G, g, K), {}};
  inst.known.u_star = u;
  inst.known.x_star = x;
  inst.known.f_star = c.dot(u);
  inst.known.R_d = x.norm();
  inst.known.f_lower = -c.cwiseAbs().sum();
  return inst;
}

Instance gen_soc_feasibility(Index n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("soc_feasibility: n must be >= 2");
  const Index m = std::max<Index>(3, n / 2 + 1);
  std::mt19937_64 rng(seed);
  const Mat G = normalized(gaussian_matrix(m, n, rng));
  const Vec u = uniform_vector(n, -1.0, 1.0, rng);
  Vec v = gaussian_vector(m, rng);
  v[m - 1] = 0.0;  // forces the split onto the cone boundary: both parts nonzero
  const Cone K = Cone::second_order(m);
  const Vec s = K.project(v);
  const Vec x = K.project_polar(v);
  const Vec g = s - G * u;
  const Vec q = -u - G.transpose() * x;
  const double B = 2.0;
  auto f = unit_quadratic(q);
  Instance inst{"soc_feasibility", seed, ConicProblem(f, cube(n, B), G, g, K), {}};
  inst.known.u_star = u;
  inst.known.x_star = x;
  inst.known.f_star = f->value(u);
  inst.known.R_d = x.norm();
  inst.known.f_lower = box_min_unit_quadratic(q, B);
  return inst;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kMethods = {"ial", "fial", "aial", "ns", "qp", "np", "apm"};

namespace {

double resolve_R_d(const Instance& inst, const SweepParams& params, const std::string& method) {
  if (params.R_d) {
    if (!(*params.R_d > 0.0)) throw ParameterError("R_d must be positive");
    return *params.R_d;
  }
  if (inst.known.x_star) return std::max(1.0, inst.known.x_star->norm());
  if (inst.known.R_d) return std::max(1.0, *inst.known.R_d);
  throw ConfigError(method + ": R_d is required (instance has no known multiplier)");
}

double resolve_delta_star(const Instance& inst, const std::string& method) {
  auto ds = inst.known.delta_star();
  if (!ds) throw ConfigError(method + ": Delta* is required (needs f_star and f_lower)");
  return *ds;
}

}  // namespace

SolveReport run_method(const Instance& inst, const std::string& method, double eps,
                       const SweepParams& params) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  const ConicProblem& p = inst.problem;
  RunContext ctx(p);
  const auto f_star = inst.known.f_star;
  const bool simple = resolve_inner_mode(p, params.inner) == InnerMode::SimpleF;
  const double lf = simple ? 0.0 : p.f().lipschitz();

  if (method == "ial" || method == "fial") {
    const auto variant = method == "ial" ? AugLagVariant::Gradient : AugLagVariant::Fast;
    const double R = resolve_R_d(inst, params, method);
    AugLagConfig cfg;
    cfg.mu = params.mu ? *params.mu
                       : params.mu_scale * optimal_params_auglag(variant, eps, R, lf, p.norm_G()).mu;
    cfg.outer_budget = auglag_outer_budget(variant, cfg.mu, eps, R);
    cfg.delta = params.delta ? *params.delta
                             : auglag_inner_accuracy(variant, cfg.mu, eps, R, cfg.outer_budget);
    cfg.schedule = variant == AugLagVariant::Gradient ? ThetaSchedule::Constant
                                                      : ThetaSchedule::Accelerated;
    cfg.inner = params.inner;
    cfg.f_star = f_star;
    cfg.record_history = false;
    return ial_run(ctx, cfg);
  }
  if (method == "aial") {
    AialOptions opt;
    opt.inner = params.inner;
    opt.f_star = f_star;
    opt.record_history = false;
    if (params.max_doublings) opt.max_doublings = *params.max_doublings;
    return a_ial_run(ctx, params.mu0, eps, opt);
  }
  if (method == "ns") {
    const double R = resolve_R_d(inst, params, method);
    const double D = p.D_U();
    const long K = params.kouter ? *params.kouter
                                 : ns_params(1, p.norm_G(), R, D, eps).n_out;
    const NsParams np = ns_params(K, p.norm_G(), R, D, eps);
    NsConfig cfg;
    cfg.mu = params.mu ? *params.mu : np.mu;
    cfg.delta = params.delta ? *params.delta : (simple ? 0.0 : np.delta);
    cfg.K_outer = K;
    cfg.inner = params.inner;
    cfg.f_star = f_star;
    cfg.record_history = false;
    return ns_run(ctx, cfg);
  }
  if (method == "qp" || method == "np") {
    const auto kind = method == "qp" ? PenaltyKind::D : PenaltyKind::N;
    PenaltyConfig cfg;
    cfg.kind = kind;
    if (params.rho) {
      cfg.rho = *params.rho;
      cfg.mu_smooth = 0.5 * eps;
    } else {
      const PenaltyParams pp = penalty_params(kind, eps, resolve_delta_star(inst, method));
      cfg.rho = pp.rho;
      cfg.mu_smooth = pp.mu_smooth.value_or(0.5 * eps);
    }
    cfg.path = params.inner;
    cfg.f_star = f_star;
    cfg.record_history = false;
    SolveReport rep = penalty_run(ctx, cfg, eps);
    if (kind == PenaltyKind::D && !params.rho) {
      rep.precondition_warning = penalty_params(kind, eps, resolve_delta_star(inst, method)).precondition_warning;
    }
    return rep;
  }
  if (method == "apm") {
    ApmOptions opt;
    opt.path = params.inner;
    opt.f_star = f_star;
    opt.record_history = false;
    if (params.max_doublings) opt.max_doublings = *params.max_doublings;
    return a_pm_run(ctx, params.rho0, eps, PenaltyKind::D, opt);
  }
  throw ParameterError("unknown method '" + method + "'");
}

std::vector<SweepRecord> sweep_run(const Instance& inst, const std::string& method,
                                   const std::vector<double>& eps_list, const SweepParams& params) {
  if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end())
    throw ParameterError("unknown method '" + method + "'");
  if (eps_list.empty()) throw ParameterError("eps list is empty");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw ParameterError("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw ParameterError("eps list must be strictly decreasing");
  }
  std::vector<SweepRecord> out;
  for (double eps : eps_list) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    try {
      rep = run_method(inst, method, eps, params);
    } catch (const NonConvergenceError& e) {
      rethrow_annotated(e, eps);
    } catch (const NumericalError& e) {
      rethrow_annotated(e, eps);
    } catch (const ConfigError& e) {
      rethrow_annotated(e, eps);
    } catch (const CapabilityError& e) {
      rethrow_annotated(e, eps);
    } catch (const ParameterError& e) {
      rethrow_annotated(e, eps);
    }
    const auto t1 = std::chrono::steady_clock::now();
    SweepRecord r;
    r.method = method;
    r.eps = eps;
    r.proj_U = rep.counters.proj_U;
    r.proj_K = rep.counters.proj_K;
    r.proj_Kstar = rep.counters.proj_Kstar;
    r.matvec = rep.counters.matvecs();
    r.outer_iters = static_cast<std::uint64_t>(rep.outer_iterations);
    r.subopt_gap = rep.subopt_gap.value_or(std::numeric_limits<double>::quiet_NaN());
    r.infeas = rep.infeas;
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool sweep_record_passes(const SweepRecord& r, const KnownSolution& known) {
  if (std::isnan(r.subopt_gap)) return false;
  double lower = r.eps;
  if (r.method != "ial" && r.method != "fial" && r.method != "ns") {
    auto ds = known.delta_star();
    if (!ds) throw ConfigError("one-sided check needs Delta*");
    lower = std::max(r.eps, *ds);
  }
  return r.infeas <= r.eps && r.subopt_gap <= r.eps && r.subopt_gap >= -lower;
}

CountField parse_count_field(const std::string& name) {
  if (name == "proj_U") return CountField::ProjU;
  if (name == "proj_K") return CountField::ProjK;
  if (name == "proj_Kstar") return CountField::ProjKstar;
  if (name == "total") return CountField::Total;
  throw ParameterError("unknown count field '" + name + "'");
}

double fit_slope(const std::vector<SweepRecord>& records, CountField field) {
  if (records.size() < 3) throw ParameterError("fit_slope: needs at least 3 records");
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    std::uint64_t c = 0;
    switch (field) {
      case CountField::ProjU: c = r.proj_U; break;
      case CountField::ProjK: c = r.proj_K; break;
      case CountField::ProjKstar: c = r.proj_Kstar; break;
      case CountField::Total: c = r.proj_U + r.proj_K + r.proj_Kstar; break;
    }
    if (c == 0) throw ParameterError("fit_slope: counts must be positive");
    if (!(r.eps > 0.0)) throw ParameterError("fit_slope: eps must be positive");
    xs.push_back(std::log(1.0 / r.eps));
    ys.push_back(std::log(static_cast<double>(c)));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 1e-300)) throw ParameterError("fit_slope: all eps values are equal");
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

const char* kHeader =
    "method,eps,proj_U,proj_K,proj_Kstar,matvec,outer_iters,subopt_gap,infeas,wall_ms";

double parse_double(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw InputError(ctx + ": bad number '" + s + "'");
  return v;
}

std::uint64_t parse_count(const std::string& s, const std::string& ctx) {
  std::uint64_t v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw InputError(ctx + ": bad count '" + s + "'");
  return v;
}

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kHeader << '\n';
  for (const auto& r : records) {
    if (r.method.find_first_of(",\n\r") != std::string::npos)
      throw InputError("method id contains a separator: '" + r.method + "'");
    out << r.method << ',' << format_double(r.eps) << ',' << r.proj_U << ',' << r.proj_K << ','
        << r.proj_Kstar << ',' << r.matvec << ',' << r.outer_iters << ','
        << format_double(r.subopt_gap) << ',' << format_double(r.infeas) << ','
        << format_double(r.wall_ms) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<SweepRecord> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw InputError(path + ": unexpected header");
  std::vector<SweepRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const std::string ctx = path + ":" + std::to_string(lineno);
    if (f.size() != 10) throw InputError(ctx + ": expected 10 fields");
    SweepRecord r;
    r.method = f[0];
    r.eps = parse_double(f[1], ctx);
    r.proj_U = parse_count(f[2], ctx);
    r.proj_K = parse_count(f[3], ctx);
    r.proj_Kstar = parse_count(f[4], ctx);
    r.matvec = parse_count(f[5], ctx);
    r.outer_iters = parse_count(f[6], ctx);
    r.subopt_gap = parse_double(f[7], ctx);
    r.infeas = parse_double(f[8], ctx);
    r.wall_ms = parse_double(f[9], ctx);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace conicfo
