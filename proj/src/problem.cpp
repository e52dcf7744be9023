#include "conicfo/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace conicfo {

Vec Objective::gradient(const Vec&) const {
  throw CapabilityError("objective is not smooth: no gradient oracle");
}

Vec Objective::prox(const SimpleSet&, const Vec&, double) const {
  throw CapabilityError("objective is not simple: no prox oracle");
}

SeparableQuadratic::SeparableQuadratic(Vec d, Vec c, double c0)
    : d_(std::move(d)), c_(std::move(c)), c0_(c0) {
  if (d_.size() != c_.size()) throw InputError("quadratic objective: d and c differ in length");
  if (c_.size() < 1) throw InputError("quadratic objective: empty");
  if ((d_.array() < 0.0).any()) throw ParameterError("quadratic objective: d must be nonnegative");
  if (!d_.allFinite() || !c_.allFinite() || !std::isfinite(c0_))
    throw InputError("quadratic objective: non-finite data");
}

std::shared_ptr<SeparableQuadratic> SeparableQuadratic::zero(Index n) {
  return std::make_shared<SeparableQuadratic>(Vec::Zero(n), Vec::Zero(n));
}

std::shared_ptr<SeparableQuadratic> SeparableQuadratic::linear(Vec c, double c0) {
  Vec d = Vec::Zero(c.size());
  return std::make_shared<SeparableQuadratic>(std::move(d), std::move(c), c0);
}

std::shared_ptr<SeparableQuadratic> SeparableQuadratic::quadratic_diag(Vec d, Vec c, double c0) {
  return std::make_shared<SeparableQuadratic>(std::move(d), std::move(c), c0);
}

SeparableQuadratic::Kind SeparableQuadratic::kind() const {
  if (d_.isZero(0.0)) return c_.isZero(0.0) && c0_ == 0.0 ? Kind::Zero : Kind::Linear;
  return Kind::QuadraticDiag;
}

double SeparableQuadratic::value(const Vec& u) const {
  if (u.size() != c_.size()) throw InputError("objective: dimension mismatch");
  return 0.5 * u.dot(d_.cwiseProduct(u)) + c_.dot(u) + c0_;
}

Vec SeparableQuadratic::gradient(const Vec& u) const {
  if (u.size() != c_.size()) throw InputError("objective gradient: dimension mismatch");
  return d_.cwiseProduct(u) + c_;
}

double SeparableQuadratic::lipschitz() const { return d_.maxCoeff(); }
double SeparableQuadratic::strong_convexity() const { return d_.minCoeff(); }

bool SeparableQuadratic::simple_on(const SimpleSet& U) const {
  if (U.dim() != dim()) return false;
  if (U.kind() == SimpleSet::Kind::Box || U.kind() == SimpleSet::Kind::FullSpace) return true;
  return d_.maxCoeff() == d_.minCoeff();
}

Vec SeparableQuadratic::prox(const SimpleSet& U, const Vec& z, double t) const {
  if (!(t > 0.0)) throw ParameterError("prox: step t must be positive");
  if (z.size() != dim()) throw InputError("prox: dimension mismatch");
  if (!simple_on(U))
    throw CapabilityError("prox: non-uniform curvature over a non-separable set has no closed form");
  // Stationarity of 0.5 d u^2 + c u + (u - z)^2 / (2t) per coordinate.
  Vec w = (z - t * c_).cwiseQuotient((1.0 + t * d_.array()).matrix());
  // Separable sets: coordinatewise clamp of the unconstrained minimizer is
  // exact. Uniform curvature: the objective is a scaled distance to w.
  return U.project(w);
}

Vec prox_simple(const Objective& f, const SimpleSet& U, const Vec& z, double t) {
  if (!(t > 0.0)) throw ParameterError("prox: step t must be positive");
  if (!f.simple_on(U)) throw CapabilityError("prox: objective is not simple on this set");
  return f.prox(U, z, t);
}

// ---------------------------------------------------------------------------

double spectral_norm(const Mat& G, double rel_tol, int max_iter) {
  if (G.size() == 0 || G.isZero(0.0)) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  Vec v(G.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = nd(rng);
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = G.transpose() * (G * v);
    const double nw = w.norm();
    if (nw == 0.0) break;
    // Rayleigh quotient of G^T G at v, nondecreasing along power iterates.
    const double next = std::sqrt(v.dot(w));
    v = w / nw;
    if (std::fabs(next - est) <= rel_tol * next) {
      est = next;
      break;
    }
    est = next;
  }
  return std::max(est, (G * v).norm());
}

ConicProblem::ConicProblem(std::shared_ptr<const Objective> f, SimpleSet U, Mat G, Vec g, Cone K)
    : f_(std::move(f)), U_(std::move(U)), G_(std::move(G)), g_(std::move(g)), K_(std::move(K)) {
  if (!f_) throw InputError("problem: objective is null");
  std::ostringstream os;
  if (f_->dim() != U_.dim()) os << "objective dim " << f_->dim() << " != set dim " << U_.dim();
  else if (G_.cols() != U_.dim()) os << "G has " << G_.cols() << " columns, set dim is " << U_.dim();
  else if (G_.rows() != g_.size()) os << "G has " << G_.rows() << " rows, g has length " << g_.size();
  else if (K_.dim() != g_.size()) os << "cone dim " << K_.dim() << " != m = " << g_.size();
  if (!os.str().empty()) throw InputError("problem: " + os.str());
  if (!G_.allFinite() || !g_.allFinite()) throw InputError("problem: non-finite G or g");
  norm_G_ = spectral_norm(G_);
}

double ConicProblem::infeasibility(const Vec& u) const {
  return K_.distance(G_ * u + g_);
}

EpsCheck check_eps_optimal(const ConicProblem& problem, const KnownSolution& known, const Vec& u,
                           double eps, OptimalityMode mode) {
  if (!(eps > 0.0)) throw ParameterError("check_eps_optimal: eps must be positive");
  if (!known.f_star) throw ConfigError("check_eps_optimal: f* is not known for this instance");
  if (u.size() != problem.n()) throw InputError("check_eps_optimal: dimension mismatch");
  Vec v = problem.U().contains(u, 1e-10) ? u : problem.U().project(u);
  EpsCheck r;
  r.subopt_gap = problem.f().value(v) - *known.f_star;
  r.infeas = problem.infeasibility(v);
  double lower = eps;
  if (mode == OptimalityMode::OneSided) {
    auto ds = known.delta_star();
    if (!ds) throw ConfigError("check_eps_optimal: one-sided mode needs f_lower (Delta*)");
    lower = std::max(eps, *ds);
  }
  r.pass = r.subopt_gap <= eps && r.subopt_gap >= -lower && r.infeas <= eps;
  return r;
}

double kkt_residual(const ConicProblem& problem, const Vec& u_star, const Vec& x_star) {
  const auto& f = problem.f();
  const Vec gtx = problem.G().transpose() * x_star;
  Vec stat;
  if (f.smooth()) {
    stat = u_star - problem.U().project(u_star - (f.gradient(u_star) + gtx));
  } else {
    stat = u_star - prox_simple(f, problem.U(), u_star - gtx, 1.0);
  }
  const Vec r = problem.G() * u_star + problem.g();
  const double feas = problem.K().distance(r);
  const double polar = (x_star - problem.K().project_polar(x_star)).norm();
  const double comp = std::fabs(x_star.dot(r));
  return std::max({stat.norm(), feas, polar, comp});
}

}  // namespace conicfo
