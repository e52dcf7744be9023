#pragma once

#include <memory>
#include <optional>

#include "conicfo/cones.hpp"

namespace conicfo {

// Objective oracle. Smooth objectives expose a gradient; simple ones expose an
// exact prox over a given set. Values are finite on U.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dim() const = 0;
  virtual double value(const Vec& u) const = 0;

  virtual bool smooth() const { return false; }
  virtual Vec gradient(const Vec& u) const;
  // Lipschitz constant of the gradient.
  virtual double lipschitz() const { return 0.0; }
  virtual double strong_convexity() const { return 0.0; }

  virtual bool simple_on(const SimpleSet&) const { return false; }
  // argmin_{u in U} f(u) + ||u - z||^2 / (2t)
  virtual Vec prox(const SimpleSet& U, const Vec& z, double t) const;
};

// f(u) = 0.5 * sum_i d_i u_i^2 + c^T u + c0 with d >= 0. Covers the linear,
// diagonal-quadratic and zero objective kinds.
class SeparableQuadratic final : public Objective {
 public:
  enum class Kind { Zero, Linear, QuadraticDiag };

  SeparableQuadratic(Vec d, Vec c, double c0 = 0.0);
  static std::shared_ptr<SeparableQuadratic> zero(Index n);
  static std::shared_ptr<SeparableQuadratic> linear(Vec c, double c0 = 0.0);
  static std::shared_ptr<SeparableQuadratic> quadratic_diag(Vec d, Vec c, double c0 = 0.0);

  Kind kind() const;
  const Vec& d() const { return d_; }
  const Vec& c() const { return c_; }
  double c0() const { return c0_; }

  Index dim() const override { return c_.size(); }
  double value(const Vec& u) const override;
  bool smooth() const override { return true; }
  Vec gradient(const Vec& u) const override;
  double lipschitz() const override;
  double strong_convexity() const override;
  // Exact prox when U is separable (box, full space) or the curvature is uniform.
  bool simple_on(const SimpleSet& U) const override;
  Vec prox(const SimpleSet& U, const Vec& z, double t) const override;

 private:
  Vec d_, c_;
  double c0_;
};

Vec prox_simple(const Objective& f, const SimpleSet& U, const Vec& z, double t);

// min f(u) s.t. u in U, G u + g in K. Immutable once built.
class ConicProblem {
 public:
  ConicProblem(std::shared_ptr<const Objective> f, SimpleSet U, Mat G, Vec g, Cone K);

  const Objective& f() const { return *f_; }
  std::shared_ptr<const Objective> f_ptr() const { return f_; }
  const SimpleSet& U() const { return U_; }
  const Mat& G() const { return G_; }
  const Vec& g() const { return g_; }
  const Cone& K() const { return K_; }
  Index n() const { return G_.cols(); }
  Index m() const { return G_.rows(); }
  double norm_G() const { return norm_G_; }
  double D_U() const { return U_.diameter(); }

  // Uninstrumented residual measurement: dist_K(G u + g).
  double infeasibility(const Vec& u) const;

 private:
  std::shared_ptr<const Objective> f_;
  SimpleSet U_;
  Mat G_;
  Vec g_;
  Cone K_;
  double norm_G_;
};

// Spectral norm by power iteration on G^T G.
double spectral_norm(const Mat& G, double rel_tol = 1e-10, int max_iter = 1000);

// Counted access to the problem's primitives. One context per solver run;
// nested inner/outer solvers share it so the tally covers the whole run.
class RunContext {
 public:
  explicit RunContext(const ConicProblem& problem) : p_(problem) {}

  const ConicProblem& problem() const { return p_; }
  Counters& counters() { return c_; }
  const Counters& counters() const { return c_; }

  Vec G_times(const Vec& u) {
    ++c_.matvec_G;
    return p_.G() * u;
  }
  Vec Gt_times(const Vec& x) {
    ++c_.matvec_Gt;
    return p_.G().transpose() * x;
  }
  Vec residual(const Vec& u) {
    ++c_.matvec_G;
    return p_.G() * u + p_.g();
  }
  Vec project_K(const Vec& v) {
    ++c_.proj_K;
    return p_.K().project(v);
  }
  Vec project_Kstar(const Vec& v) {
    ++c_.proj_Kstar;
    return p_.K().project_polar(v);
  }
  Vec project_U(const Vec& v) {
    ++c_.proj_U;
    return p_.U().project(v);
  }
  // A prox of f over U costs one U-projection.
  Vec prox_f(const Vec& z, double t) {
    ++c_.proj_U;
    return prox_simple(p_.f(), p_.U(), z, t);
  }
  Vec grad_f(const Vec& u) {
    ++c_.grad_f;
    return p_.f().gradient(u);
  }
  double dist_K(const Vec& u) {
    Vec r = residual(u);
    return (r - project_K(r)).norm();
  }
  // G^T (r - P_K(r)), r = G u + g: one K-projection, two matvecs.
  Vec half_sq_dist_grad(const Vec& u) {
    Vec r = residual(u);
    return Gt_times(r - project_K(r));
  }

 private:
  const ConicProblem& p_;
  Counters c_;
};

struct KnownSolution {
  std::optional<double> f_star;
  std::optional<Vec> u_star;
  std::optional<Vec> x_star;
  std::optional<double> R_d;
  std::optional<double> f_lower;

  std::optional<double> delta_star() const {
    if (f_star && f_lower) return *f_star - *f_lower;
    return std::nullopt;
  }
};

enum class OptimalityMode { TwoSided, OneSided };

struct EpsCheck {
  double subopt_gap = 0.0;
  double infeas = 0.0;
  bool pass = false;
};

// Definition of an eps-optimal point. One-sided mode relaxes the lower bound
// on f(u) - f* to -Delta*.
EpsCheck check_eps_optimal(const ConicProblem& problem, const KnownSolution& known, const Vec& u,
                           double eps, OptimalityMode mode = OptimalityMode::TwoSided);

// Max of stationarity, primal feasibility, polar-cone membership and
// complementarity residuals of (u*, x*).
double kkt_residual(const ConicProblem& problem, const Vec& u_star, const Vec& x_star);

}  // namespace conicfo
