#include "support/reference.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace conicfo::ref {

Vec lmo(const SimpleSet& U, const Vec& c) {
  switch (U.kind()) {
    case SimpleSet::Kind::Box: {
      Vec v(c.size());
      for (Index i = 0; i < c.size(); ++i) v[i] = c[i] > 0.0 ? U.lower()[i] : U.upper()[i];
      return v;
    }
    case SimpleSet::Kind::Ball: {
      const double n = c.norm();
      if (n == 0.0) return U.center();
      return U.center() - (U.radius() / n) * c;
    }
    default:
      throw CapabilityError("reference lmo: only box and ball sets");
  }
}

RefResult minimize(const ScalarFn& F, const GradFn& grad, double L, const SimpleSet& U,
                   const Vec& z0, double target_gap, long max_iter) {
  auto fw_gap = [&](const Vec& x, const Vec& g) { return g.dot(x - lmo(U, g)); };
  Vec x_prev = U.project(z0);
  Vec y = x_prev;
  double F_prev = F(x_prev);
  double t = 1.0;
  RefResult best;
  best.u = x_prev;
  best.value = F_prev;
  best.certificate = fw_gap(x_prev, grad(x_prev));
  long since_improve = 0;
  long accepted = 0;
  for (long k = 1; k <= max_iter; ++k) {
    const Vec x = U.project(y - grad(y) / L);
    const double Fx = F(x);
    if (Fx > F_prev && t > 1.0) {
      // Function-value restart: drop momentum, restart from the last iterate.
      // A plain gradient step (t == 1) is always accepted, so rounding-level
      // increases cannot stall the loop.
      y = x_prev;
      t = 1.0;
      continue;
    }
    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x + ((t - 1.0) / t_new) * (x - x_prev);
    x_prev = x;
    F_prev = Fx;
    t = t_new;
    if (++accepted % 16 == 0) {
      const double gap = fw_gap(x, grad(x));
      ++since_improve;
      if (gap < best.certificate) {
        best.u = x;
        best.value = Fx;
        best.certificate = gap;
        best.iterations = k;
        since_improve = 0;
      }
      if (best.certificate <= target_gap || since_improve > 4000) break;
    }
  }
  return best;
}

Vec fd_gradient(const ScalarFn& F, const Vec& x, double h) {
  Vec g(x.size());
  Vec xp = x, xm = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (F(xp) - F(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

RefResult auglag_dual(const ConicProblem& p, const Vec& x, double mu, double target_gap) {
  const Vec shift = x / mu;
  auto F = [&](const Vec& u) {
    const Vec v = p.G() * u + p.g() + shift;
    return p.f().value(u) + 0.5 * mu * (v - p.K().project(v)).squaredNorm() - x.squaredNorm() / (2.0 * mu);
  };
  auto grad = [&](const Vec& u) {
    const Vec v = p.G() * u + p.g() + shift;
    return Vec(p.f().gradient(u) + mu * p.G().transpose() * (v - p.K().project(v)));
  };
  const double L = p.f().lipschitz() + mu * p.norm_G() * p.norm_G();
  return minimize(F, grad, L, p.U(), p.U().center(), target_gap);
}

RefResult smoothed_dual(const ConicProblem& p, const Vec& x, double mu, const Vec& u0, double target_gap) {
  const Vec gtx = p.G().transpose() * x;
  const double xg = x.dot(p.g());
  auto F = [&](const Vec& u) { return p.f().value(u) + gtx.dot(u) + xg + 0.5 * mu * (u - u0).squaredNorm(); };
  auto grad = [&](const Vec& u) { return Vec(p.f().gradient(u) + gtx + mu * (u - u0)); };
  return minimize(F, grad, p.f().lipschitz() + mu, p.U(), u0, target_gap);
}

RefResult quad_penalty_min(const ConicProblem& p, double rho, double target_gap) {
  auto F = [&](const Vec& u) {
    const Vec r = p.G() * u + p.g();
    return p.f().value(u) + 0.5 * rho * (r - p.K().project(r)).squaredNorm();
  };
  auto grad = [&](const Vec& u) {
    const Vec r = p.G() * u + p.g();
    return Vec(p.f().gradient(u) + rho * p.G().transpose() * (r - p.K().project(r)));
  };
  const double L = p.f().lipschitz() + rho * p.norm_G() * p.norm_G();
  return minimize(F, grad, L, p.U(), p.U().center(), target_gap);
}

Vec equality_qp_smoothed_multiplier(const ConicProblem& p, double mu, const Vec& u0) {
  const auto* f = dynamic_cast<const SeparableQuadratic*>(&p.f());
  if (!f) throw CapabilityError("equality_qp_smoothed_multiplier: separable quadratic expected");
  const Mat& G = p.G();
  const Mat GGt = G * G.transpose();
  const Vec rhs = G * (mu * u0 - f->c()) + (1.0 + mu) * p.g();
  return GGt.ldlt().solve(rhs);
}

}  // namespace conicfo::ref
