#include "conicfo/cones.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace conicfo {

namespace {

[[noreturn]] void dim_error(const char* what, Index expected, Index got) {
  std::ostringstream os;
  os << what << ": expected dimension " << expected << ", got " << got;
  throw InputError(os.str());
}

}  // namespace

Cone::Cone(Kind kind, Index dim, std::vector<Cone> parts)
    : kind_(kind), dim_(dim), parts_(std::move(parts)) {}

Cone Cone::zero(Index dim) {
  if (dim < 1) throw InputError("zero cone: dimension must be positive");
  return Cone(Kind::Zero, dim);
}

Cone Cone::nonneg(Index dim) {
  if (dim < 1) throw InputError("nonnegative orthant: dimension must be positive");
  return Cone(Kind::NonnegOrthant, dim);
}

Cone Cone::second_order(Index dim) {
  if (dim < 1) throw InputError("second-order cone: dimension must be positive");
  return Cone(Kind::SecondOrder, dim);
}

Cone Cone::product(std::vector<Cone> parts) {
  if (parts.empty()) throw InputError("product cone: needs at least one factor");
  Index dim = 0;
  for (const auto& c : parts) dim += c.dim();
  return Cone(Kind::Product, dim, std::move(parts));
}

void Cone::check_dim(const Vec& v) const {
  if (v.size() != dim_) dim_error("cone projection", dim_, v.size());
}

void Cone::project_block(const double* v, double* out) const {
  switch (kind_) {
    case Kind::Zero:
      for (Index i = 0; i < dim_; ++i) out[i] = 0.0;
      return;
    case Kind::NonnegOrthant:
      for (Index i = 0; i < dim_; ++i) out[i] = v[i] > 0.0 ? v[i] : 0.0;
      return;
    case Kind::SecondOrder: {
      const Index n = dim_ - 1;
      const double t = v[n];
      double xn = 0.0;
      for (Index i = 0; i < n; ++i) xn += v[i] * v[i];
      xn = std::sqrt(xn);
      if (xn <= t) {
        for (Index i = 0; i <= n; ++i) out[i] = v[i];
      } else if (xn <= -t) {
        for (Index i = 0; i <= n; ++i) out[i] = 0.0;
      } else {
        const double a = 0.5 * (xn + t);
        for (Index i = 0; i < n; ++i) out[i] = a * v[i] / xn;
        out[n] = a;
      }
      return;
    }
    case Kind::Product: {
      Index off = 0;
      for (const auto& c : parts_) {
        c.project_block(v + off, out + off);
        off += c.dim();
      }
      return;
    }
  }
}

Vec Cone::project(const Vec& v) const {
  check_dim(v);
  Vec out(dim_);
  project_block(v.data(), out.data());
  return out;
}

Vec Cone::project_polar(const Vec& v) const { return v - project(v); }

double Cone::distance(const Vec& v) const { return (v - project(v)).norm(); }

Vec half_sq_dist_grad(const Mat& G, const Vec& g, const Cone& K, const Vec& u) {
  if (G.cols() != u.size()) dim_error("half_sq_dist_grad: u", G.cols(), u.size());
  if (G.rows() != g.size()) dim_error("half_sq_dist_grad: g", G.rows(), g.size());
  Vec r = G * u + g;
  return G.transpose() * (r - K.project(r));
}

// ---------------------------------------------------------------------------

Eigen::Vector2d project_p_power_epigraph(double p, double a, double b) {
  if (!(p >= 1.0)) throw ParameterError("p-power epigraph: p must be >= 1");
  const double bb = std::fabs(b);
  if (std::pow(bb, p) <= a) return {a, b};

  // Closest boundary point (s^p, sign(b) s). The stationarity residual
  //   phi(s) = p s^{p-1} (s^p - a) + s - |b|
  // is increasing on [max(a,0)^{1/p}, |b|] and changes sign there.
  auto phi = [&](double s) { return p * std::pow(s, p - 1.0) * (std::pow(s, p) - a) + s - bb; };
  auto dphi = [&](double s) {
    const double sp = std::pow(s, p);
    const double d1 = p > 1.0 ? p * (p - 1.0) * std::pow(s, p - 2.0) * (sp - a) : 0.0;
    return d1 + p * p * std::pow(s, 2.0 * p - 2.0) + 1.0;
  };
  double lo = a > 0.0 ? std::pow(a, 1.0 / p) : 0.0;
  double hi = bb;
  double s;
  if (phi(lo) >= 0.0) {
    s = lo;
  } else {
    const double tol = 1e-12 * std::max(1.0, bb);
    s = hi;
    bool done = false;
    for (int it = 0; it < 200; ++it) {
      const double f = phi(s);
      if (f == 0.0) {
        done = true;
        break;
      }
      if (f < 0.0) lo = s; else hi = s;
      double next = s - f / dphi(s);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::fabs(next - s);
      s = next;
      if (step <= tol || hi - lo <= tol) {
        done = true;
        break;
      }
    }
    if (!done) throw NumericalError("p-power epigraph projection: root finder did not converge");
  }
  return {std::pow(s, p), b < 0.0 ? -s : s};
}

SimpleSet SimpleSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size()) dim_error("box bounds", lower.size(), upper.size());
  if (lower.size() < 1) throw InputError("box: dimension must be positive");
  for (Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw InputError("box: lower bound exceeds upper bound");
  }
  SimpleSet s(Kind::Box, lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

SimpleSet SimpleSet::ball(Vec center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw ParameterError("ball: radius must be finite and >= 0");
  if (center.size() < 1) throw InputError("ball: dimension must be positive");
  SimpleSet s(Kind::Ball, center.size());
  s.lower_ = std::move(center);
  s.radius_ = radius;
  return s;
}

SimpleSet SimpleSet::p_power_epigraph(double p, double u1_max) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p-power epigraph: p must be >= 1");
  if (!(u1_max >= 0.0)) throw ParameterError("p-power epigraph: u1 cap must be >= 0");
  SimpleSet s(Kind::PPowerEpigraph, 2);
  s.p_ = p;
  s.u1_max_ = u1_max;
  return s;
}

SimpleSet SimpleSet::full_space(Index dim) {
  if (dim < 1) throw InputError("full space: dimension must be positive");
  return SimpleSet(Kind::FullSpace, dim);
}

void SimpleSet::check_dim(const Vec& v) const {
  if (v.size() != dim_) dim_error("set projection", dim_, v.size());
}

bool SimpleSet::bounded() const { return std::isfinite(diameter()); }

double SimpleSet::diameter() const {
  switch (kind_) {
    case Kind::Box: return (upper_ - lower_).norm();
    case Kind::Ball: return 2.0 * radius_;
    case Kind::PPowerEpigraph: {
      if (!std::isfinite(u1_max_)) return std::numeric_limits<double>::infinity();
      // Diagonal of the bounding box [0, B] x [-B^{1/p}, B^{1/p}].
      const double w = 2.0 * std::pow(u1_max_, 1.0 / p_);
      return std::hypot(u1_max_, w);
    }
    case Kind::FullSpace: return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

Vec SimpleSet::center() const {
  switch (kind_) {
    case Kind::Box: {
      Vec c(dim_);
      for (Index i = 0; i < dim_; ++i) {
        const bool lf = std::isfinite(lower_[i]), uf = std::isfinite(upper_[i]);
        if (lf && uf) c[i] = 0.5 * (lower_[i] + upper_[i]);
        else if (lf) c[i] = lower_[i];
        else if (uf) c[i] = upper_[i];
        else c[i] = 0.0;
      }
      return c;
    }
    case Kind::Ball: return lower_;
    case Kind::PPowerEpigraph:
    case Kind::FullSpace: return Vec::Zero(dim_);
  }
  return Vec::Zero(dim_);
}

Vec SimpleSet::project(const Vec& v) const {
  check_dim(v);
  switch (kind_) {
    case Kind::Box: return v.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::Ball: {
      const double r = (v - lower_).norm();
      if (r <= radius_) return v;
      return lower_ + (radius_ / r) * (v - lower_);
    }
    case Kind::PPowerEpigraph: {
      Eigen::Vector2d u = project_p_power_epigraph(p_, v[0], v[1]);
      if (u[0] > u1_max_) {
        const double w = std::pow(u1_max_, 1.0 / p_);
        u = {u1_max_, std::clamp(v[1], -w, w)};
      }
      return u;
    }
    case Kind::FullSpace: return v;
  }
  return v;
}

bool SimpleSet::contains(const Vec& v, double tol) const {
  if (v.size() != dim_) return false;
  switch (kind_) {
    case Kind::Box:
      return ((v - lower_).array() >= -tol).all() && ((upper_ - v).array() >= -tol).all();
    case Kind::Ball: return (v - lower_).norm() <= radius_ + tol;
    case Kind::PPowerEpigraph:
      return std::pow(std::fabs(v[1]), p_) <= v[0] + tol && v[0] <= u1_max_ + tol;
    case Kind::FullSpace: return true;
  }
  return false;
}

}  // namespace conicfo
