#pragma once

#include <limits>
#include <vector>

#include "conicfo/types.hpp"

namespace conicfo {

// Closed convex cone. Immutable after construction.
class Cone {
 public:
  enum class Kind { Zero, NonnegOrthant, SecondOrder, Product };

  static Cone zero(Index dim);
  static Cone nonneg(Index dim);
  // Second-order cone {(x, t) : ||x|| <= t}; t is the last coordinate.
  static Cone second_order(Index dim);
  static Cone product(std::vector<Cone> parts);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const std::vector<Cone>& parts() const { return parts_; }

  Vec project(const Vec& v) const;
  // Projection onto the polar cone K*, via Moreau: v - P_K(v).
  Vec project_polar(const Vec& v) const;
  double distance(const Vec& v) const;

 private:
  Cone(Kind kind, Index dim, std::vector<Cone> parts = {});
  void project_block(const double* v, double* out) const;
  void check_dim(const Vec& v) const;

  Kind kind_;
  Index dim_;
  std::vector<Cone> parts_;
};

// Simple closed convex set U with an exact projection.
class SimpleSet {
 public:
  enum class Kind { Box, Ball, PPowerEpigraph, FullSpace };

  static SimpleSet box(Vec lower, Vec upper);
  static SimpleSet ball(Vec center, double radius);
  // {(u1, u2) : |u2|^p <= u1}, optionally intersected with u1 <= u1_max.
  static SimpleSet p_power_epigraph(double p,
                                    double u1_max = std::numeric_limits<double>::infinity());
  static SimpleSet full_space(Index dim);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool bounded() const;
  // Euclidean diameter; +inf when unbounded.
  double diameter() const;
  // A fixed point of U used as start point and prox center: box midpoint,
  // ball center, the apex (0, 0) of the epigraph, the origin of R^n.
  Vec center() const;
  Vec project(const Vec& v) const;
  bool contains(const Vec& v, double tol = 1e-12) const;

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  double radius() const { return radius_; }
  double p() const { return p_; }
  double u1_max() const { return u1_max_; }

 private:
  SimpleSet(Kind kind, Index dim) : kind_(kind), dim_(dim) {}
  void check_dim(const Vec& v) const;

  Kind kind_;
  Index dim_;
  Vec lower_, upper_;  // Box bounds; ball center lives in lower_
  double radius_ = 0.0;
  double p_ = 1.0;
  double u1_max_ = std::numeric_limits<double>::infinity();
};

// Projection of (a, b) onto {|u2|^p <= u1} (uncapped).
Eigen::Vector2d project_p_power_epigraph(double p, double a, double b);

// Free-function spellings of the primitives.
inline Vec project_cone(const Cone& K, const Vec& v) { return K.project(v); }
inline Vec project_polar_cone(const Cone& K, const Vec& v) { return K.project_polar(v); }
inline double dist_cone(const Cone& K, const Vec& v) { return K.distance(v); }
inline Vec project_set(const SimpleSet& U, const Vec& v) { return U.project(v); }

// Gradient of u -> 0.5 * dist_K(G u + g)^2, namely G^T (r - P_K(r)) with r = G u + g.
Vec half_sq_dist_grad(const Mat& G, const Vec& g, const Cone& K, const Vec& u);

}  // namespace conicfo
