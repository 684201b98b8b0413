#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pegfinder/circle.hpp"

namespace pegfinder {

/// A point of P_n = S^1 x simplex: a base point and n nonnegative gaps summing
/// to one. Vertex k (0-based) sits at base + t_0 + ... + t_{k-1}.
class PolygonParam {
 public:
  /// Gaps within 1e-9 of summing to one are renormalised; others, and gaps
  /// below -1e-12, are rejected with InvalidInput. n must be at least 2.
  PolygonParam(CirclePoint base, std::vector<double> gaps);

  /// From lifted vertex coordinates v_0 <= v_1 <= ... <= v_{n-1} <= v_0 + 1.
  static PolygonParam from_lifted(const Eigen::VectorXd& lifted);

  int n() const { return static_cast<int>(gaps_.size()); }
  CirclePoint base() const { return base_; }
  const std::vector<double>& gaps() const { return gaps_; }
  /// min t_i > 0
  bool interior() const;

  /// Lifted vertex coordinates: v_0 = base in [0, 1), v_{k+1} = v_k + t_k.
  Eigen::VectorXd lifted() const;

 private:
  CirclePoint base_;
  std::vector<double> gaps_;
};

/// The substituted coordinates (x*; t) where x* = x + sum_k (n-k)/n t_{k-1},
/// i.e. the mean of the lifted vertices. The generator of Z_n adds 1/n to x*.
struct StarParam {
  CirclePoint star_base;
  std::vector<double> gaps;
};

std::vector<CirclePoint> vertices(const PolygonParam& p);

/// The bracket map [x_1, ..., x_n]. Throws InvalidInput when the points are
/// not in counter-clockwise order (the arcs would sum past one).
PolygonParam from_vertices(std::span<const CirclePoint> xs);

/// Z_n generator: (x; t_0, ..., t_{n-1}) -> (x + t_0; t_1, ..., t_{n-1}, t_0).
PolygonParam cyclic_shift(const PolygonParam& p, int times = 1);

StarParam to_star(const PolygonParam& p);
PolygonParam from_star(const StarParam& s);

/// min_i t_i; zero exactly on the boundary of the interior of P_n.
double boundary_distance(const PolygonParam& p);

/// Orbit representative with the smallest star base in [0, 1).
PolygonParam canonical(const PolygonParam& p);

/// Distance in P_n: max of the circular base distance and the largest gap
/// difference.
double param_distance(const PolygonParam& a, const PolygonParam& b);

/// min over the Z_n orbit of b of param_distance(a, shift^k b).
double orbit_distance(const PolygonParam& a, const PolygonParam& b);

// Lifted-coordinate helpers used by the solvers. A point of P_n is represented
// by any lifted vector; vectors differing by an integer multiple of (1,...,1)
// describe the same point.

/// Z_n generator on lifted coordinates: (v_1, ..., v_{n-1}, v_0 + 1).
Eigen::VectorXd shift_lifted(const Eigen::VectorXd& v, int times = 1);
/// u - w reduced by the nearest integer multiple of (1, ..., 1).
Eigen::VectorXd lifted_difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w);
/// Smallest gap including the closing gap 1 - (v_{n-1} - v_0).
double lifted_boundary_distance(const Eigen::VectorXd& v);

}  // namespace pegfinder
