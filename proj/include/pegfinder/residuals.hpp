#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pegfinder/curve.hpp"
#include "pegfinder/polygon.hpp"

namespace pegfinder {

/// A residual map F: R^N -> R^M whose zero set is a family of inscribed
/// polygons (or octahedra). N - M is 0 for isolated solutions and 1 for
/// one-dimensional families.
class ResidualSystem {
 public:
  virtual ~ResidualSystem() = default;

  virtual std::string kind() const = 0;
  virtual int domain_dim() const = 0;
  virtual int codomain_dim() const = 0;
  /// Order of the cyclic group whose generator `act` maps the zero set to
  /// itself; 1 when there is none.
  virtual int symmetry_order() const { return 1; }

  virtual void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const = 0;
  virtual void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const = 0;

  /// Distance to the excluded boundary of the domain (+inf if none).
  virtual double boundary_distance(const Eigen::VectorXd& u) const;
  /// u - w modulo the identifications of the coordinates.
  virtual Eigen::VectorXd difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const;
  /// Generator of the symmetry applied `times` times.
  virtual Eigen::VectorXd act(const Eigen::VectorXd& u, int times = 1) const;
  /// True when coordinates are lifted polygon vertices on S^1.
  virtual bool polygonal() const { return false; }

  Eigen::VectorXd residual(const Eigen::VectorXd& u) const {
    Eigen::VectorXd f;
    residual(u, f);
    return f;
  }
};

using SystemPtr = std::shared_ptr<const ResidualSystem>;

/// A system on P_n written in lifted vertex coordinates v (see polygon.hpp).
/// The kernel fills the residual and, when `jacobian` is non-null, its
/// derivative with respect to v.
class PolygonSystem : public ResidualSystem {
 public:
  using Kernel = std::function<void(const Eigen::VectorXd& v, Eigen::VectorXd& value, Eigen::MatrixXd* jacobian)>;

  PolygonSystem(std::string kind, int n, int codim, int symmetry, Kernel kernel);

  std::string kind() const override { return kind_; }
  int domain_dim() const override { return n_; }
  int codomain_dim() const override { return codim_; }
  int symmetry_order() const override { return symmetry_; }
  void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const override;
  void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;
  double boundary_distance(const Eigen::VectorXd& u) const override;
  Eigen::VectorXd difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override;
  /// shift^(n / symmetry_order), i.e. the generator of the subgroup Z_symmetry.
  Eigen::VectorXd act(const Eigen::VectorXd& u, int times = 1) const override;
  bool polygonal() const override { return true; }

  using ResidualSystem::residual;

 private:
  std::string kind_;
  int n_;
  int codim_;
  int symmetry_;
  Kernel kernel_;
};

/// Adds linear equations a_i . u = b_i to a system (slices, gauge pins).
class ConstrainedSystem : public ResidualSystem {
 public:
  ConstrainedSystem(SystemPtr base, Eigen::MatrixXd rows, Eigen::VectorXd rhs);

  std::string kind() const override { return base_->kind(); }
  int domain_dim() const override { return base_->domain_dim(); }
  int codomain_dim() const override { return base_->codomain_dim() + static_cast<int>(rows_.rows()); }
  void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const override;
  void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;
  double boundary_distance(const Eigen::VectorXd& u) const override { return base_->boundary_distance(u); }
  Eigen::VectorXd difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override {
    return base_->difference(u, w);
  }
  bool polygonal() const override { return base_->polygonal(); }
  const ResidualSystem& base() const { return *base_; }

  using ResidualSystem::residual;

 private:
  SystemPtr base_;
  Eigen::MatrixXd rows_;
  Eigen::VectorXd rhs_;
};

/// The equations of `base` with the given row indices.
class SelectedRowsSystem : public ResidualSystem {
 public:
  SelectedRowsSystem(SystemPtr base, std::vector<int> rows);

  std::string kind() const override { return base_->kind(); }
  int domain_dim() const override { return base_->domain_dim(); }
  int codomain_dim() const override { return static_cast<int>(rows_.size()); }
  int symmetry_order() const override { return base_->symmetry_order(); }
  void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const override;
  void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;
  double boundary_distance(const Eigen::VectorXd& u) const override { return base_->boundary_distance(u); }
  Eigen::VectorXd difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override {
    return base_->difference(u, w);
  }
  Eigen::VectorXd act(const Eigen::VectorXd& u, int times = 1) const override { return base_->act(u, times); }
  bool polygonal() const override { return base_->polygonal(); }

  using ResidualSystem::residual;

 private:
  SystemPtr base_;
  std::vector<int> rows_;
};

/// The slice of P_n where the star base (mean lifted vertex) equals `value`.
SystemPtr star_slice(SystemPtr base, double value);

// ---------------------------------------------------------------------------
// Polygon systems. Field-based systems only use pairwise distances and so
// accept any DistanceField (chordal or synthetic).

/// (e12-e23, e23-e34, e34-e41, d13-d24); Z_4-equivariant.
SystemPtr square_system(const DistanceField& field);
/// (e_i - rho_i e_n), i = 1..n-1. Throws InvalidInput when rho violates the
/// polygon inequality. Symmetry: largest cyclic subgroup preserving
/// (rho_1, ..., rho_{n-1}, 1).
SystemPtr edge_ratio_system(const DistanceField& field, std::vector<double> rho);
/// (e12-e23, e23-e34, e34-e41): equal-edge quadrilaterals; Z_4.
SystemPtr rhombus_system(const DistanceField& field);
/// (e12-e34, e23-e41, d13-d24): rectangles; Z_4.
SystemPtr rectangle_system(const DistanceField& field);
/// (e12-e23, e23-e34, d13-d24) on all of P_4: the special-quadrilateral
/// candidates of every size.
SystemPtr special_quad_system(const DistanceField& field);
/// (d(x,y)-d(y,z), d(y,z)-d(z,x)) on P_3; Z_3.
SystemPtr triangle_system(const DistanceField& field);
/// d1-equilateral equations plus one d2-isosceles condition
/// d2(x_i, x_{i+1}) - d2(x_{i+1}, x_{i+2}), i = which.
SystemPtr two_metric_system(const DistanceField& field1, const DistanceField& field2, int which);
/// The parallelogram test map g with aspect ratio r; Z_2 (Z_4 when r = 1).
SystemPtr parallelogram_system(const ClosedCurve& curve, double r);
/// g together with d13 - d24: rectangles of aspect ratio r (isolated).
SystemPtr ratio_rectangle_system(const ClosedCurve& curve, double r);
/// Equal edges plus vanishing normalised triple product: planar rhombi.
SystemPtr planar_rhombus_system(const ClosedCurve& curve);

/// Generator path y(t) = (y_1(t), y_4(t)) = (t + w1 sin 2 pi f t,
/// t + size + w4 sin 2 pi f t). The default (w1 = w4 = 0) is (id, id + size).
struct GeneratorPath {
  double size = 0.1;
  double wobble_first = 0.0;
  double wobble_last = 0.0;
  int frequency = 1;

  double first(double t) const;
  double last(double t) const;
  double first_derivative(double t) const;
  double last_derivative(double t) const;
};

/// Special-quadrilateral equations on the slice P_4(y): coordinates
/// (t, x2, x3) with x1 = y_1(t), x4 = y_4(t).
class SpecialSliceSystem : public ResidualSystem {
 public:
  SpecialSliceSystem(DistanceField field, GeneratorPath path);

  std::string kind() const override { return "special_quad"; }
  int domain_dim() const override { return 3; }
  int codomain_dim() const override { return 3; }
  void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const override;
  void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;
  double boundary_distance(const Eigen::VectorXd& u) const override;
  Eigen::VectorXd difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override;

  /// Lifted vertices (y_1(t), x2, x3, y_4(t)).
  Eigen::VectorXd vertices(const Eigen::VectorXd& u) const;
  const GeneratorPath& path() const { return path_; }
  const DistanceField& field() const { return field_; }

  using ResidualSystem::residual;

 private:
  DistanceField field_;
  GeneratorPath path_;
};

/// Index pairs of the 12 octahedron edges on labels 0..5, where labels i and
/// i + 3 are opposite vertices (+e_k and -e_k of the regular octahedron).
const std::array<std::array<int, 2>, 12>& octahedron_edges();

/// Octahedra on an embedded sphere: coordinates are six unit vectors stacked
/// in R^18. The residual is the projection of the 12 edge lengths to the
/// orthogonal complement of (1, ..., 1), in a fixed orthonormal basis, followed
/// by the six constraints |u_i|^2 - 1.
class OctahedronSystem : public ResidualSystem {
 public:
  explicit OctahedronSystem(EmbeddedSphere sphere, double fat_guard = 0.05);

  std::string kind() const override { return "octahedron"; }
  int domain_dim() const override { return 18; }
  int codomain_dim() const override { return 17; }
  void residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const override;
  void evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;
  /// Minimal pairwise angle between the six directions minus the guard.
  double boundary_distance(const Eigen::VectorXd& u) const override;

  const EmbeddedSphere& sphere() const { return sphere_; }
  double fat_guard() const { return fat_guard_; }
  /// The 12 edge lengths.
  Eigen::VectorXd edge_lengths(const Eigen::VectorXd& u) const;

  using ResidualSystem::residual;

 private:
  EmbeddedSphere sphere_;
  double fat_guard_;
};

// ---------------------------------------------------------------------------
// Pointwise test maps on PolygonParam.

/// (e12, e23, e34, e41, d13, d24).
Eigen::Matrix<double, 6, 1> edge_diag_map(const DistanceField& field, const PolygonParam& p);
Eigen::Matrix<double, 6, 1> edge_diag_map(const ClosedCurve& curve, const PolygonParam& p);

Eigen::Vector4d square_residual(const DistanceField& field, const PolygonParam& p);
Eigen::Vector4d square_residual(const ClosedCurve& curve, const PolygonParam& p);

Eigen::VectorXd edge_ratio_residual(const ClosedCurve& curve, const PolygonParam& p, const std::vector<double>& rho);

/// Result of evaluating the special-quadrilateral slice map at (t, x2, x3).
struct SpecialQuadEvaluation {
  Eigen::Vector3d residual;
  double a = 0.0;     // e12
  double b = 0.0;     // e41
  double size = 0.0;  // x4 - x1
  bool is_special = false;
  bool boundary_degenerate = false;  // |a - b| < 1e-9
};

/// Throws InvalidInput unless (y_1(t), x2, x3, y_4(t)) is counter-clockwise.
/// `zero_tol` decides when the residual counts as zero for the classifier.
SpecialQuadEvaluation special_quad_residual(const DistanceField& field, CirclePoint t, CirclePoint x2, CirclePoint x3,
                                            const GeneratorPath& path, double zero_tol = 1e-8);

Eigen::Vector3d parallelogram_residual(const ClosedCurve& curve, const PolygonParam& p, double r);
Eigen::Vector3d rectangle_residual(const DistanceField& field, const PolygonParam& p);
Eigen::Vector3d rectangle_residual(const ClosedCurve& curve, const PolygonParam& p);
Eigen::Vector2d triangle_residual(const DistanceField& field, CirclePoint x, CirclePoint y, CirclePoint z);
Eigen::Vector3d rhombus3d_residual(const ClosedCurve& curve, const PolygonParam& p);

/// Dihedral angle along the diagonal x1x3 between triangles (x1 x2 x3) and
/// (x1 x3 x4), in (0, 2 pi); pi for a planar convex quadrilateral. Throws
/// DegenerateConfiguration when a triangle is degenerate.
double planarity_angle(const ClosedCurve& curve, const PolygonParam& p);
double planarity_angle(const std::array<Eigen::Vector3d, 4>& points);

/// det(e1, e2, e3) / (|e1| |e2| |e3|) for the edge vectors of the quadrilateral.
double coplanarity(const std::array<Eigen::Vector3d, 4>& points);

/// Octahedron residual in R^11 for six unit vectors. Throws
/// DegenerateConfiguration when two points are closer than the fat guard.
Eigen::Matrix<double, 11, 1> octahedron_residual(const EmbeddedSphere& sphere, const std::array<Eigen::Vector3d, 6>& q,
                                                 double fat_guard = 0.05);

/// max over the six edge/diagonal measures of |f_i / mean edge - target_i|,
/// with target (1,1,1,1,sqrt2,sqrt2): the deviation from a square.
double square_closeness(const Eigen::Matrix<double, 6, 1>& f);

// ---------------------------------------------------------------------------
// Event functions on lifted quadrilateral coordinates.

using EventFunction = std::function<double(const Eigen::VectorXd&)>;

/// d13 - d24: changes sign where the short diagonal becomes the long one.
EventFunction diagonal_swap_event(const DistanceField& field);
/// e12 - e23: changes sign where a rectangle passes through a square.
EventFunction square_event(const DistanceField& field);
/// (e12 + e34) - r (e23 + e41).
EventFunction aspect_ratio_event(const DistanceField& field, double r);
/// Normalised triple product of the edge vectors.
EventFunction planarity_event(const ClosedCurve& curve);
/// d2(x_i, x_{i+1}) - d2(x_{i+1}, x_{i+2}) on triangles, i = which.
EventFunction isosceles_event(const DistanceField& field, int which);
/// Angle between the diagonals minus alpha (planar curves).
EventFunction diagonal_angle_event(const ClosedCurve& curve, double alpha);

}  // namespace pegfinder
