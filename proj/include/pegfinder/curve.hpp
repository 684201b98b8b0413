#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pegfinder/circle.hpp"

namespace pegfinder {

/// Position and parameter derivative of a curve at one parameter value.
struct CurveSample {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

/// A closed curve S^1 -> R^d, d in {2, 3}. Planar curves keep z = 0.
///
/// Two representations exist: a finite Fourier series per coordinate (smooth)
/// and a closed polyline evaluated at constant speed. Injectivity is not
/// enforced; see `self_intersections`.
class ClosedCurve {
 public:
  enum class Kind { fourier, polyline };

  /// cos_coeffs[j][k] multiplies cos(2 pi k t) in coordinate j; likewise sin.
  static ClosedCurve fourier(int dim, std::vector<std::vector<double>> cos_coeffs,
                             std::vector<std::vector<double>> sin_coeffs);
  static ClosedCurve polyline(int dim, std::vector<Eigen::Vector3d> vertices);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool smooth() const { return kind_ == Kind::fourier; }

  Eigen::Vector3d point(double t) const;
  Eigen::Vector3d point(CirclePoint t) const { return point(t.value()); }
  /// Point and d/dt. Polylines use a central secant with step 1e-6.
  CurveSample sample(double t) const;

  /// Euclidean distance between the curve points at s and t.
  double chord(CirclePoint s, CirclePoint t) const;

  /// Signed area enclosed by the projection to the xy-plane (positive when
  /// traversed counter-clockwise).
  double signed_area(int resolution = 2048) const;

  std::vector<Eigen::Vector3d> polygonize(int count) const;

  int fourier_degree() const { return degree_; }
  const std::vector<std::vector<double>>& cos_coeffs() const { return cos_; }
  const std::vector<std::vector<double>>& sin_coeffs() const { return sin_; }
  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }

  /// Returns a copy with all coordinates mapped by p -> rotation * p + offset.
  ClosedCurve transformed(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& offset) const;

 private:
  ClosedCurve() = default;

  Kind kind_ = Kind::fourier;
  int dim_ = 2;
  int degree_ = 0;
  std::vector<std::vector<double>> cos_;
  std::vector<std::vector<double>> sin_;
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<double> cumulative_;  // normalised arc length at each vertex
};

/// Result of the pairwise segment test on a polygonization.
struct SelfIntersectionReport {
  int resolution = 0;
  int crossings = 0;
  bool embedded() const { return crossings == 0; }
};

/// Pairwise segment test on a `resolution`-point polygonization. Diagnostic
/// only; planar curves are tested in the plane, space curves by closest
/// approach below 1e-9.
SelfIntersectionReport self_intersections(const ClosedCurve& curve, int resolution = 512);

/// The unit sphere scaled coordinatewise by (sx, sy, sz).
class EmbeddedSphere {
 public:
  explicit EmbeddedSphere(Eigen::Vector3d scale);
  const Eigen::Vector3d& scale() const { return scale_; }
  /// Image of a unit vector.
  Eigen::Vector3d point(const Eigen::Vector3d& unit) const { return scale_.cwiseProduct(unit); }
  bool round() const { return scale_.x() == scale_.y() && scale_.y() == scale_.z(); }

 private:
  Eigen::Vector3d scale_;
};

/// One term c*cos(2 pi k a) + s*sin(2 pi k a) of a synthetic field, where a is
/// either x - y or x + y.
struct FieldTerm {
  enum class Argument { difference, sum };
  Argument argument = Argument::sum;
  int k = 1;
  double cos = 0.0;
  double sin = 0.0;
};

/// A continuous, symmetric, positive definite function d on S^1 x S^1.
///
/// Chordal fields pull back the Euclidean metric along a curve. Synthetic
/// fields are kernel(x - y) * (1 + sum of terms), symmetrised as
/// (g(x,y) + g(y,x)) / 2; the constructor rejects fields whose minimum
/// off-diagonal value on a 200 x 200 grid is not positive.
class DistanceField {
 public:
  enum class Kind { chordal, synthetic };
  enum class Kernel { abs_sin, sin_squared };

  static DistanceField chordal(ClosedCurve curve);
  static DistanceField synthetic(Kernel kernel, std::vector<FieldTerm> terms);

  Kind kind() const { return kind_; }
  const ClosedCurve& curve() const;  // chordal only
  Kernel kernel() const { return kernel_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }

  double operator()(double x, double y) const;
  double operator()(CirclePoint x, CirclePoint y) const { return (*this)(x.value(), y.value()); }
  /// Partial derivative with respect to the first argument.
  double partial(double x, double y) const;

  /// All pairwise values among `params` (matrix `value`) and first-argument
  /// partials (`partial(i, j)` = d/dx_i d(x_i, x_j)).
  struct Pairwise {
    Eigen::MatrixXd value;
    Eigen::MatrixXd partial;
  };
  Pairwise pairwise(std::span<const double> params) const;
  /// Same, writing into caller-owned storage (resized as needed).
  void pairwise(std::span<const double> params, Pairwise& out) const;

 private:
  DistanceField() = default;
  double raw(double x, double y, double* dx, double* dy) const;

  Kind kind_ = Kind::chordal;
  std::shared_ptr<const ClosedCurve> curve_;
  Kernel kernel_ = Kernel::abs_sin;
  std::vector<FieldTerm> terms_;
};

DistanceField field_from_curve(const ClosedCurve& curve);

/// Grid statistics for the field hypotheses: maximal asymmetry, maximal
/// |d(x,x)| and minimal off-diagonal value over a resolution x resolution grid.
struct FieldDiagnostics {
  double max_asymmetry = 0.0;
  double max_diagonal = 0.0;
  double min_off_diagonal = 0.0;
};
FieldDiagnostics diagnose_field(const DistanceField& field, int resolution = 200);

/// Everything the corpus can produce.
using CorpusItem = std::variant<ClosedCurve, EmbeddedSphere, DistanceField>;

/// Parameters understood by `corpus`. Unused fields are ignored by a given name.
struct CorpusParams {
  double a = 2.0;          // ellipse semi-axis along x
  double b = 1.0;          // ellipse semi-axis along y
  double radius = 1.0;     // circle, tilted-circle
  int degree = 4;          // fourier-random: radial harmonics 1..degree
  double amp = 0.3;        // fourier-random: bound on |r - 1|
  double lambda_x = 1.0;   // scaled-sphere
  double lambda_y = 1.0;
  double lambda_z = 0.5;
  std::uint64_t seed = 0;  // fourier-random, synthetic-field
};

struct CorpusEntry {
  std::string name;
  std::string produces;  // "curve", "sphere" or "field"
  std::string description;
};

const std::vector<CorpusEntry>& corpus_inventory();

/// Deterministic given (name, params). Throws InvalidInput for unknown names.
CorpusItem corpus(const std::string& name, const CorpusParams& params = {});

/// Convenience wrappers that also check the kind of the corpus item.
ClosedCurve corpus_curve(const std::string& name, const CorpusParams& params = {});
DistanceField corpus_field(const std::string& name, const CorpusParams& params = {});

}  // namespace pegfinder
