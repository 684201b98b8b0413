#include "pegfinder/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pegfinder/errors.hpp"
#include "pegfinder/random.hpp"

namespace pegfinder {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSecantStep = 1e-6;

}  // namespace

double Rng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

ClosedCurve ClosedCurve::fourier(int dim, std::vector<std::vector<double>> cos_coeffs,
                                 std::vector<std::vector<double>> sin_coeffs) {
  if (dim != 2 && dim != 3) throw InvalidInput("curve dimension must be 2 or 3");
  if (static_cast<int>(cos_coeffs.size()) != dim || static_cast<int>(sin_coeffs.size()) != dim)
    throw InvalidInput("fourier curve needs one coefficient list per coordinate");
  std::size_t degree = 0;
  for (int j = 0; j < dim; ++j) degree = std::max({degree, cos_coeffs[j].size(), sin_coeffs[j].size()});
  if (degree < 2) throw InvalidInput("fourier curve needs degree at least 1");
  for (int j = 0; j < dim; ++j) {
    cos_coeffs[j].resize(degree, 0.0);
    sin_coeffs[j].resize(degree, 0.0);
    sin_coeffs[j][0] = 0.0;
  }
  ClosedCurve c;
  c.kind_ = Kind::fourier;
  c.dim_ = dim;
  c.degree_ = static_cast<int>(degree) - 1;
  c.cos_ = std::move(cos_coeffs);
  c.sin_ = std::move(sin_coeffs);
  return c;
}

ClosedCurve ClosedCurve::polyline(int dim, std::vector<Eigen::Vector3d> vertices) {
  if (dim != 2 && dim != 3) throw InvalidInput("curve dimension must be 2 or 3");
  if (vertices.size() < 3) throw InvalidInput("polyline needs at least 3 vertices");
  const std::size_t n = vertices.size();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (dim == 2) vertices[i].z() = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double len = (vertices[(i + 1) % n] - vertices[i]).norm();
    if (len == 0.0) throw InvalidInput("polyline has coincident consecutive vertices");
    cumulative[i + 1] = cumulative[i] + len;
  }
  const double total = cumulative[n];
  for (double& s : cumulative) s /= total;
  cumulative[n] = 1.0;
  ClosedCurve c;
  c.kind_ = Kind::polyline;
  c.dim_ = dim;
  c.vertices_ = std::move(vertices);
  c.cumulative_ = std::move(cumulative);
  return c;
}

Eigen::Vector3d ClosedCurve::point(double t) const {
  const double tt = CirclePoint::wrap(t);
  if (kind_ == Kind::polyline) {
    const std::size_t n = vertices_.size();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), tt);
    std::size_t seg = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
    seg = std::clamp<std::size_t>(seg, 1, n) - 1;
    const double len = cumulative_[seg + 1] - cumulative_[seg];
    const double s = (tt - cumulative_[seg]) / len;
    return (1.0 - s) * vertices_[seg] + s * vertices_[(seg + 1) % n];
  }
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  const double c1 = std::cos(kTwoPi * tt);
  const double s1 = std::sin(kTwoPi * tt);
  double ck = 1.0;
  double sk = 0.0;
  for (int k = 0; k <= degree_; ++k) {
    for (int j = 0; j < dim_; ++j) p[j] += cos_[j][k] * ck + sin_[j][k] * sk;
    const double next = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = next;
  }
  return p;
}

CurveSample ClosedCurve::sample(double t) const {
  CurveSample out;
  const double tt = CirclePoint::wrap(t);
  if (kind_ == Kind::polyline) {
    out.point = point(tt);
    out.velocity = (point(tt + kSecantStep) - point(tt - kSecantStep)) / (2.0 * kSecantStep);
    return out;
  }
  const double c1 = std::cos(kTwoPi * tt);
  const double s1 = std::sin(kTwoPi * tt);
  double ck = 1.0;
  double sk = 0.0;
  for (int k = 0; k <= degree_; ++k) {
    const double w = kTwoPi * k;
    for (int j = 0; j < dim_; ++j) {
      out.point[j] += cos_[j][k] * ck + sin_[j][k] * sk;
      out.velocity[j] += w * (sin_[j][k] * ck - cos_[j][k] * sk);
    }
    const double next = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = next;
  }
  return out;
}

double ClosedCurve::chord(CirclePoint s, CirclePoint t) const { return (point(s) - point(t)).norm(); }

std::vector<Eigen::Vector3d> ClosedCurve::polygonize(int count) const {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(point(static_cast<double>(i) / count));
  return pts;
}

double ClosedCurve::signed_area(int resolution) const {
  const std::vector<Eigen::Vector3d> pts = kind_ == Kind::polyline ? vertices_ : polygonize(resolution);
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    area += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * area;
}

ClosedCurve ClosedCurve::transformed(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& offset) const {
  if (kind_ == Kind::polyline) {
    std::vector<Eigen::Vector3d> v;
    v.reserve(vertices_.size());
    bool planar = true;
    for (const auto& p : vertices_) {
      v.push_back(rotation * p + offset);
      planar = planar && v.back().z() == 0.0;
    }
    return polyline(planar ? 2 : 3, std::move(v));
  }
  std::vector<std::vector<double>> c(3, std::vector<double>(degree_ + 1, 0.0));
  std::vector<std::vector<double>> s(3, std::vector<double>(degree_ + 1, 0.0));
  for (int k = 0; k <= degree_; ++k) {
    Eigen::Vector3d ck = Eigen::Vector3d::Zero();
    Eigen::Vector3d sk = Eigen::Vector3d::Zero();
    for (int j = 0; j < dim_; ++j) {
      ck[j] = cos_[j][k];
      sk[j] = sin_[j][k];
    }
    ck = rotation * ck;
    sk = rotation * sk;
    if (k == 0) ck += offset;
    for (int j = 0; j < 3; ++j) {
      c[j][k] = ck[j];
      s[j][k] = sk[j];
    }
  }
  bool planar = true;
  for (int k = 0; k <= degree_; ++k) planar = planar && c[2][k] == 0.0 && s[2][k] == 0.0;
  if (planar) {
    c.pop_back();
    s.pop_back();
  }
  return fourier(planar ? 2 : 3, std::move(c), std::move(s));
}

namespace {

double orient2d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool segments_cross_2d(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2, const Eigen::Vector3d& q1,
                       const Eigen::Vector3d& q2) {
  const double d1 = orient2d(q1, q2, p1);
  const double d2 = orient2d(q1, q2, p2);
  const double d3 = orient2d(p1, p2, q1);
  const double d4 = orient2d(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double segment_distance_3d(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2, const Eigen::Vector3d& q1,
                           const Eigen::Vector3d& q2) {
  const Eigen::Vector3d d1 = p2 - p1;
  const Eigen::Vector3d d2 = q2 - q1;
  const Eigen::Vector3d r = p1 - q1;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  const double c = d1.dot(r);
  const double b = d1.dot(d2);
  const double denom = a * e - b * b;
  double s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return ((p1 + s * d1) - (q1 + t * d2)).norm();
}

}  // namespace

SelfIntersectionReport self_intersections(const ClosedCurve& curve, int resolution) {
  const auto pts = curve.polygonize(resolution);
  const int n = static_cast<int>(pts.size());
  SelfIntersectionReport report;
  report.resolution = resolution;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto& p1 = pts[i];
      const auto& p2 = pts[(i + 1) % n];
      const auto& q1 = pts[j];
      const auto& q2 = pts[(j + 1) % n];
      const bool hit = curve.dim() == 2 ? segments_cross_2d(p1, p2, q1, q2)
                                        : segment_distance_3d(p1, p2, q1, q2) < 1e-9;
      if (hit) ++report.crossings;
    }
  }
  return report;
}

EmbeddedSphere::EmbeddedSphere(Eigen::Vector3d scale) : scale_(std::move(scale)) {
  if (!(scale_.minCoeff() > 0.0)) throw InvalidInput("sphere scales must be positive");
}

// ---------------------------------------------------------------------------
// DistanceField

DistanceField DistanceField::chordal(ClosedCurve curve) {
  DistanceField f;
  f.kind_ = Kind::chordal;
  f.curve_ = std::make_shared<const ClosedCurve>(std::move(curve));
  return f;
}

DistanceField DistanceField::synthetic(Kernel kernel, std::vector<FieldTerm> terms) {
  DistanceField f;
  f.kind_ = Kind::synthetic;
  f.kernel_ = kernel;
  f.terms_ = std::move(terms);
  const FieldDiagnostics diag = diagnose_field(f, 200);
  if (!(diag.min_off_diagonal > 0.0)) throw InvalidInput("synthetic field is not positive off the diagonal");
  return f;
}

const ClosedCurve& DistanceField::curve() const {
  if (kind_ != Kind::chordal) throw InvalidInput("field is not chordal");
  return *curve_;
}

DistanceField field_from_curve(const ClosedCurve& curve) { return DistanceField::chordal(curve); }

double DistanceField::raw(double x, double y, double* dx, double* dy) const {
  const double u = x - y;
  double kernel = 0.0;
  double kernel_d = 0.0;
  const double su = std::sin(std::numbers::pi * u);
  const double cu = std::cos(std::numbers::pi * u);
  if (kernel_ == Kernel::abs_sin) {
    kernel = std::abs(su);
    kernel_d = su > 0 ? std::numbers::pi * cu : (su < 0 ? -std::numbers::pi * cu : 0.0);
  } else {
    kernel = su * su;
    kernel_d = 2.0 * std::numbers::pi * su * cu;
  }
  double factor = 1.0;
  double factor_dx = 0.0;
  double factor_dy = 0.0;
  for (const FieldTerm& term : terms_) {
    const bool sum = term.argument == FieldTerm::Argument::sum;
    const double arg = sum ? x + y : x - y;
    const double w = kTwoPi * term.k;
    const double c = std::cos(w * arg);
    const double s = std::sin(w * arg);
    factor += term.cos * c + term.sin * s;
    const double d = w * (term.sin * c - term.cos * s);
    factor_dx += d;
    factor_dy += sum ? d : -d;
  }
  if (dx) *dx = kernel_d * factor + kernel * factor_dx;
  if (dy) *dy = -kernel_d * factor + kernel * factor_dy;
  return kernel * factor;
}

double DistanceField::operator()(double x, double y) const {
  if (kind_ == Kind::chordal) return (curve_->point(x) - curve_->point(y)).norm();
  return 0.5 * (raw(x, y, nullptr, nullptr) + raw(y, x, nullptr, nullptr));
}

double DistanceField::partial(double x, double y) const {
  if (kind_ == Kind::chordal) {
    const CurveSample sx = curve_->sample(x);
    const Eigen::Vector3d diff = sx.point - curve_->point(y);
    const double d = diff.norm();
    return d > 0.0 ? diff.dot(sx.velocity) / d : 0.0;
  }
  double g1 = 0.0;
  double g2 = 0.0;
  raw(x, y, &g1, nullptr);
  raw(y, x, nullptr, &g2);
  return 0.5 * (g1 + g2);
}

DistanceField::Pairwise DistanceField::pairwise(std::span<const double> params) const {
  Pairwise out;
  pairwise(params, out);
  return out;
}

void DistanceField::pairwise(std::span<const double> params, Pairwise& out) const {
  const int n = static_cast<int>(params.size());
  out.value.setZero(n, n);
  out.partial.setZero(n, n);
  if (kind_ == Kind::chordal) {
    CurveSample samples[16];
    std::vector<CurveSample> heap;
    CurveSample* s = samples;
    if (n > 16) {
      heap.resize(static_cast<std::size_t>(n));
      s = heap.data();
    }
    for (int i = 0; i < n; ++i) s[i] = curve_->sample(params[i]);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Eigen::Vector3d diff = s[i].point - s[j].point;
        const double d = diff.norm();
        out.value(i, j) = out.value(j, i) = d;
        if (d > 0.0) {
          out.partial(i, j) = diff.dot(s[i].velocity) / d;
          out.partial(j, i) = -diff.dot(s[j].velocity) / d;
        }
      }
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
      const double gij = raw(params[i], params[j], &a1, &a2);
      const double gji = raw(params[j], params[i], &b1, &b2);
      out.value(i, j) = out.value(j, i) = 0.5 * (gij + gji);
      out.partial(i, j) = 0.5 * (a1 + b2);
      out.partial(j, i) = 0.5 * (a2 + b1);
    }
  }
}

FieldDiagnostics diagnose_field(const DistanceField& field, int resolution) {
  FieldDiagnostics diag;
  diag.min_off_diagonal = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    const double x = static_cast<double>(i) / resolution;
    diag.max_diagonal = std::max(diag.max_diagonal, std::abs(field(x, x)));
    for (int j = i + 1; j < resolution; ++j) {
      const double y = static_cast<double>(j) / resolution;
      const double dxy = field(x, y);
      const double dyx = field(y, x);
      diag.max_asymmetry = std::max(diag.max_asymmetry, std::abs(dxy - dyx));
      diag.min_off_diagonal = std::min(diag.min_off_diagonal, std::min(dxy, dyx));
    }
  }
  return diag;
}

}  // namespace pegfinder
