#include "pegfinder/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Geometry>

#include "pegfinder/errors.hpp"

namespace pegfinder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Pairwise = DistanceField::Pairwise;

std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Accumulates coef * d(v_i, v_j) into row `row` of a residual and its Jacobian.
struct Accumulator {
  const Pairwise& pw;
  Eigen::VectorXd& f;
  Eigen::MatrixXd* jac;

  void add(int row, int i, int j, double coef) const {
    f[row] += coef * pw.value(i, j);
    if (jac) {
      (*jac)(row, i) += coef * pw.partial(i, j);
      (*jac)(row, j) += coef * pw.partial(j, i);
    }
  }
};

// A kernel built from signed sums of pairwise field values:
// row r = sum over terms (coef, i, j).
struct LinearTerm {
  int row;
  int i;
  int j;
  double coef;
};

PolygonSystem::Kernel pairwise_kernel(DistanceField field, int codim, std::vector<LinearTerm> terms) {
  return [field = std::move(field), codim, terms = std::move(terms)](const Eigen::VectorXd& v, Eigen::VectorXd& f,
                                                                      Eigen::MatrixXd* jac) {
    thread_local Pairwise pw;
    field.pairwise(as_span(v), pw);
    f.setZero(codim);
    if (jac) jac->setZero(codim, v.size());
    const Accumulator acc{pw, f, jac};
    for (const LinearTerm& t : terms) acc.add(t.row, t.i, t.j, t.coef);
  };
}

// Difference rows a - b of pairwise values.
std::vector<LinearTerm> difference_rows(const std::vector<std::array<int, 4>>& rows) {
  std::vector<LinearTerm> terms;
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    terms.push_back({r, rows[r][0], rows[r][1], 1.0});
    terms.push_back({r, rows[r][2], rows[r][3], -1.0});
  }
  return terms;
}

// Chord between two samples with its derivatives along both parameters.
struct Chord {
  double length = 0.0;
  double d_first = 0.0;
  double d_second = 0.0;
};

Chord chord(const CurveSample& a, const CurveSample& b) {
  const Eigen::Vector3d diff = a.point - b.point;
  Chord c;
  c.length = diff.norm();
  if (c.length > 0.0) {
    c.d_first = diff.dot(a.velocity) / c.length;
    c.d_second = -diff.dot(b.velocity) / c.length;
  }
  return c;
}

std::array<CurveSample, 4> sample_quad(const ClosedCurve& curve, const Eigen::VectorXd& v) {
  return {curve.sample(v[0]), curve.sample(v[1]), curve.sample(v[2]), curve.sample(v[3])};
}

int edge_ratio_symmetry(const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  for (int s = 1; s < n; ++s) {
    if (n % s != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i) periodic = w[i] == w[(i + s) % n];
    if (periodic) return n / s;
  }
  return 1;
}

Eigen::VectorXd quad_lifted(const PolygonParam& p) {
  if (p.n() != 4) throw InvalidInput("expected a quadrilateral parameter");
  return p.lifted();
}

}  // namespace

// ---------------------------------------------------------------------------
// ResidualSystem

double ResidualSystem::boundary_distance(const Eigen::VectorXd&) const {
  return std::numeric_limits<double>::infinity();
}

Eigen::VectorXd ResidualSystem::difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const { return u - w; }

Eigen::VectorXd ResidualSystem::act(const Eigen::VectorXd& u, int) const { return u; }

PolygonSystem::PolygonSystem(std::string kind, int n, int codim, int symmetry, Kernel kernel)
    : kind_(std::move(kind)), n_(n), codim_(codim), symmetry_(symmetry), kernel_(std::move(kernel)) {}

void PolygonSystem::residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const { kernel_(u, value, nullptr); }

void PolygonSystem::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
  kernel_(u, value, &jacobian);
}

double PolygonSystem::boundary_distance(const Eigen::VectorXd& u) const { return lifted_boundary_distance(u); }

Eigen::VectorXd PolygonSystem::difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const {
  return lifted_difference(u, w);
}

Eigen::VectorXd PolygonSystem::act(const Eigen::VectorXd& u, int times) const {
  const int step = n_ / symmetry_;
  const int k = ((times % symmetry_) + symmetry_) % symmetry_;
  return shift_lifted(u, k * step);
}

ConstrainedSystem::ConstrainedSystem(SystemPtr base, Eigen::MatrixXd rows, Eigen::VectorXd rhs)
    : base_(std::move(base)), rows_(std::move(rows)), rhs_(std::move(rhs)) {
  if (rows_.cols() != base_->domain_dim() || rows_.rows() != rhs_.size())
    throw InvalidInput("constraint shape does not match the system");
}

void ConstrainedSystem::residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const {
  Eigen::VectorXd f;
  base_->residual(u, f);
  value.resize(codomain_dim());
  value.head(f.size()) = f;
  value.tail(rows_.rows()) = rows_ * u - rhs_;
}

void ConstrainedSystem::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
  Eigen::VectorXd f;
  Eigen::MatrixXd j;
  base_->evaluate(u, f, j);
  value.resize(codomain_dim());
  value.head(f.size()) = f;
  value.tail(rows_.rows()) = rows_ * u - rhs_;
  jacobian.resize(codomain_dim(), domain_dim());
  jacobian.topRows(j.rows()) = j;
  jacobian.bottomRows(rows_.rows()) = rows_;
}

SelectedRowsSystem::SelectedRowsSystem(SystemPtr base, std::vector<int> rows)
    : base_(std::move(base)), rows_(std::move(rows)) {
  for (int r : rows_)
    if (r < 0 || r >= base_->codomain_dim()) throw InvalidInput("selected row out of range");
}

void SelectedRowsSystem::residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const {
  Eigen::VectorXd f;
  base_->residual(u, f);
  value.resize(codomain_dim());
  for (int i = 0; i < codomain_dim(); ++i) value[i] = f[rows_[i]];
}

void SelectedRowsSystem::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
  Eigen::VectorXd f;
  Eigen::MatrixXd j;
  base_->evaluate(u, f, j);
  value.resize(codomain_dim());
  jacobian.resize(codomain_dim(), domain_dim());
  for (int i = 0; i < codomain_dim(); ++i) {
    value[i] = f[rows_[i]];
    jacobian.row(i) = j.row(rows_[i]);
  }
}

SystemPtr star_slice(SystemPtr base, double value) {
  const int n = base->domain_dim();
  Eigen::MatrixXd row = Eigen::MatrixXd::Constant(1, n, 1.0 / n);
  return std::make_shared<ConstrainedSystem>(std::move(base), std::move(row), Eigen::VectorXd::Constant(1, value));
}

// ---------------------------------------------------------------------------
// Polygon systems

SystemPtr square_system(const DistanceField& field) {
  auto terms = difference_rows({{0, 1, 1, 2}, {1, 2, 2, 3}, {2, 3, 3, 0}, {0, 2, 1, 3}});
  return std::make_shared<PolygonSystem>("square", 4, 4, 4, pairwise_kernel(field, 4, std::move(terms)));
}

SystemPtr edge_ratio_system(const DistanceField& field, std::vector<double> rho) {
  const int n = static_cast<int>(rho.size()) + 1;
  if (n < 3) throw InvalidInput("edge ratios need n >= 3");
  std::vector<double> w = rho;
  w.push_back(1.0);
  double total = 0.0;
  for (double r : w) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("edge ratios must be positive");
    total += r;
  }
  const double largest = *std::max_element(w.begin(), w.end());
  if (!(largest < total - largest)) throw InvalidInput("edge ratios violate the polygon inequality");
  std::vector<LinearTerm> terms;
  for (int i = 0; i + 1 < n; ++i) {
    terms.push_back({i, i, i + 1, 1.0});
    terms.push_back({i, n - 1, 0, -rho[i]});
  }
  return std::make_shared<PolygonSystem>("edge_ratio", n, n - 1, edge_ratio_symmetry(w),
                                         pairwise_kernel(field, n - 1, std::move(terms)));
}

SystemPtr rhombus_system(const DistanceField& field) {
  auto terms = difference_rows({{0, 1, 1, 2}, {1, 2, 2, 3}, {2, 3, 3, 0}});
  return std::make_shared<PolygonSystem>("rhombus", 4, 3, 4, pairwise_kernel(field, 3, std::move(terms)));
}

SystemPtr rectangle_system(const DistanceField& field) {
  auto terms = difference_rows({{0, 1, 2, 3}, {1, 2, 3, 0}, {0, 2, 1, 3}});
  return std::make_shared<PolygonSystem>("rectangle", 4, 3, 4, pairwise_kernel(field, 3, std::move(terms)));
}

SystemPtr special_quad_system(const DistanceField& field) {
  auto terms = difference_rows({{0, 1, 1, 2}, {1, 2, 2, 3}, {0, 2, 1, 3}});
  return std::make_shared<PolygonSystem>("special_quad", 4, 3, 1, pairwise_kernel(field, 3, std::move(terms)));
}

SystemPtr triangle_system(const DistanceField& field) {
  auto terms = difference_rows({{0, 1, 1, 2}, {1, 2, 2, 0}});
  return std::make_shared<PolygonSystem>("triangle", 3, 2, 3, pairwise_kernel(field, 2, std::move(terms)));
}

SystemPtr two_metric_system(const DistanceField& field1, const DistanceField& field2, int which) {
  const int i = ((which % 3) + 3) % 3;
  auto first = pairwise_kernel(field1, 2, difference_rows({{0, 1, 1, 2}, {1, 2, 2, 0}}));
  auto second = pairwise_kernel(field2, 1, difference_rows({{i, (i + 1) % 3, (i + 1) % 3, (i + 2) % 3}}));
  auto kernel = [first, second](const Eigen::VectorXd& v, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    Eigen::VectorXd f1, f2;
    Eigen::MatrixXd j1, j2;
    first(v, f1, jac ? &j1 : nullptr);
    second(v, f2, jac ? &j2 : nullptr);
    f.resize(3);
    f << f1, f2;
    if (jac) {
      jac->resize(3, 3);
      *jac << j1, j2;
    }
  };
  return std::make_shared<PolygonSystem>("two_metric", 3, 3, 1, kernel);
}

namespace {

// g(x) = (p0 + p2 - p1 - p3, (e01 + e23) - r (e12 + e30)) in rows 0..2.
void parallelogram_rows(const std::array<CurveSample, 4>& s, double r, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
  const Eigen::Vector3d mid = s[0].point + s[2].point - s[1].point - s[3].point;
  f[0] = mid.x();
  f[1] = mid.y();
  const double sign[4] = {1.0, -1.0, 1.0, -1.0};
  if (jac) {
    for (int i = 0; i < 4; ++i) {
      (*jac)(0, i) = sign[i] * s[i].velocity.x();
      (*jac)(1, i) = sign[i] * s[i].velocity.y();
    }
  }
  const double coef[4] = {1.0, -r, 1.0, -r};
  f[2] = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int i = k;
    const int j = (k + 1) % 4;
    const Chord c = chord(s[i], s[j]);
    f[2] += coef[k] * c.length;
    if (jac) {
      (*jac)(2, i) += coef[k] * c.d_first;
      (*jac)(2, j) += coef[k] * c.d_second;
    }
  }
}

}  // namespace

SystemPtr parallelogram_system(const ClosedCurve& curve, double r) {
  if (!(r > 0.0)) throw InvalidInput("aspect ratio must be positive");
  auto kernel = [curve, r](const Eigen::VectorXd& v, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    const auto s = sample_quad(curve, v);
    f.setZero(3);
    if (jac) jac->setZero(3, 4);
    parallelogram_rows(s, r, f, jac);
  };
  return std::make_shared<PolygonSystem>("parallelogram", 4, 3, r == 1.0 ? 4 : 2, kernel);
}

SystemPtr ratio_rectangle_system(const ClosedCurve& curve, double r) {
  if (!(r > 0.0)) throw InvalidInput("aspect ratio must be positive");
  auto kernel = [curve, r](const Eigen::VectorXd& v, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    const auto s = sample_quad(curve, v);
    f.setZero(4);
    if (jac) jac->setZero(4, 4);
    parallelogram_rows(s, r, f, jac);
    const Chord d13 = chord(s[0], s[2]);
    const Chord d24 = chord(s[1], s[3]);
    f[3] = d13.length - d24.length;
    if (jac) {
      (*jac)(3, 0) += d13.d_first;
      (*jac)(3, 2) += d13.d_second;
      (*jac)(3, 1) -= d24.d_first;
      (*jac)(3, 3) -= d24.d_second;
    }
  };
  return std::make_shared<PolygonSystem>("rectangle_ratio", 4, 4, r == 1.0 ? 4 : 2, kernel);
}

SystemPtr planar_rhombus_system(const ClosedCurve& curve) {
  auto kernel = [curve](const Eigen::VectorXd& v, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    const auto s = sample_quad(curve, v);
    f.setZero(4);
    if (jac) jac->setZero(4, 4);
    Chord e[4];
    for (int k = 0; k < 4; ++k) e[k] = chord(s[k], s[(k + 1) % 4]);
    for (int r = 0; r < 3; ++r) {
      f[r] = e[r].length - e[r + 1].length;
      if (jac) {
        (*jac)(r, r) += e[r].d_first;
        (*jac)(r, (r + 1) % 4) += e[r].d_second;
        (*jac)(r, r + 1) -= e[r + 1].d_first;
        (*jac)(r, (r + 2) % 4) -= e[r + 1].d_second;
      }
    }
    // det(p1 - p0, p2 - p0, p3 - p0) / m^3 with m the mean edge.
    const Eigen::Vector3d a = s[1].point - s[0].point;
    const Eigen::Vector3d b = s[2].point - s[0].point;
    const Eigen::Vector3d c = s[3].point - s[0].point;
    const double det = a.dot(b.cross(c));
    const double m = 0.25 * (e[0].length + e[1].length + e[2].length + e[3].length);
    if (m <= 0.0) return;
    const double m3 = m * m * m;
    f[3] = det / m3;
    if (jac) {
      Eigen::Vector3d grad[4];
      grad[1] = b.cross(c);
      grad[2] = c.cross(a);
      grad[3] = a.cross(b);
      grad[0] = -(grad[1] + grad[2] + grad[3]);
      double dm[4] = {0, 0, 0, 0};
      for (int k = 0; k < 4; ++k) {
        dm[k] += 0.25 * e[k].d_first;
        dm[(k + 1) % 4] += 0.25 * e[k].d_second;
      }
      for (int i = 0; i < 4; ++i) {
        const double ddet = grad[i].dot(s[i].velocity);
        (*jac)(3, i) = ddet / m3 - 3.0 * det * dm[i] / (m3 * m);
      }
    }
  };
  return std::make_shared<PolygonSystem>("rhombus3d", 4, 4, 4, kernel);
}

// ---------------------------------------------------------------------------
// Special quadrilaterals on a slice

double GeneratorPath::first(double t) const { return t + wobble_first * std::sin(kTwoPi * frequency * t); }
double GeneratorPath::last(double t) const { return t + size + wobble_last * std::sin(kTwoPi * frequency * t); }
double GeneratorPath::first_derivative(double t) const {
  return 1.0 + wobble_first * kTwoPi * frequency * std::cos(kTwoPi * frequency * t);
}
double GeneratorPath::last_derivative(double t) const {
  return 1.0 + wobble_last * kTwoPi * frequency * std::cos(kTwoPi * frequency * t);
}

SpecialSliceSystem::SpecialSliceSystem(DistanceField field, GeneratorPath path)
    : field_(std::move(field)), path_(path) {
  if (!(path_.size > 0.0 && path_.size < 1.0)) throw InvalidInput("special quadrilateral size must lie in (0, 1)");
}

Eigen::VectorXd SpecialSliceSystem::vertices(const Eigen::VectorXd& u) const {
  Eigen::VectorXd v(4);
  v << path_.first(u[0]), u[1], u[2], path_.last(u[0]);
  return v;
}

void SpecialSliceSystem::residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const {
  const Eigen::VectorXd v = vertices(u);
  value.resize(3);
  value[0] = field_(v[0], v[1]) - field_(v[1], v[2]);
  value[1] = field_(v[1], v[2]) - field_(v[2], v[3]);
  value[2] = field_(v[0], v[2]) - field_(v[1], v[3]);
}

void SpecialSliceSystem::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
  const Eigen::VectorXd v = vertices(u);
  thread_local Pairwise pw;
  field_.pairwise(as_span(v), pw);
  value.setZero(3);
  Eigen::MatrixXd jv = Eigen::MatrixXd::Zero(3, 4);
  const Accumulator acc{pw, value, &jv};
  acc.add(0, 0, 1, 1.0);
  acc.add(0, 1, 2, -1.0);
  acc.add(1, 1, 2, 1.0);
  acc.add(1, 2, 3, -1.0);
  acc.add(2, 0, 2, 1.0);
  acc.add(2, 1, 3, -1.0);
  jacobian.resize(3, 3);
  jacobian.col(0) = jv.col(0) * path_.first_derivative(u[0]) + jv.col(3) * path_.last_derivative(u[0]);
  jacobian.col(1) = jv.col(1);
  jacobian.col(2) = jv.col(2);
}

double SpecialSliceSystem::boundary_distance(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd v = vertices(u);
  return std::min({v[1] - v[0], v[2] - v[1], v[3] - v[2]});
}

Eigen::VectorXd SpecialSliceSystem::difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const {
  return lifted_difference(u, w);
}

// ---------------------------------------------------------------------------
// Octahedra

const std::array<std::array<int, 2>, 12>& octahedron_edges() {
  static const std::array<std::array<int, 2>, 12> edges = [] {
    std::array<std::array<int, 2>, 12> out{};
    int k = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (j != i + 3) out[k++] = {i, j};
    return out;
  }();
  return edges;
}

namespace {

// Orthonormal basis of the complement of (1, ..., 1) in R^12 (Helmert).
const Eigen::Matrix<double, 12, 11>& helmert_basis() {
  static const Eigen::Matrix<double, 12, 11> basis = [] {
    Eigen::Matrix<double, 12, 11> b = Eigen::Matrix<double, 12, 11>::Zero();
    for (int k = 0; k < 11; ++k) {
      const double norm = std::sqrt(static_cast<double>((k + 1) * (k + 2)));
      for (int i = 0; i <= k; ++i) b(i, k) = 1.0 / norm;
      b(k + 1, k) = -(k + 1) / norm;
    }
    return b;
  }();
  return basis;
}

double min_pair_angle(const std::array<Eigen::Vector3d, 6>& dirs) {
  double best = kPi;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      best = std::min(best, std::atan2(dirs[i].cross(dirs[j]).norm(), dirs[i].dot(dirs[j])));
  return best;
}

}  // namespace

OctahedronSystem::OctahedronSystem(EmbeddedSphere sphere, double fat_guard)
    : sphere_(std::move(sphere)), fat_guard_(fat_guard) {}

Eigen::VectorXd OctahedronSystem::edge_lengths(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(12);
  const auto& edges = octahedron_edges();
  for (int e = 0; e < 12; ++e) {
    const Eigen::Vector3d a = sphere_.point(u.segment<3>(3 * edges[e][0]));
    const Eigen::Vector3d b = sphere_.point(u.segment<3>(3 * edges[e][1]));
    out[e] = (a - b).norm();
  }
  return out;
}

void OctahedronSystem::residual(const Eigen::VectorXd& u, Eigen::VectorXd& value) const {
  value.resize(17);
  value.head<11>() = helmert_basis().transpose() * edge_lengths(u);
  for (int i = 0; i < 6; ++i) value[11 + i] = u.segment<3>(3 * i).squaredNorm() - 1.0;
}

void OctahedronSystem::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
  const auto& edges = octahedron_edges();
  const Eigen::Vector3d scale2 = sphere_.scale().cwiseProduct(sphere_.scale());
  Eigen::VectorXd lengths(12);
  Eigen::Matrix<double, 12, 18> dl = Eigen::Matrix<double, 12, 18>::Zero();
  for (int e = 0; e < 12; ++e) {
    const int i = edges[e][0];
    const int j = edges[e][1];
    const Eigen::Vector3d diff = u.segment<3>(3 * i) - u.segment<3>(3 * j);
    const Eigen::Vector3d w = scale2.cwiseProduct(diff);
    lengths[e] = std::sqrt(diff.dot(w));
    if (lengths[e] > 0.0) {
      dl.block<1, 3>(e, 3 * i) = w.transpose() / lengths[e];
      dl.block<1, 3>(e, 3 * j) = -w.transpose() / lengths[e];
    }
  }
  value.resize(17);
  jacobian.setZero(17, 18);
  value.head<11>() = helmert_basis().transpose() * lengths;
  jacobian.topRows<11>() = helmert_basis().transpose() * dl;
  for (int i = 0; i < 6; ++i) {
    const Eigen::Vector3d ui = u.segment<3>(3 * i);
    value[11 + i] = ui.squaredNorm() - 1.0;
    jacobian.block<1, 3>(11 + i, 3 * i) = 2.0 * ui.transpose();
  }
}

double OctahedronSystem::boundary_distance(const Eigen::VectorXd& u) const {
  std::array<Eigen::Vector3d, 6> dirs;
  for (int i = 0; i < 6; ++i) dirs[i] = u.segment<3>(3 * i).normalized();
  return min_pair_angle(dirs) - fat_guard_;
}

// ---------------------------------------------------------------------------
// Pointwise maps

Eigen::Matrix<double, 6, 1> edge_diag_map(const DistanceField& field, const PolygonParam& p) {
  const Eigen::VectorXd v = quad_lifted(p);
  Eigen::Matrix<double, 6, 1> out;
  out << field(v[0], v[1]), field(v[1], v[2]), field(v[2], v[3]), field(v[3], v[0]), field(v[0], v[2]),
      field(v[1], v[3]);
  return out;
}

Eigen::Matrix<double, 6, 1> edge_diag_map(const ClosedCurve& curve, const PolygonParam& p) {
  const Eigen::VectorXd v = quad_lifted(p);
  Eigen::Vector3d x[4];
  for (int i = 0; i < 4; ++i) x[i] = curve.point(v[i]);
  Eigen::Matrix<double, 6, 1> out;
  out << (x[0] - x[1]).norm(), (x[1] - x[2]).norm(), (x[2] - x[3]).norm(), (x[3] - x[0]).norm(),
      (x[0] - x[2]).norm(), (x[1] - x[3]).norm();
  return out;
}

namespace {

Eigen::Vector4d square_from(const Eigen::Matrix<double, 6, 1>& f) {
  return {f[0] - f[1], f[1] - f[2], f[2] - f[3], f[4] - f[5]};
}

Eigen::Vector3d rectangle_from(const Eigen::Matrix<double, 6, 1>& f) { return {f[0] - f[2], f[1] - f[3], f[4] - f[5]}; }

}  // namespace

Eigen::Vector4d square_residual(const DistanceField& field, const PolygonParam& p) {
  return square_from(edge_diag_map(field, p));
}

Eigen::Vector4d square_residual(const ClosedCurve& curve, const PolygonParam& p) {
  return square_from(edge_diag_map(curve, p));
}

Eigen::VectorXd edge_ratio_residual(const ClosedCurve& curve, const PolygonParam& p, const std::vector<double>& rho) {
  if (static_cast<int>(rho.size()) + 1 != p.n()) throw InvalidInput("need n - 1 edge ratios");
  const auto system = edge_ratio_system(field_from_curve(curve), rho);
  return system->residual(p.lifted());
}

SpecialQuadEvaluation special_quad_residual(const DistanceField& field, CirclePoint t, CirclePoint x2, CirclePoint x3,
                                            const GeneratorPath& path, double zero_tol) {
  const double v0 = path.first(t.value());
  const double span = path.last(t.value()) - v0;
  const CirclePoint first(v0);
  const double a1 = x2 - first;
  const double a2 = x3 - x2;
  if (!(span > 0.0 && span < 1.0) || a1 + a2 > span + 1e-12)
    throw InvalidInput("special quadrilateral vertices are not in counter-clockwise order");
  const Eigen::Vector4d v(v0, v0 + a1, v0 + a1 + a2, v0 + span);
  SpecialQuadEvaluation out;
  const double e12 = field(v[0], v[1]);
  const double e23 = field(v[1], v[2]);
  const double e34 = field(v[2], v[3]);
  out.residual << e12 - e23, e23 - e34, field(v[0], v[2]) - field(v[1], v[3]);
  out.a = e12;
  out.b = field(v[3], v[0]);
  out.size = span;
  out.is_special = out.residual.norm() <= zero_tol && out.a >= out.b;
  out.boundary_degenerate = std::abs(out.a - out.b) < 1e-9;
  return out;
}

Eigen::Vector3d parallelogram_residual(const ClosedCurve& curve, const PolygonParam& p, double r) {
  return parallelogram_system(curve, r)->residual(quad_lifted(p));
}

Eigen::Vector3d rectangle_residual(const DistanceField& field, const PolygonParam& p) {
  return rectangle_from(edge_diag_map(field, p));
}

Eigen::Vector3d rectangle_residual(const ClosedCurve& curve, const PolygonParam& p) {
  return rectangle_from(edge_diag_map(curve, p));
}

Eigen::Vector2d triangle_residual(const DistanceField& field, CirclePoint x, CirclePoint y, CirclePoint z) {
  const double dxy = field(x, y);
  const double dyz = field(y, z);
  const double dzx = field(z, x);
  return {dxy - dyz, dyz - dzx};
}

Eigen::Vector3d rhombus3d_residual(const ClosedCurve& curve, const PolygonParam& p) {
  const auto f = edge_diag_map(curve, p);
  return {f[0] - f[1], f[1] - f[2], f[2] - f[3]};
}

double planarity_angle(const std::array<Eigen::Vector3d, 4>& x) {
  const Eigen::Vector3d axis = x[2] - x[0];
  const double len = axis.norm();
  if (len <= 0.0) throw DegenerateConfiguration("diagonal of the quadrilateral has zero length");
  const Eigen::Vector3d a = axis / len;
  Eigen::Vector3d w2 = x[1] - x[0];
  Eigen::Vector3d w4 = x[3] - x[0];
  w2 -= a * a.dot(w2);
  w4 -= a * a.dot(w4);
  const double tiny = 1e-12 * std::max(1.0, len);
  if (w2.norm() <= tiny || w4.norm() <= tiny) throw DegenerateConfiguration("degenerate triangle in the quadrilateral");
  double angle = std::atan2(a.dot(w2.cross(w4)), w2.dot(w4));
  if (angle < 0.0) angle += kTwoPi;
  return angle;
}

double planarity_angle(const ClosedCurve& curve, const PolygonParam& p) {
  const Eigen::VectorXd v = quad_lifted(p);
  return planarity_angle({curve.point(v[0]), curve.point(v[1]), curve.point(v[2]), curve.point(v[3])});
}

double coplanarity(const std::array<Eigen::Vector3d, 4>& x) {
  const Eigen::Vector3d e1 = x[1] - x[0];
  const Eigen::Vector3d e2 = x[2] - x[1];
  const Eigen::Vector3d e3 = x[3] - x[2];
  const double scale = e1.norm() * e2.norm() * e3.norm();
  if (scale <= 0.0) return 0.0;
  return e1.dot(e2.cross(e3)) / scale;
}

Eigen::Matrix<double, 11, 1> octahedron_residual(const EmbeddedSphere& sphere, const std::array<Eigen::Vector3d, 6>& q,
                                                 double fat_guard) {
  std::array<Eigen::Vector3d, 6> dirs;
  Eigen::VectorXd u(18);
  for (int i = 0; i < 6; ++i) {
    if (!(q[i].norm() > 0.0)) throw InvalidInput("octahedron vertices must be nonzero");
    dirs[i] = q[i].normalized();
    u.segment<3>(3 * i) = dirs[i];
  }
  if (min_pair_angle(dirs) <= fat_guard) throw DegenerateConfiguration("octahedron vertices inside the fat diagonal");
  const OctahedronSystem system(sphere, fat_guard);
  return helmert_basis().transpose() * system.edge_lengths(u);
}

double square_closeness(const Eigen::Matrix<double, 6, 1>& f) {
  const double mean = f.head<4>().mean();
  if (!(mean > 0.0)) return std::numeric_limits<double>::infinity();
  const double target[6] = {1.0, 1.0, 1.0, 1.0, std::numbers::sqrt2, std::numbers::sqrt2};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(f[i] / mean - target[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// Events

EventFunction diagonal_swap_event(const DistanceField& field) {
  return [field](const Eigen::VectorXd& v) { return field(v[0], v[2]) - field(v[1], v[3]); };
}

EventFunction square_event(const DistanceField& field) {
  return [field](const Eigen::VectorXd& v) { return field(v[0], v[1]) - field(v[1], v[2]); };
}

EventFunction aspect_ratio_event(const DistanceField& field, double r) {
  return [field, r](const Eigen::VectorXd& v) {
    return field(v[0], v[1]) + field(v[2], v[3]) - r * (field(v[1], v[2]) + field(v[3], v[0]));
  };
}

EventFunction planarity_event(const ClosedCurve& curve) {
  return [curve](const Eigen::VectorXd& v) {
    return coplanarity({curve.point(v[0]), curve.point(v[1]), curve.point(v[2]), curve.point(v[3])});
  };
}

EventFunction isosceles_event(const DistanceField& field, int which) {
  const int i = ((which % 3) + 3) % 3;
  return [field, i](const Eigen::VectorXd& v) {
    return field(v[i], v[(i + 1) % 3]) - field(v[(i + 1) % 3], v[(i + 2) % 3]);
  };
}

EventFunction diagonal_angle_event(const ClosedCurve& curve, double alpha) {
  return [curve, alpha](const Eigen::VectorXd& v) {
    const Eigen::Vector3d d1 = curve.point(v[2]) - curve.point(v[0]);
    const Eigen::Vector3d d2 = curve.point(v[3]) - curve.point(v[1]);
    return std::atan2(d1.cross(d2).norm(), d1.dot(d2)) - alpha;
  };
}

}  // namespace pegfinder
