#include <cmath>
#include <numbers>

#include "pegfinder/curve.hpp"
#include "pegfinder/errors.hpp"
#include "pegfinder/random.hpp"

namespace pegfinder {

namespace {

constexpr double kPi = std::numbers::pi;

ClosedCurve ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("ellipse semi-axes must be positive");
  return ClosedCurve::fourier(2, {{0.0, a}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, b}});
}

// r(theta) = 1 + sum_k alpha_k cos(k theta) + beta_k sin(k theta), expanded
// into coordinate Fourier coefficients by product-to-sum.
ClosedCurve radial_fourier(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int degree = static_cast<int>(alpha.size());
  const std::size_t len = static_cast<std::size_t>(degree) + 2;
  std::vector<std::vector<double>> c(2, std::vector<double>(len, 0.0));
  std::vector<std::vector<double>> s(2, std::vector<double>(len, 0.0));
  c[0][1] = 1.0;
  s[1][1] = 1.0;
  for (int k = 1; k <= degree; ++k) {
    const double a = alpha[k - 1];
    const double b = beta[k - 1];
    // x: cos(k)cos(1) = (cos(k+1) + cos(k-1))/2, sin(k)cos(1) = (sin(k+1) + sin(k-1))/2
    c[0][k + 1] += 0.5 * a;
    c[0][k - 1] += 0.5 * a;
    s[0][k + 1] += 0.5 * b;
    s[0][k - 1] += 0.5 * b;
    // y: cos(k)sin(1) = (sin(k+1) - sin(k-1))/2, sin(k)sin(1) = (cos(k-1) - cos(k+1))/2
    s[1][k + 1] += 0.5 * a;
    s[1][k - 1] -= 0.5 * a;
    c[1][k - 1] += 0.5 * b;
    c[1][k + 1] -= 0.5 * b;
  }
  return ClosedCurve::fourier(2, std::move(c), std::move(s));
}

ClosedCurve fourier_random(int degree, double amp, std::uint64_t seed) {
  if (degree < 1) throw InvalidInput("fourier-random degree must be at least 1");
  if (!(amp >= 0.0 && amp < 1.0)) throw InvalidInput("fourier-random amplitude must lie in [0, 1)");
  Rng rng(seed);
  std::vector<double> alpha(static_cast<std::size_t>(degree));
  std::vector<double> beta(static_cast<std::size_t>(degree));
  double total = 0.0;
  for (int k = 0; k < degree; ++k) {
    alpha[k] = rng.uniform(-1.0, 1.0);
    beta[k] = rng.uniform(-1.0, 1.0);
    total += std::hypot(alpha[k], beta[k]);
  }
  const double scale = total > 0.0 ? amp / total : 0.0;
  for (int k = 0; k < degree; ++k) {
    alpha[k] *= scale;
    beta[k] *= scale;
  }
  return radial_fourier(alpha, beta);
}

// A band wound along an Archimedean spiral. The curve runs inward along one
// wall, turns at a sharp tip in the middle, and runs back out along the other
// wall; a semicircular cap closes it at the outer end.
ClosedCurve spiral() {
  constexpr double r0 = 0.35;
  constexpr double pitch = 0.16;
  constexpr double half_width = 0.17;
  constexpr double turns = 1.5;
  constexpr double taper = 0.5 * kPi;
  constexpr int per_wall = 1200;
  const double theta_max = 2.0 * kPi * turns;

  auto center = [&](double th) { return r0 + pitch * th; };
  auto width = [&](double th) { return half_width * std::min(1.0, th / taper); };
  auto at = [](double r, double th) { return Eigen::Vector3d(r * std::cos(th), r * std::sin(th), 0.0); };

  std::vector<Eigen::Vector3d> v;
  for (int i = 0; i < per_wall; ++i) {
    const double th = theta_max * (1.0 - static_cast<double>(i) / per_wall);
    v.push_back(at(center(th) + width(th), th));
  }
  for (int i = 0; i < per_wall; ++i) {
    const double th = theta_max * static_cast<double>(i) / per_wall;
    v.push_back(at(center(th) - width(th), th));
  }
  const Eigen::Vector3d inner = at(center(theta_max) - half_width, theta_max);
  const Eigen::Vector3d outer = at(center(theta_max) + half_width, theta_max);
  const Eigen::Vector3d mid = 0.5 * (inner + outer);
  const Eigen::Vector3d radial = (outer - inner) / 2.0;
  const Eigen::Vector3d forward(-radial.y(), radial.x(), 0.0);
  constexpr int cap = 200;
  for (int i = 0; i <= cap; ++i) {
    const double phi = kPi * static_cast<double>(i) / cap;
    v.push_back(mid - std::cos(phi) * radial + std::sin(phi) * forward);
  }
  v.pop_back();  // coincides with the first vertex
  return ClosedCurve::polyline(2, std::move(v));
}

// Cardioid: smooth parametrisation, geometric cusp at the origin.
ClosedCurve cardioid() {
  return ClosedCurve::fourier(2, {{-0.5, 1.0, -0.5}, {0.0, 0.0, 0.0}}, {{0.0, 0.0, 0.0}, {0.0, 1.0, -0.5}});
}

ClosedCurve trefoil() {
  // (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)
  return ClosedCurve::fourier(3, {{0, 0, 0, 0}, {0, 1, -2, 0}, {0, 0, 0, 0}},
                              {{0, 1, 2, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}});
}

ClosedCurve tilted_circle(double radius) {
  const double c = std::cos(kPi / 6.0);
  const double s = std::sin(kPi / 6.0);
  return ClosedCurve::fourier(3, {{0, radius}, {0, 0}, {0, 0}}, {{0, 0}, {0, radius * c}, {0, radius * s}});
}

DistanceField random_synthetic_field(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FieldTerm> terms;
  double total = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (auto arg : {FieldTerm::Argument::sum, FieldTerm::Argument::difference}) {
      FieldTerm t;
      t.argument = arg;
      t.k = k;
      t.cos = rng.uniform(-1.0, 1.0) / k;
      t.sin = rng.uniform(-1.0, 1.0) / k;
      total += std::abs(t.cos) + std::abs(t.sin);
      terms.push_back(t);
    }
  }
  const double strength = rng.uniform(0.2, 0.7);
  for (FieldTerm& t : terms) {
    t.cos *= strength / total;
    t.sin *= strength / total;
  }
  return DistanceField::synthetic(DistanceField::Kernel::abs_sin, std::move(terms));
}

}  // namespace

const std::vector<CorpusEntry>& corpus_inventory() {
  static const std::vector<CorpusEntry> entries = {
      {"circle", "curve", "circle of the given radius, angle parametrisation"},
      {"ellipse", "curve", "ellipse (a cos 2pi t, b sin 2pi t)"},
      {"fourier-random", "curve", "star-shaped radial Fourier perturbation of the unit circle (degree, amp, seed)"},
      {"spiral", "curve", "polyline band wound along a spiral with a sharp tip in the middle"},
      {"cusped", "curve", "cardioid: smooth parametrisation with a cusp at the origin"},
      {"trefoil", "curve", "standard Fourier trefoil knot in R^3"},
      {"tilted-circle", "curve", "circle of the given radius tilted by 30 degrees about the x-axis"},
      {"scaled-sphere", "sphere", "unit sphere scaled by (lambda_x, lambda_y, lambda_z)"},
      {"synthetic-field", "field", "random symmetric trigonometric field |sin pi(x-y)| (1 + ...) (seed)"},
      {"sine-field", "field", "d(x, y) = |sin pi(x - y)|"},
      {"modulated-field", "field", "d(x, y) = |sin pi(x - y)| (1 + 0.1 cos 2pi(x + y))"},
  };
  return entries;
}

CorpusItem corpus(const std::string& name, const CorpusParams& p) {
  if (name == "circle") return ellipse(p.radius, p.radius);
  if (name == "ellipse") return ellipse(p.a, p.b);
  if (name == "fourier-random") return fourier_random(p.degree, p.amp, p.seed);
  if (name == "spiral") return spiral();
  if (name == "cusped") return cardioid();
  if (name == "trefoil") return trefoil();
  if (name == "tilted-circle") return tilted_circle(p.radius);
  if (name == "scaled-sphere") return EmbeddedSphere(Eigen::Vector3d(p.lambda_x, p.lambda_y, p.lambda_z));
  if (name == "synthetic-field") return random_synthetic_field(p.seed);
  if (name == "sine-field") return DistanceField::synthetic(DistanceField::Kernel::abs_sin, {});
  if (name == "modulated-field") {
    FieldTerm t;
    t.argument = FieldTerm::Argument::sum;
    t.k = 1;
    t.cos = 0.1;
    return DistanceField::synthetic(DistanceField::Kernel::abs_sin, {t});
  }
  throw InvalidInput("unknown corpus name: " + name);
}

ClosedCurve corpus_curve(const std::string& name, const CorpusParams& params) {
  CorpusItem item = corpus(name, params);
  if (auto* c = std::get_if<ClosedCurve>(&item)) return std::move(*c);
  throw InvalidInput("corpus item is not a curve: " + name);
}

DistanceField corpus_field(const std::string& name, const CorpusParams& params) {
  CorpusItem item = corpus(name, params);
  if (auto* f = std::get_if<DistanceField>(&item)) return std::move(*f);
  if (auto* c = std::get_if<ClosedCurve>(&item)) return DistanceField::chordal(std::move(*c));
  throw InvalidInput("corpus item is not a field: " + name);
}

}  // namespace pegfinder
