#include "pegfinder/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegfinder/errors.hpp"

namespace pegfinder {

PolygonParam::PolygonParam(CirclePoint base, std::vector<double> gaps) : base_(base), gaps_(std::move(gaps)) {
  if (gaps_.size() < 2) throw InvalidInput("a polygon parameter needs at least two gaps");
  double sum = 0.0;
  for (double& t : gaps_) {
    if (t < -1e-12 || !std::isfinite(t)) throw InvalidInput("gaps must be nonnegative");
    t = std::max(t, 0.0);
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("gaps must sum to one");
  for (double& t : gaps_) t /= sum;
}

PolygonParam PolygonParam::from_lifted(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> gaps(static_cast<std::size_t>(n));
  double used = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    gaps[k] = v[k + 1] - v[k];
    used += gaps[k];
  }
  gaps[n - 1] = 1.0 - used;
  return PolygonParam(CirclePoint(v[0]), std::move(gaps));
}

bool PolygonParam::interior() const { return *std::min_element(gaps_.begin(), gaps_.end()) > 0.0; }

Eigen::VectorXd PolygonParam::lifted() const {
  Eigen::VectorXd v(n());
  v[0] = base_.value();
  for (int k = 1; k < n(); ++k) v[k] = v[k - 1] + gaps_[k - 1];
  return v;
}

std::vector<CirclePoint> vertices(const PolygonParam& p) {
  std::vector<CirclePoint> out;
  out.reserve(static_cast<std::size_t>(p.n()));
  double offset = 0.0;
  for (int k = 0; k < p.n(); ++k) {
    out.push_back(p.base() + offset);
    offset += p.gaps()[k];
  }
  return out;
}

PolygonParam from_vertices(std::span<const CirclePoint> xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw InvalidInput("need at least two vertices");
  std::vector<double> gaps(static_cast<std::size_t>(n));
  double used = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    gaps[k] = xs[k + 1] - xs[k];
    used += gaps[k];
  }
  const double last = 1.0 - used;
  if (last < -1e-12) throw InvalidInput("vertices are not in counter-clockwise order");
  gaps[n - 1] = std::max(last, 0.0);
  return PolygonParam(xs[0], std::move(gaps));
}

PolygonParam cyclic_shift(const PolygonParam& p, int times) {
  const int n = p.n();
  times = ((times % n) + n) % n;
  CirclePoint base = p.base();
  for (int k = 0; k < times; ++k) base = base + p.gaps()[k];
  std::vector<double> gaps(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) gaps[k] = p.gaps()[(k + times) % n];
  return PolygonParam(base, std::move(gaps));
}

StarParam to_star(const PolygonParam& p) {
  const int n = p.n();
  double offset = 0.0;
  for (int k = 1; k < n; ++k) offset += static_cast<double>(n - k) / n * p.gaps()[k - 1];
  return StarParam{p.base() + offset, p.gaps()};
}

PolygonParam from_star(const StarParam& s) {
  const int n = static_cast<int>(s.gaps.size());
  double offset = 0.0;
  for (int k = 1; k < n; ++k) offset += static_cast<double>(n - k) / n * s.gaps[k - 1];
  return PolygonParam(s.star_base + (-offset), s.gaps);
}

double boundary_distance(const PolygonParam& p) { return *std::min_element(p.gaps().begin(), p.gaps().end()); }

PolygonParam canonical(const PolygonParam& p) {
  PolygonParam best = p;
  double best_star = to_star(p).star_base.value();
  for (int k = 1; k < p.n(); ++k) {
    PolygonParam q = cyclic_shift(p, k);
    const double s = to_star(q).star_base.value();
    if (s < best_star) {
      best_star = s;
      best = q;
    }
  }
  return best;
}

double param_distance(const PolygonParam& a, const PolygonParam& b) {
  if (a.n() != b.n()) return std::numeric_limits<double>::infinity();
  double d = circle_distance(a.base(), b.base());
  for (int k = 0; k < a.n(); ++k) d = std::max(d, std::abs(a.gaps()[k] - b.gaps()[k]));
  return d;
}

double orbit_distance(const PolygonParam& a, const PolygonParam& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < b.n(); ++k) best = std::min(best, param_distance(a, cyclic_shift(b, k)));
  return best;
}

Eigen::VectorXd shift_lifted(const Eigen::VectorXd& v, int times) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd out = v;
  for (int t = 0; t < times; ++t) {
    const double first = out[0];
    for (int k = 0; k + 1 < n; ++k) out[k] = out[k + 1];
    out[n - 1] = first + 1.0;
  }
  return out;
}

Eigen::VectorXd lifted_difference(const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
  Eigen::VectorXd d = u - w;
  const double m = std::round(d.mean());
  return d.array() - m;
}

double lifted_boundary_distance(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  double best = 1.0 - (v[n - 1] - v[0]);
  for (int k = 0; k + 1 < n; ++k) best = std::min(best, v[k + 1] - v[k]);
  return best;
}

}  // namespace pegfinder
