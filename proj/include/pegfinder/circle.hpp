#pragma once

#include <cmath>

namespace pegfinder {

/// A point of the circle R/Z, stored as its representative in [0, 1).
class CirclePoint {
 public:
  constexpr CirclePoint() = default;
  explicit CirclePoint(double value) : value_(wrap(value)) {}

  double value() const { return value_; }

  /// Counter-clockwise rotation by t (t may be any real).
  CirclePoint operator+(double t) const { return CirclePoint(value_ + t); }

  friend bool operator==(CirclePoint, CirclePoint) = default;

  /// Reduces a real number modulo 1 into [0, 1).
  static double wrap(double v) {
    const double r = v - std::floor(v);
    return r >= 1.0 ? 0.0 : r;
  }

 private:
  double value_ = 0.0;
};

/// Normalised counter-clockwise arc length from x to y, in [0, 1).
inline double operator-(CirclePoint y, CirclePoint x) { return CirclePoint::wrap(y.value() - x.value()); }

/// Shortest distance between two points of R/Z, in [0, 1/2].
double circle_distance(CirclePoint a, CirclePoint b);

}  // namespace pegfinder
