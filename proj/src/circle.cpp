#include "pegfinder/circle.hpp"

#include <algorithm>

namespace pegfinder {

double circle_distance(CirclePoint a, CirclePoint b) {
  const double d = b - a;
  return std::min(d, 1.0 - d);
}

}  // namespace pegfinder
