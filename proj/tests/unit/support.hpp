#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <doctest.h>

#include "pegfinder/polygon.hpp"
#include "pegfinder/random.hpp"
#include "pegfinder/residuals.hpp"

namespace testing {

// Reference values, computed independently and frozen here.
// Ellipse (2, 1): square vertices at angle parameter t with tan(2 pi t) = 1/2.
inline constexpr double kEllipseSquareT = 0.17620819117478337;
// Unit circle: rectangle of aspect ratio 2 has gap u with tan(pi u) = 2.
inline constexpr double kCircleRatio2Gap = 0.35241638234956674;

inline Eigen::VectorXd random_lifted(int n, std::uint64_t seed) {
  pegfinder::Rng rng(seed);
  std::vector<double> gaps(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& g : gaps) total += (g = rng.uniform(0.5, 1.5));
  for (double& g : gaps) g /= total;
  return pegfinder::PolygonParam(pegfinder::CirclePoint(rng.uniform()), gaps).lifted();
}

// Largest entrywise deviation between the analytic Jacobian and central
// differences with step 1e-6, relative to max(1, |J|_max).
inline double jacobian_error(const pegfinder::ResidualSystem& s, const Eigen::VectorXd& u) {
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  s.evaluate(u, f, jac);
  constexpr double h = 1e-6;
  Eigen::MatrixXd fd(jac.rows(), jac.cols());
  for (int k = 0; k < u.size(); ++k) {
    Eigen::VectorXd up = u, dn = u;
    up[k] += h;
    dn[k] -= h;
    fd.col(k) = (s.residual(up) - s.residual(dn)) / (2.0 * h);
  }
  return (jac - fd).cwiseAbs().maxCoeff() / std::max(1.0, jac.cwiseAbs().maxCoeff());
}

}  // namespace testing
