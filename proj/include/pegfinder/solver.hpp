#pragma once

#include <vector>

#include <Eigen/Core>

#include "pegfinder/residuals.hpp"

namespace pegfinder {

struct SolverSettings {
  double tol = 1e-10;
  int max_iterations = 50;
  double boundary_floor = 1e-4;
  double max_step = 0.25;  // infinity-norm cap on a single update
};

enum class SolveStatus { converged, max_iterations, boundary, diverged };

struct SolveResult {
  Eigen::VectorXd u;
  double residual_norm = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::diverged;
  bool ok() const { return status == SolveStatus::converged; }
};

/// Minimum-norm least-squares solution of J x = b (LU when J is square and
/// well conditioned).
Eigen::VectorXd least_squares_step(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& rhs);

/// Damped Gauss-Newton from u0. Never throws for numerical reasons.
SolveResult try_refine(const ResidualSystem& system, Eigen::VectorXd u0, const SolverSettings& settings = {});

/// Like try_refine, but throws NumericalFailure unless converged.
Eigen::VectorXd refine(const ResidualSystem& system, Eigen::VectorXd u0, const SolverSettings& settings = {});

/// try_refine from every seed, in parallel; result i belongs to seed i.
std::vector<SolveResult> multistart(const ResidualSystem& system, const std::vector<Eigen::VectorXd>& seeds,
                                    const SolverSettings& settings = {});

/// Ratio of the largest to the smallest singular value of J at u.
double jacobian_condition(const ResidualSystem& system, const Eigen::VectorXd& u);

/// Interior points of the simplex lattice {k / denominator} in dimension n - 1
/// (n gaps, each at least 1 / denominator).
std::vector<std::vector<double>> simplex_lattice(int n, int denominator);

}  // namespace pegfinder
