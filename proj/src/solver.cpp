#include "pegfinder/solver.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "pegfinder/errors.hpp"
#include "pegfinder/parallel.hpp"

namespace pegfinder {

Eigen::VectorXd least_squares_step(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& rhs) {
  if (jacobian.rows() == jacobian.cols()) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jacobian);
    // Pivot ratio as a cheap stand-in for the reciprocal condition number.
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() > 1e-12 * pivots.maxCoeff()) return lu.solve(rhs);
  }
  return jacobian.completeOrthogonalDecomposition().solve(rhs);
}

SolveResult try_refine(const ResidualSystem& system, Eigen::VectorXd u, const SolverSettings& settings) {
  SolveResult out;
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  Eigen::VectorXd trial_f;
  system.evaluate(u, f, jac);
  double norm = f.norm();
  for (int it = 0;; ++it) {
    out.iterations = it;
    if (!std::isfinite(norm)) {
      out.status = SolveStatus::diverged;
      break;
    }
    if (system.boundary_distance(u) < settings.boundary_floor) {
      out.status = SolveStatus::boundary;
      break;
    }
    if (norm <= settings.tol) {
      out.status = SolveStatus::converged;
      break;
    }
    if (it == settings.max_iterations) {
      out.status = SolveStatus::max_iterations;
      break;
    }
    Eigen::VectorXd step = least_squares_step(jac, -f);
    const double size = step.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(size)) {
      out.status = SolveStatus::diverged;
      break;
    }
    if (size > settings.max_step) step *= settings.max_step / size;
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-4) {
      const Eigen::VectorXd trial = u + lambda * step;
      system.residual(trial, trial_f);
      const double trial_norm = trial_f.norm();
      if (trial_norm < norm) {
        u = trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      out.status = SolveStatus::diverged;
      break;
    }
    system.evaluate(u, f, jac);
    norm = f.norm();
  }
  out.u = std::move(u);
  out.residual_norm = norm;
  return out;
}

Eigen::VectorXd refine(const ResidualSystem& system, Eigen::VectorXd u0, const SolverSettings& settings) {
  SolveResult r = try_refine(system, std::move(u0), settings);
  switch (r.status) {
    case SolveStatus::converged:
      return std::move(r.u);
    case SolveStatus::boundary:
      throw NumericalFailure("Gauss-Newton left the interior (gap below the boundary floor)");
    case SolveStatus::max_iterations:
      throw NumericalFailure("Gauss-Newton did not converge in " + std::to_string(settings.max_iterations) +
                             " iterations (residual " + std::to_string(r.residual_norm) + ")");
    case SolveStatus::diverged:
      break;
  }
  throw NumericalFailure("Gauss-Newton stalled at residual " + std::to_string(r.residual_norm));
}

std::vector<SolveResult> multistart(const ResidualSystem& system, const std::vector<Eigen::VectorXd>& seeds,
                                    const SolverSettings& settings) {
  std::vector<SolveResult> out(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { out[i] = try_refine(system, seeds[i], settings); });
  return out;
}

double jacobian_condition(const ResidualSystem& system, const Eigen::VectorXd& u) {
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  system.evaluate(u, f, jac);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& s = svd.singularValues();
  const double smallest = s[s.size() - 1];
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smallest;
}

std::vector<std::vector<double>> simplex_lattice(int n, int denominator) {
  std::vector<std::vector<double>> out;
  std::vector<int> counts(static_cast<std::size_t>(n), 1);
  // Distribute `denominator` units over n gaps, each receiving at least one.
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == n - 1) {
      counts[index] = remaining;
      std::vector<double> gaps(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) gaps[k] = static_cast<double>(counts[k]) / denominator;
      out.push_back(std::move(gaps));
      return;
    }
    for (int c = 1; c <= remaining - (n - 1 - index); ++c) {
      counts[index] = c;
      rec(index + 1, remaining - c);
    }
  };
  if (denominator >= n) rec(0, denominator);
  return out;
}

}  // namespace pegfinder
