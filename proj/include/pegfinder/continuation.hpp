#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pegfinder/residuals.hpp"
#include "pegfinder/solver.hpp"

namespace pegfinder {

struct TraceSettings {
  double corrector_tol = 1e-10;
  double step_init = 1e-3;
  double step_max = 1e-2;
  double closure_tol = 1e-6;
  double boundary_floor = 1e-4;
  long max_steps = 200000;
  std::uint64_t seed = 0;

  /// Throws InvalidInput unless all fields are positive and
  /// corrector_tol < closure_tol.
  void validate() const;
  SolverSettings solver() const;
};

enum class EventKind { diagonal_swap, aspect_ratio_hit, planarity, isosceles_hit, boundary_approach, square_on_branch };

const char* event_name(EventKind kind);

/// A zero of an event function on a branch, between samples `before` and
/// `after`, located by bisection along the branch.
struct Event {
  EventKind kind = EventKind::boundary_approach;
  Eigen::VectorXd location;
  int before = 0;
  int after = 0;
  int source = -1;  // index of the EventSpec, -1 for boundary events
};

struct EventSpec {
  EventKind kind;
  EventFunction function;
};

/// A traced connected component of a one-dimensional zero set.
struct Branch {
  std::string kind;
  SystemPtr system;  // the system actually traced (gauge-pinned if needed)
  std::vector<Eigen::VectorXd> samples;
  bool closed = false;
  int winding = 0;
  int isotropy_order = 1;
  bool gauge_pinned = false;
  std::vector<Event> events;

  int count(EventKind kind) const;
};

/// Pseudo-arclength continuation of the zero set of `system` through u0.
///
/// The start is polished with Gauss-Newton. If the zero set has dimension
/// two at u0 and the system is polygonal, the first vertex is pinned. The
/// initial tangent is oriented so that det [J; tau^T] > 0, which makes
/// winding numbers of different branches comparable. Open branches are traced
/// in both directions and end with boundary_approach events.
Branch trace_branch(const SystemPtr& system, const Eigen::VectorXd& u0, const TraceSettings& settings = {},
                    const std::vector<EventSpec>& events = {});

/// Degree of the star base around a closed branch. Throws InvalidInput for
/// open branches.
int winding_number(const Branch& branch);

/// True if x lies on the branch within tol (nearest sample, then a projection
/// onto the branch).
bool branch_contains(const Branch& branch, const Eigen::VectorXd& x, double tol);

/// Largest k dividing the symmetry order such that the order-k subgroup maps
/// the branch to itself. 1 for open branches or systems without symmetry.
int isotropy(const Branch& branch, const TraceSettings& settings = {});

/// Gauss-Newton solutions of `system` restricted to mean(v) = value, started
/// from the interior simplex lattice with the given denominator and
/// deduplicated to 1e-7.
std::vector<Eigen::VectorXd> star_slice_solutions(const SystemPtr& system, double value, int denominator,
                                                  const SolverSettings& settings = {});

/// Traces a branch through every start point not already covered by a
/// previously traced branch. Isotropy is filled in for closed branches.
std::vector<Branch> trace_components(const SystemPtr& system, const std::vector<Eigen::VectorXd>& starts,
                                     const TraceSettings& settings = {}, const std::vector<EventSpec>& events = {});

/// Sum of winding numbers of the closed branches.
int winding_sum(const std::vector<Branch>& branches);

}  // namespace pegfinder
