#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pegfinder/continuation.hpp"
#include "pegfinder/finders.hpp"

namespace pegfinder {

struct CountSettings {
  int star_values = 64;   // star bases in [0, 1/4)
  int denominator = 32;   // simplex lattice for the gaps
  double dedupe_tol = 1e-5;
  double condition_limit = 1e10;
  std::uint64_t seed = 0;
  FinderSettings finder;
};

/// One solution orbit of a count.
struct OrbitRecord {
  PolygonParam representative{CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25}};
  double residual = 0.0;
  int orbit_size = 1;
  double condition = 0.0;
  bool non_transversal = false;  // condition above the limit
  // Special quadrilaterals only.
  bool is_special = false;
  bool boundary_degenerate = false;
  double a = 0.0;
  double b = 0.0;
  double size = 0.0;
};

struct CountReport {
  std::string kind;
  int total = 0;        // solutions counted with their orbits
  int orbit_count = 0;  // modulo the symmetry group
  int parity = 0;       // orbit_count mod 2
  std::vector<OrbitRecord> orbits;
  std::string resolution;
  long seeds = 0;
  long converged = 0;
  std::uint64_t seed = 0;
  bool rejected = false;
  bool parity_reliable = true;
  std::string diagnostic;
  std::vector<std::string> warnings;
};

/// Multistart Newton on the square system over the seed grid, deduplicated
/// by Z_4 orbit. Curves whose squares are not isolated (the circle) are
/// rejected with a family diagnostic.
CountReport count_squares(const DistanceField& field, const CountSettings& settings = {});
CountReport count_squares(const ClosedCurve& curve, const CountSettings& settings = {});

struct SpecialQuadSettings {
  int t_values = 200;
  int inner_denominator = 12;
  double dedupe_tol = 1e-7;
  double condition_limit = 1e10;
  FinderSettings finder;
};

enum class SpecialVerdict { even_square_found, even_square_missing, odd_no_constraint };
const char* verdict_name(SpecialVerdict verdict);

struct SpecialQuadReport {
  CountReport count;
  GeneratorPath path;
  SpecialVerdict verdict = SpecialVerdict::odd_no_constraint;
  std::optional<SquareResult> square;
  std::string square_failure;
  // Multistart fallback when the continuation search fails.
  std::optional<PolygonParam> multistart_square;
  double multistart_residual = 0.0;
};

/// Special quadrilaterals of size `size` on the slice P_4(y), y = (id, id + size)
/// unless a path is given. An even count requires a square, which is then
/// searched for.
SpecialQuadReport count_special_quads(const DistanceField& field, double size,
                                      const std::optional<GeneratorPath>& path = std::nullopt,
                                      const SpecialQuadSettings& settings = {});

/// A traced path of special quadrilaterals in P_4; the size varies along it.
struct SpecialPath {
  Branch branch;
  double min_size = 0.0;
  double max_size = 0.0;
  int square_crossings = 0;  // sign changes of e12 - e41 (a = b)
};

struct SpecialPathReport {
  double seed_size = 0.0;
  int seeds = 0;
  std::vector<SpecialPath> paths;
  std::vector<std::string> failures;
};

/// Traces the one-dimensional set of (a, a, a, b, e, e) quadrilaterals through
/// every special quadrilateral of size `seed_size`.
SpecialPathReport trace_special_paths(const DistanceField& field, double seed_size,
                                      const SpecialQuadSettings& settings = {});

struct RectangleComponent {
  Branch branch;
  int square_events = 0;
};

struct RectangleReport {
  CountReport squares;
  std::vector<RectangleComponent> components;
  int total_square_events = 0;
  int closed_components = 0;
  int open_components = 0;
  bool closed_even = true;         // every closed component: even square count
  bool r1_divisible_by_8 = true;   // squares on isotropy-1 components
  bool r2_divisible_by_8 = true;   // squares on isotropy-2 components
  bool r4_each_4_mod_8 = true;     // each isotropy-4 component
  bool total_4_mod_8 = false;      // 4 * orbit count
  std::vector<std::string> warnings;
};

/// Traces the rectangle families through every square and sorts them by
/// isotropy. Components reaching the boundary are reported as open and
/// excluded from the parity bookkeeping.
RectangleReport classify_rectangle_components(const ClosedCurve& curve, const CountSettings& settings = {});

/// Signed area of the planar quadrilateral with the given points in order.
double quad_signed_area(const std::array<Eigen::Vector3d, 4>& points);

/// True iff the curve points at the given parameters, in the given order, span
/// a positively oriented quadrilateral, after reorienting the curve to be
/// counter-clockwise.
bool orientation_check(const ClosedCurve& curve, std::span<const CirclePoint> order);
bool orientation_check(const ClosedCurve& curve, const PolygonParam& square);

}  // namespace pegfinder
