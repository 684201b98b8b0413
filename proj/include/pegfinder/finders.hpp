#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pegfinder/continuation.hpp"
#include "pegfinder/curve.hpp"
#include "pegfinder/polygon.hpp"

namespace pegfinder {

struct FinderSettings {
  TraceSettings trace;
  double slice_value = 0.1;   // star base of the slice used to seed branches
  int slice_denominator = 0;  // simplex lattice for slice seeds (0: by n)
  int square_star_values = 32;
  int square_denominator = 16;
};

/// Simplex lattice denominator used for star-slice seeds of n-gons.
int default_slice_denominator(int n);

/// Lifted quadrilateral seeds: `star_values` star bases in [0, 1/4) times the
/// interior simplex lattice with the given denominator.
std::vector<Eigen::VectorXd> quadrilateral_seeds(int star_values, int denominator);

/// Starting points for orbit deduplication: converged multistart solutions
/// grouped by Z_n orbit within tol.
std::vector<PolygonParam> distinct_orbits(const std::vector<SolveResult>& results, double tol);

/// Square search. The primary result comes from the Z_4-invariant branch of
/// equal-edge quadrilaterals, at the point where the two diagonals swap
/// lengths; it is cross-checked against multistart Newton on the square
/// system.
struct SquareResult {
  PolygonParam square{CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25}};
  double residual = 0.0;
  int rhombus_branches = 0;
  int swap_events = 0;
  bool swap_identically_zero = false;  // diagonals equal along the whole branch
  Branch rhombus_branch;
  std::vector<PolygonParam> multistart_orbits;
  double agreement = 0.0;  // orbit distance to the nearest multistart square
  bool agrees = false;     // agreement <= 1e-6
  bool isolated = true;    // square Jacobian well conditioned
};

SquareResult find_square(const DistanceField& field, const FinderSettings& settings = {});
SquareResult find_square(const ClosedCurve& curve, const FinderSettings& settings = {});

/// Rectangle of aspect ratio r = (e12 + e34) / (e23 + e41).
struct RectangleResult {
  bool found = false;
  PolygonParam rectangle{CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25}};
  double residual = 0.0;      // norm of g at the result
  double diagonal_gap = 0.0;  // |d13 - d24|
  double aspect_ratio = 0.0;
  std::string method;  // "aspect_ratio_hit" or "newton"
  std::vector<Branch> branches;
  int direct_solutions = 0;
  std::string diagnostic;
};

RectangleResult find_rectangle(const ClosedCurve& curve, double r, const FinderSettings& settings = {});

struct TriangleResult {
  PolygonParam triangle{CirclePoint(0.0), {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  double residual = 0.0;
  double spread = 0.0;  // largest pairwise circular distance
};

TriangleResult find_equilateral_triangle(const DistanceField& field, const FinderSettings& settings = {});

struct TwoMetricResult {
  PolygonParam triangle{CirclePoint(0.0), {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  double equilateral_residual = 0.0;
  double isosceles_residual = 0.0;
  int which = 0;  // isosceles condition that holds
  Branch branch;
};

TwoMetricResult find_two_metric_triangle(const DistanceField& field1, const DistanceField& field2,
                                         const FinderSettings& settings = {});

struct RhombusResult {
  PolygonParam rhombus{CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25}};
  double residual = 0.0;
  double coplanarity = 0.0;
  double angle = 0.0;
  double diameter = 0.0;
  Branch branch;
};

RhombusResult find_planar_rhombus(const ClosedCurve& knot, const FinderSettings& settings = {});

/// Edge-regular (or prescribed-ratio) n-gon families.
struct NgonResult {
  int n = 0;
  std::vector<double> ratios;
  int symmetry_order = 1;
  int slice_solutions = 0;
  std::vector<Branch> branches;
  int winding_sum = 0;
  int max_isotropy = 0;
};

NgonResult find_ngon_families(const DistanceField& field, std::vector<double> ratios,
                              const FinderSettings& settings = {});

/// The 48 relabelings of the octahedron vertices that preserve opposite pairs.
using LabelMap = std::array<int, 6>;
const std::vector<LabelMap>& octahedron_group();
/// (g u)_{g(i)} = u_i.
Eigen::VectorXd act_labels(const LabelMap& g, const Eigen::VectorXd& u);

struct OctahedronResult {
  std::vector<Branch> components;
  int orbit_count = 0;     // components modulo the group
  int stabilizer = 0;      // group elements fixing the first component
  int seeds = 0;
  int converged = 0;
  double max_edge_spread = 0.0;  // max over samples of max L - min L
  bool closed_under_group = false;
};

OctahedronResult find_octahedra(const EmbeddedSphere& sphere, const FinderSettings& settings = {}, int seeds = 24);

}  // namespace pegfinder
