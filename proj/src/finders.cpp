#include "pegfinder/finders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "pegfinder/errors.hpp"
#include "pegfinder/random.hpp"

namespace pegfinder {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

int slice_denominator(const FinderSettings& settings, int n) {
  return settings.slice_denominator > 0 ? settings.slice_denominator : default_slice_denominator(n);
}

}  // namespace

std::vector<Eigen::VectorXd> quadrilateral_seeds(int star_values, int denominator) {
  std::vector<Eigen::VectorXd> seeds;
  const auto lattice = simplex_lattice(4, denominator);
  seeds.reserve(lattice.size() * static_cast<std::size_t>(star_values));
  for (int k = 0; k < star_values; ++k) {
    const double star = 0.25 * k / star_values;
    for (const auto& g : lattice) {
      Eigen::VectorXd v(4);
      v << 0.0, g[0], g[0] + g[1], g[0] + g[1] + g[2];
      v.array() += star - v.mean();
      seeds.push_back(std::move(v));
    }
  }
  return seeds;
}

namespace {

const Branch* invariant_branch(const std::vector<Branch>& branches, int order) {
  for (const auto& b : branches)
    if (b.closed && b.isotropy_order == order) return &b;
  return nullptr;
}

std::string branch_summary(const std::vector<Branch>& branches) {
  std::string s = std::to_string(branches.size()) + " branch(es):";
  for (const auto& b : branches)
    s += " [" + std::string(b.closed ? "closed" : "open") + ", isotropy " + std::to_string(b.isotropy_order) + "]";
  return s;
}

double spread(const PolygonParam& p) {
  const auto xs = vertices(p);
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) best = std::max(best, circle_distance(xs[i], xs[j]));
  return best;
}

// Distance between gap vectors up to cyclic relabeling (base ignored).
double gap_distance(const PolygonParam& a, const PolygonParam& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < b.n(); ++k) {
    double d = 0.0;
    for (int i = 0; i < a.n(); ++i) d = std::max(d, std::abs(a.gaps()[i] - b.gaps()[(i + k) % b.n()]));
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

int default_slice_denominator(int n) {
  int d = n + 1;
  while (binomial(d - 1, n - 1) < 400.0) ++d;
  return d;
}

std::vector<PolygonParam> distinct_orbits(const std::vector<SolveResult>& results, double tol) {
  std::vector<PolygonParam> out;
  for (const auto& r : results) {
    if (!r.ok()) continue;
    const PolygonParam p = PolygonParam::from_lifted(r.u);
    bool seen = false;
    for (const auto& o : out) {
      if (orbit_distance(o, p) <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Squares

SquareResult find_square(const DistanceField& field, const FinderSettings& settings) {
  SquareResult out;
  const SystemPtr rhombus = rhombus_system(field);
  const EventFunction swap = diagonal_swap_event(field);
  const auto starts = star_slice_solutions(rhombus, settings.slice_value, slice_denominator(settings, 4),
                                           settings.trace.solver());
  const auto branches =
      trace_components(rhombus, starts, settings.trace, {EventSpec{EventKind::diagonal_swap, swap}});
  out.rhombus_branches = static_cast<int>(branches.size());
  const Branch* inv = invariant_branch(branches, 4);
  if (!inv) throw NumericalFailure("no Z_4-invariant equal-edge branch found; " + branch_summary(branches));
  out.rhombus_branch = *inv;
  out.swap_events = inv->count(EventKind::diagonal_swap);

  Eigen::VectorXd candidate;
  double largest = 0.0;
  for (const auto& s : inv->samples) largest = std::max(largest, std::abs(swap(s)));
  if (largest <= 1e-10) {
    out.swap_identically_zero = true;
    candidate = inv->samples.front();
  } else if (out.swap_events > 0) {
    for (const auto& e : inv->events) {
      if (e.kind == EventKind::diagonal_swap) {
        candidate = e.location;
        break;
      }
    }
  } else {
    throw NumericalFailure("Z_4-invariant equal-edge branch has no diagonal swap");
  }

  const SystemPtr square = square_system(field);
  const Eigen::VectorXd u = refine(*square, candidate, settings.trace.solver());
  out.square = PolygonParam::from_lifted(u);
  out.residual = square->residual(u).norm();
  out.isolated = jacobian_condition(*square, u) < 1e10;

  const auto seeds = out.isolated ? quadrilateral_seeds(settings.square_star_values, settings.square_denominator)
                                  : quadrilateral_seeds(2, 8);
  const auto results = multistart(*square, seeds, settings.trace.solver());
  if (out.isolated) {
    out.multistart_orbits = distinct_orbits(results, 1e-5);
    out.agreement = std::numeric_limits<double>::infinity();
    for (const auto& o : out.multistart_orbits) out.agreement = std::min(out.agreement, orbit_distance(out.square, o));
  } else {
    // A family of squares: compare shapes only.
    out.agreement = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
      if (!r.ok()) continue;
      const PolygonParam p = PolygonParam::from_lifted(r.u);
      out.agreement = std::min(out.agreement, gap_distance(out.square, p));
      if (out.multistart_orbits.empty()) out.multistart_orbits.push_back(p);
    }
  }
  out.agrees = out.agreement <= 1e-6;
  return out;
}

SquareResult find_square(const ClosedCurve& curve, const FinderSettings& settings) {
  return find_square(field_from_curve(curve), settings);
}

// ---------------------------------------------------------------------------
// Rectangles

RectangleResult find_rectangle(const ClosedCurve& curve, double r, const FinderSettings& settings) {
  if (curve.dim() != 2) throw InvalidInput("rectangle search needs a planar curve");
  if (!(r > 0.0)) throw InvalidInput("aspect ratio must be positive");
  RectangleResult out;
  const DistanceField field = field_from_curve(curve);
  const SystemPtr polish = ratio_rectangle_system(curve, r);
  const SystemPtr g = parallelogram_system(curve, r);

  auto accept = [&](const Eigen::VectorXd& u, const std::string& method) {
    const PolygonParam p = PolygonParam::from_lifted(u);
    const auto f = edge_diag_map(curve, p);
    out.found = true;
    out.rectangle = p;
    out.residual = g->residual(u).norm();
    out.diagonal_gap = std::abs(f[4] - f[5]);
    out.aspect_ratio = (f[0] + f[2]) / (f[1] + f[3]);
    out.method = method;
  };

  // Rectangle families through the slice, watching the aspect ratio.
  const SystemPtr rect = rectangle_system(field);
  // Squares lie on rectangle families; the slice catches families that wind.
  std::vector<Eigen::VectorXd> starts;
  try {
    const SquareResult squares = find_square(field, settings);
    for (const auto& o : squares.multistart_orbits)
      for (int k = 0; k < 4; ++k) starts.push_back(shift_lifted(o.lifted(), k));
  } catch (const NumericalFailure&) {
  }
  for (auto& s : star_slice_solutions(rect, settings.slice_value, slice_denominator(settings, 4),
                                      settings.trace.solver()))
    starts.push_back(std::move(s));
  const std::vector<EventSpec> events{{EventKind::aspect_ratio_hit, aspect_ratio_event(field, r)}};
  for (const auto& s : starts) {
    if (out.branches.size() >= 8) break;
    bool covered = false;
    for (const auto& b : out.branches) covered = covered || branch_contains(b, s, 1e-6);
    if (covered) continue;
    try {
      out.branches.push_back(trace_branch(rect, s, settings.trace, events));
    } catch (const NumericalFailure&) {
      continue;
    }
    if (out.found) continue;
    for (const auto& e : out.branches.back().events) {
      if (e.kind != EventKind::aspect_ratio_hit) continue;
      const SolveResult polished = try_refine(*polish, e.location, settings.trace.solver());
      if (polished.ok()) {
        accept(polished.u, "aspect_ratio_hit");
        break;
      }
    }
  }

  // Direct Newton on g together with equal diagonals.
  const auto results = multistart(*polish, quadrilateral_seeds(8, 12), settings.trace.solver());
  for (const auto& res : results) {
    if (!res.ok()) continue;
    ++out.direct_solutions;
    if (!out.found) accept(res.u, "newton");
  }
  if (!out.found) out.diagnostic = "no rectangle of aspect ratio found; " + branch_summary(out.branches);
  return out;
}

// ---------------------------------------------------------------------------
// Triangles

TriangleResult find_equilateral_triangle(const DistanceField& field, const FinderSettings& settings) {
  const SystemPtr system = triangle_system(field);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double slice = settings.slice_value + 0.0833 * attempt;
    const auto sols = star_slice_solutions(system, slice, slice_denominator(settings, 3), settings.trace.solver());
    const Eigen::VectorXd* best = nullptr;
    double best_spread = 1e-3;
    for (const auto& u : sols) {
      const double s = spread(PolygonParam::from_lifted(u));
      if (s > best_spread) {
        best_spread = s;
        best = &u;
      }
    }
    if (best) {
      TriangleResult out;
      out.triangle = PolygonParam::from_lifted(*best);
      out.residual = system->residual(*best).norm();
      out.spread = best_spread;
      return out;
    }
  }
  throw NumericalFailure("no non-degenerate equilateral triangle found on the multistart grid");
}

TwoMetricResult find_two_metric_triangle(const DistanceField& field1, const DistanceField& field2,
                                         const FinderSettings& settings) {
  const SystemPtr system = triangle_system(field1);
  std::vector<EventSpec> events;
  for (int i = 0; i < 3; ++i) events.push_back({EventKind::isosceles_hit, isosceles_event(field2, i)});
  const auto starts =
      star_slice_solutions(system, settings.slice_value, slice_denominator(settings, 3), settings.trace.solver());
  const auto branches = trace_components(system, starts, settings.trace, events);
  const Branch* inv = invariant_branch(branches, 3);
  if (!inv) throw NumericalFailure("no Z_3-invariant equilateral branch found; " + branch_summary(branches));

  TwoMetricResult out;
  out.branch = *inv;
  auto finish = [&](const Eigen::VectorXd& u, int which) {
    out.triangle = PolygonParam::from_lifted(u);
    out.which = which;
    out.equilateral_residual = system->residual(u).norm();
    out.isosceles_residual = std::abs(events[which].function(u));
    return out;
  };
  for (int i = 0; i < 3; ++i) {
    if (std::abs(events[i].function(inv->samples.front())) <= 1e-12) return finish(inv->samples.front(), i);
  }
  for (const auto& e : inv->events) {
    if (e.kind != EventKind::isosceles_hit) continue;
    const SystemPtr polish = two_metric_system(field1, field2, e.source);
    const SolveResult r = try_refine(*polish, e.location, settings.trace.solver());
    return finish(r.ok() ? r.u : e.location, e.source);
  }
  throw NumericalFailure("Z_3-invariant equilateral branch has no isosceles event");
}

// ---------------------------------------------------------------------------
// Planar rhombi

RhombusResult find_planar_rhombus(const ClosedCurve& knot, const FinderSettings& settings) {
  const DistanceField field = field_from_curve(knot);
  const SystemPtr system = rhombus_system(field);
  const EventFunction planar = planarity_event(knot);
  const auto starts =
      star_slice_solutions(system, settings.slice_value, slice_denominator(settings, 4), settings.trace.solver());
  const auto branches = trace_components(system, starts, settings.trace, {EventSpec{EventKind::planarity, planar}});
  const Branch* inv = invariant_branch(branches, 4);
  if (!inv) throw NumericalFailure("no Z_4-invariant equal-edge branch found; " + branch_summary(branches));

  auto diameter = [&](const Eigen::VectorXd& u) { return std::max(field(u[0], u[2]), field(u[1], u[3])); };
  RhombusResult out;
  out.branch = *inv;
  auto finish = [&](const Eigen::VectorXd& u) {
    out.rhombus = PolygonParam::from_lifted(u);
    out.residual = rhombus3d_residual(knot, out.rhombus).norm();
    out.coplanarity = std::abs(planar(u));
    out.diameter = diameter(u);
    try {
      out.angle = planarity_angle(knot, out.rhombus);
    } catch (const DegenerateConfiguration&) {
      out.angle = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
  };
  for (const auto& s : inv->samples)
    if (std::abs(planar(s)) <= 1e-9 && diameter(s) >= 1e-3) return finish(s);
  const SystemPtr polish = planar_rhombus_system(knot);
  for (const auto& e : inv->events) {
    if (e.kind != EventKind::planarity || diameter(e.location) < 1e-3) continue;
    const SolveResult r = try_refine(*polish, e.location, settings.trace.solver());
    return finish(r.ok() ? r.u : e.location);
  }
  throw NumericalFailure("Z_4-invariant equal-edge branch has no planarity event");
}

// ---------------------------------------------------------------------------
// n-gons

NgonResult find_ngon_families(const DistanceField& field, std::vector<double> ratios, const FinderSettings& settings) {
  NgonResult out;
  out.n = static_cast<int>(ratios.size()) + 1;
  out.ratios = ratios;
  const SystemPtr system = edge_ratio_system(field, std::move(ratios));
  out.symmetry_order = system->symmetry_order();
  const auto starts = star_slice_solutions(system, settings.slice_value, slice_denominator(settings, out.n),
                                           settings.trace.solver());
  out.slice_solutions = static_cast<int>(starts.size());
  out.branches = trace_components(system, starts, settings.trace);
  out.winding_sum = winding_sum(out.branches);
  for (const auto& b : out.branches)
    if (b.closed) out.max_isotropy = std::max(out.max_isotropy, b.isotropy_order);
  return out;
}

// ---------------------------------------------------------------------------
// Octahedra

const std::vector<LabelMap>& octahedron_group() {
  static const std::vector<LabelMap> group = [] {
    std::vector<LabelMap> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (int signs = 0; signs < 8; ++signs) {
        LabelMap g{};
        for (int i = 0; i < 6; ++i) {
          const int axis = i % 3;
          const int negative = (i >= 3) ^ ((signs >> axis) & 1);
          g[i] = perm[axis] + 3 * negative;
        }
        out.push_back(g);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return group;
}

Eigen::VectorXd act_labels(const LabelMap& g, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(18);
  for (int i = 0; i < 6; ++i) out.segment<3>(3 * g[i]) = u.segment<3>(3 * i);
  return out;
}

namespace {

Eigen::VectorXd octahedron_seed(const Eigen::Matrix3d& rotation) {
  Eigen::VectorXd u(18);
  for (int i = 0; i < 6; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[i % 3] = i < 3 ? 1.0 : -1.0;
    u.segment<3>(3 * i) = rotation * e;
  }
  return u;
}

}  // namespace

OctahedronResult find_octahedra(const EmbeddedSphere& sphere, const FinderSettings& settings, int seed_count) {
  if (sphere.round())
    throw InvalidInput("round sphere: the octahedra form a three-dimensional family, not circles");
  const auto system = std::make_shared<OctahedronSystem>(sphere);
  OctahedronResult out;

  std::vector<Eigen::VectorXd> seeds;
  // A 3-fold axis along z.
  const Eigen::Vector3d diagonal = Eigen::Vector3d::Ones().normalized();
  seeds.push_back(octahedron_seed(Eigen::Quaterniond::FromTwoVectors(diagonal, Eigen::Vector3d::UnitZ()).toRotationMatrix()));
  Rng rng(settings.trace.seed);
  while (static_cast<int>(seeds.size()) < seed_count) {
    Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    q.normalize();
    seeds.push_back(octahedron_seed(q.toRotationMatrix()));
  }
  out.seeds = static_cast<int>(seeds.size());
  const auto results = multistart(*system, seeds, settings.trace.solver());

  auto known = [&](const Eigen::VectorXd& u) {
    for (std::size_t c = 0; c < out.components.size(); ++c)
      if (branch_contains(out.components[c], u, 1e-6)) return static_cast<int>(c);
    return -1;
  };
  const auto& group = octahedron_group();
  for (const auto& r : results) {
    if (!r.ok()) continue;
    ++out.converged;
    if (known(r.u) >= 0) continue;
    out.components.push_back(trace_branch(system, r.u, settings.trace));
    // Close the found set under the group.
    for (std::size_t c = out.components.size() - 1; c < out.components.size(); ++c) {
      for (const auto& g : group) {
        const Eigen::VectorXd image = act_labels(g, out.components[c].samples.front());
        if (known(image) < 0) out.components.push_back(trace_branch(system, image, settings.trace));
      }
    }
  }
  if (out.components.empty()) throw NumericalFailure("no octahedron found from " + std::to_string(out.seeds) + " seeds");

  // Orbits of components under the group, and the stabilizer of the first.
  std::vector<int> orbit(out.components.size(), -1);
  out.closed_under_group = true;
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    if (orbit[c] >= 0) continue;
    orbit[c] = out.orbit_count;
    for (const auto& g : group) {
      const int k = known(act_labels(g, out.components[c].samples.front()));
      if (k < 0)
        out.closed_under_group = false;
      else
        orbit[k] = out.orbit_count;
    }
    ++out.orbit_count;
  }
  for (const auto& g : group)
    if (known(act_labels(g, out.components.front().samples.front())) == 0) ++out.stabilizer;

  for (const auto& b : out.components) {
    for (const auto& s : b.samples) {
      const Eigen::VectorXd lengths = system->edge_lengths(s);
      out.max_edge_spread = std::max(out.max_edge_spread, lengths.maxCoeff() - lengths.minCoeff());
    }
  }
  return out;
}

}  // namespace pegfinder
