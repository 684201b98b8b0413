#include "pegfinder/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pegfinder/errors.hpp"

namespace pegfinder {

namespace {

std::string grid_description(int star_values, int denominator, std::size_t seeds) {
  std::ostringstream s;
  s << star_values << " star bases x simplex lattice 1/" << denominator << " (" << seeds << " seeds)";
  return s.str();
}

}  // namespace

CountReport count_squares(const DistanceField& field, const CountSettings& settings) {
  CountReport out;
  out.kind = "square";
  out.seed = settings.seed;
  const SystemPtr system = square_system(field);
  const SolverSettings solver = settings.finder.trace.solver();

  // A small pilot grid detects families of squares before the full run.
  const auto pilot = multistart(*system, quadrilateral_seeds(2, 8), solver);
  for (const auto& r : pilot) {
    if (!r.ok()) continue;
    const double cond = jacobian_condition(*system, r.u);
    if (cond > settings.condition_limit) {
      out.rejected = true;
      out.parity_reliable = false;
      std::ostringstream s;
      s << "squares are not isolated: Jacobian condition number " << cond << " exceeds "
        << settings.condition_limit << " (the squares form a family)";
      out.diagnostic = s.str();
      out.resolution = "pilot grid";
      out.seeds = static_cast<long>(pilot.size());
      return out;
    }
  }

  const auto seeds = quadrilateral_seeds(settings.star_values, settings.denominator);
  out.seeds = static_cast<long>(seeds.size());
  out.resolution = grid_description(settings.star_values, settings.denominator, seeds.size());
  const auto results = multistart(*system, seeds, solver);
  for (const auto& r : results) out.converged += r.ok();
  for (const auto& p : distinct_orbits(results, settings.dedupe_tol)) {
    OrbitRecord rec;
    rec.representative = canonical(p);
    const Eigen::VectorXd u = rec.representative.lifted();
    rec.residual = system->residual(u).norm();
    rec.orbit_size = 4;
    rec.condition = jacobian_condition(*system, u);
    rec.non_transversal = rec.condition > settings.condition_limit;
    if (rec.non_transversal) {
      out.parity_reliable = false;
      out.warnings.push_back("suspected non-transversal square (condition number " + std::to_string(rec.condition) +
                             ")");
    }
    out.orbits.push_back(std::move(rec));
  }
  std::sort(out.orbits.begin(), out.orbits.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
    return to_star(a.representative).star_base.value() < to_star(b.representative).star_base.value();
  });
  out.orbit_count = static_cast<int>(out.orbits.size());
  out.total = 4 * out.orbit_count;
  out.parity = out.orbit_count % 2;
  return out;
}

CountReport count_squares(const ClosedCurve& curve, const CountSettings& settings) {
  return count_squares(field_from_curve(curve), settings);
}

const char* verdict_name(SpecialVerdict verdict) {
  switch (verdict) {
    case SpecialVerdict::even_square_found:
      return "even_parity_square_found";
    case SpecialVerdict::even_square_missing:
      return "even_parity_square_missing";
    case SpecialVerdict::odd_no_constraint:
      return "odd_parity_no_constraint";
  }
  return "unknown";
}

SpecialQuadReport count_special_quads(const DistanceField& field, double size,
                                      const std::optional<GeneratorPath>& path,
                                      const SpecialQuadSettings& settings) {
  if (!(size > 0.0 && size < 1.0)) throw InvalidInput("size must lie in (0, 1)");
  SpecialQuadReport out;
  out.path = path.value_or(GeneratorPath{size, 0.0, 0.0, 1});
  out.path.size = size;
  const SpecialSliceSystem system(field, out.path);
  CountReport& count = out.count;
  count.kind = "special_quad";

  const int d = settings.inner_denominator;
  std::vector<Eigen::VectorXd> seeds;
  for (int k = 0; k < settings.t_values; ++k) {
    const double t = static_cast<double>(k) / settings.t_values;
    const double first = out.path.first(t);
    const double span = out.path.last(t) - first;
    for (int i = 1; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        Eigen::VectorXd u(3);
        u << t, first + span * i / d, first + span * j / d;
        seeds.push_back(std::move(u));
      }
    }
  }
  count.seeds = static_cast<long>(seeds.size());
  {
    std::ostringstream s;
    s << settings.t_values << " slice parameters x " << (d - 1) * (d - 2) / 2 << " inner seeds";
    count.resolution = s.str();
  }
  const auto results = multistart(system, seeds, settings.finder.trace.solver());

  std::vector<Eigen::VectorXd> special;
  for (const auto& r : results) {
    if (!r.ok()) continue;
    ++count.converged;
    const Eigen::VectorXd& u = r.u;
    SpecialQuadEvaluation eval;
    try {
      eval = special_quad_residual(field, CirclePoint(u[0]), CirclePoint(u[1]), CirclePoint(u[2]), out.path, 1e-8);
    } catch (const InvalidInput&) {
      continue;
    }
    if (!eval.is_special) continue;
    bool seen = false;
    for (const auto& s : special) seen = seen || system.difference(u, s).norm() < settings.dedupe_tol;
    if (seen) continue;
    special.push_back(u);
    OrbitRecord rec;
    const Eigen::VectorXd v = system.vertices(u);
    rec.representative = PolygonParam::from_lifted(v);
    rec.residual = eval.residual.norm();
    rec.orbit_size = 1;
    rec.condition = jacobian_condition(system, u);
    rec.non_transversal = rec.condition > settings.condition_limit;
    rec.is_special = true;
    rec.boundary_degenerate = eval.boundary_degenerate;
    rec.a = eval.a;
    rec.b = eval.b;
    rec.size = eval.size;
    if (rec.boundary_degenerate) {
      count.parity_reliable = false;
      count.warnings.push_back("special quadrilateral within 1e-9 of the a = b tie");
    }
    if (rec.non_transversal) {
      count.parity_reliable = false;
      count.warnings.push_back("special quadrilateral is not isolated in the slice");
    }
    count.orbits.push_back(std::move(rec));
  }
  count.orbit_count = static_cast<int>(count.orbits.size());
  count.total = count.orbit_count;
  count.parity = count.orbit_count % 2;

  if (count.parity == 1) {
    out.verdict = SpecialVerdict::odd_no_constraint;
    return out;
  }
  try {
    out.square = find_square(field, settings.finder);
    if (out.square->residual <= 1e-8) {
      out.verdict = SpecialVerdict::even_square_found;
      return out;
    }
    out.square_failure = "continuation square residual " + std::to_string(out.square->residual);
  } catch (const NumericalFailure& e) {
    out.square_failure = e.what();
  }
  const SystemPtr squares = square_system(field);
  const auto candidates = multistart(*squares, quadrilateral_seeds(8, 12), settings.finder.trace.solver());
  for (const auto& r : candidates) {
    if (!r.ok()) continue;
    if (!out.multistart_square || r.residual_norm < out.multistart_residual) {
      out.multistart_square = PolygonParam::from_lifted(r.u);
      out.multistart_residual = r.residual_norm;
    }
  }
  out.verdict = out.multistart_square ? SpecialVerdict::even_square_found : SpecialVerdict::even_square_missing;
  return out;
}

SpecialPathReport trace_special_paths(const DistanceField& field, double seed_size,
                                      const SpecialQuadSettings& settings) {
  SpecialPathReport out;
  out.seed_size = seed_size;
  const SpecialQuadReport seeds = count_special_quads(field, seed_size, std::nullopt, settings);
  out.seeds = seeds.count.orbit_count;
  const SystemPtr system = special_quad_system(field);
  // a - b changes sign where the path meets a square.
  const EventFunction tie = [field](const Eigen::VectorXd& u) {
    return field(u[0], u[1]) - field(u[3], u[0]);
  };
  const std::vector<EventSpec> events{{EventKind::square_on_branch, tie}};
  for (const auto& orbit : seeds.count.orbits) {
    const Eigen::VectorXd start = orbit.representative.lifted();
    bool covered = false;
    for (const auto& p : out.paths) covered = covered || branch_contains(p.branch, start, 1e-6);
    if (covered) continue;
    SpecialPath path;
    try {
      path.branch = trace_branch(system, start, settings.finder.trace, events);
    } catch (const NumericalFailure& e) {
      out.failures.push_back(e.what());
      continue;
    }
    path.min_size = std::numeric_limits<double>::infinity();
    path.max_size = -path.min_size;
    for (const auto& u : path.branch.samples) {
      const double size = u[3] - u[0];
      path.min_size = std::min(path.min_size, size);
      path.max_size = std::max(path.max_size, size);
    }
    path.square_crossings = path.branch.count(EventKind::square_on_branch);
    out.paths.push_back(std::move(path));
  }
  return out;
}

RectangleReport classify_rectangle_components(const ClosedCurve& curve, const CountSettings& settings) {
  RectangleReport out;
  out.squares = count_squares(curve, settings);
  if (out.squares.rejected) {
    out.warnings.push_back("squares are not isolated; rectangle components not classified");
    out.total_4_mod_8 = false;
    return out;
  }
  const DistanceField field = field_from_curve(curve);
  const SystemPtr system = rectangle_system(field);
  const std::vector<EventSpec> events{{EventKind::square_on_branch, square_event(field)}};
  for (const auto& orbit : out.squares.orbits) {
    for (int k = 0; k < 4; ++k) {
      const Eigen::VectorXd start = shift_lifted(orbit.representative.lifted(), k);
      bool covered = false;
      for (const auto& c : out.components) covered = covered || branch_contains(c.branch, start, 1e-6);
      if (covered) continue;
      RectangleComponent comp;
      try {
        comp.branch = trace_branch(system, start, settings.finder.trace, events);
      } catch (const NumericalFailure& e) {
        out.warnings.push_back(std::string("rectangle branch through a square could not be traced: ") + e.what());
        continue;
      }
      comp.square_events = comp.branch.count(EventKind::square_on_branch);
      out.components.push_back(std::move(comp));
    }
  }
  int r1 = 0;
  int r2 = 0;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    const auto& c = out.components[i];
    out.total_square_events += c.square_events;
    if (!c.branch.closed) {
      ++out.open_components;
      out.warnings.push_back("component " + std::to_string(i) +
                             " reaches the boundary; excluded from the parity bookkeeping");
      continue;
    }
    ++out.closed_components;
    if (c.square_events % 2 != 0) out.closed_even = false;
    switch (c.branch.isotropy_order) {
      case 1:
        r1 += c.square_events;
        break;
      case 2:
        r2 += c.square_events;
        break;
      default:
        if (c.square_events % 8 != 4) out.r4_each_4_mod_8 = false;
        break;
    }
  }
  out.r1_divisible_by_8 = r1 % 8 == 0;
  out.r2_divisible_by_8 = r2 % 8 == 0;
  out.total_4_mod_8 = out.squares.total % 8 == 4;
  return out;
}

double quad_signed_area(const std::array<Eigen::Vector3d, 4>& p) {
  double area = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % 4];
    area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * area;
}

bool orientation_check(const ClosedCurve& curve, std::span<const CirclePoint> order) {
  if (order.size() != 4) throw InvalidInput("orientation check needs four vertices");
  const std::array<Eigen::Vector3d, 4> p{curve.point(order[0]), curve.point(order[1]), curve.point(order[2]),
                                         curve.point(order[3])};
  double area = quad_signed_area(p);
  if (curve.signed_area() < 0.0) area = -area;
  return area > 0.0;
}

bool orientation_check(const ClosedCurve& curve, const PolygonParam& square) {
  const auto xs = vertices(square);
  return orientation_check(curve, std::span<const CirclePoint>(xs));
}

}  // namespace pegfinder
