#include "pegfinder/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pegfinder/counting.hpp"
#include "pegfinder/curve_io.hpp"
#include "pegfinder/errors.hpp"
#include "pegfinder/finders.hpp"
#include "pegfinder/report.hpp"
#include "pegfinder/svg.hpp"

namespace pegfinder {

namespace {

using nlohmann::json;

struct Options {
  std::string curve_file;
  std::string corpus_name;
  CorpusParams params;
  double tol = 1e-10;
  std::string json_out;
  std::string svg_out;
  bool timing = false;

  double ratio = 1.0;
  int n = 0;
  std::vector<double> ratios;
  double size = 0.0;
  std::string field2_file;
  std::string corpus2_name;
  bool trace_paths = false;
  int octahedron_seeds = 24;
  int star_values = 64;
  int denominator = 32;
};

// Everything a subcommand handler needs.
struct Run {
  const Options& opt;
  std::ostream& out;
  ResultDocument& doc;
  CorpusItem item;
  FinderSettings finder;
};

std::string fmt(double v, int digits = 9) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string join(const std::vector<CirclePoint>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(xs[i].value());
  return s;
}

const ClosedCurve* curve_of(const CorpusItem& item) {
  if (const auto* c = std::get_if<ClosedCurve>(&item)) return c;
  if (const auto* f = std::get_if<DistanceField>(&item))
    if (f->kind() == DistanceField::Kind::chordal) return &f->curve();
  return nullptr;
}

DistanceField field_of(const CorpusItem& item) {
  if (const auto* c = std::get_if<ClosedCurve>(&item)) return field_from_curve(*c);
  if (const auto* f = std::get_if<DistanceField>(&item)) return *f;
  throw InvalidInput("this subcommand needs a curve or a distance field, not a sphere");
}

const ClosedCurve& require_curve(const CorpusItem& item) {
  const ClosedCurve* c = curve_of(item);
  if (!c) throw InvalidInput("this subcommand needs a curve");
  return *c;
}

json describe_input(const Options& opt, const CorpusItem& item, const std::string& corpus_name) {
  json j;
  if (!opt.curve_file.empty()) {
    j["source"] = "file";
    j["path"] = opt.curve_file;
  } else {
    j["source"] = "corpus";
    j["name"] = corpus_name;
    j["params"] = corpus_params_to_json(opt.params);
  }
  std::visit([&](const auto& x) { j["item"] = to_json(x); }, item);
  return j;
}

void add_polygon_figure(Run& run, const std::string& label, const PolygonParam& p) {
  if (const ClosedCurve* c = curve_of(run.item)) run.doc.figures.push_back(figure(label, "polygon", curve_points(*c, vertices(p))));
}

void add_event_figures(Run& run, const Branch& branch) {
  const ClosedCurve* c = curve_of(run.item);
  if (!c) return;
  for (const Event& e : branch.events) {
    if (e.kind == EventKind::boundary_approach || e.location.size() == 0) continue;
    const PolygonParam p = PolygonParam::from_lifted(e.location);
    run.doc.figures.push_back(figure(event_name(e.kind), "event", curve_points(*c, vertices(p))));
  }
}

void add_branch(Run& run, const Branch& branch, std::size_t max_points = 2000) {
  run.doc.branches.push_back(branch_to_json(branch, max_points));
  for (const Event& e : branch.events) {
    json j = event_to_json(e);
    j["branch"] = run.doc.branches.size() - 1;
    run.doc.events.push_back(std::move(j));
  }
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the exit code.

int find_square_cmd(Run& run) {
  const SquareResult r = find_square(field_of(run.item), run.finder);
  json orbits = json::array();
  for (const auto& p : r.multistart_orbits) orbits.push_back(polygon_to_json(p));
  run.doc.result = {{"square", polygon_to_json(r.square)},
                    {"residual", r.residual},
                    {"orbit_count", r.multistart_orbits.size()},
                    {"multistart_orbits", orbits},
                    {"agreement", r.agreement},
                    {"isolated", r.isolated},
                    {"rhombus_branches", r.rhombus_branches},
                    {"swap_events", r.swap_events},
                    {"swap_identically_zero", r.swap_identically_zero}};
  run.doc.counts = {{"square_orbits", r.multistart_orbits.size()}};
  run.doc.verdicts = {{"agrees_with_multistart", r.agrees}};
  if (const ClosedCurve* c = curve_of(run.item)) {
    const bool ccw = orientation_check(*c, r.square);
    run.doc.verdicts["counter_clockwise_labeling"] = ccw;
  }
  add_branch(run, r.rhombus_branch);
  add_polygon_figure(run, "square", r.square);
  add_event_figures(run, r.rhombus_branch);
  run.out << "square: " << join(vertices(r.square)) << "\n";
  run.out << "residual " << fmt(r.residual, 3) << ", " << r.multistart_orbits.size() << " orbit(s) by multistart, "
          << (r.agrees ? "agrees" : "DISAGREES") << " with the swap event (" << fmt(r.agreement, 3) << ")"
          << (r.isolated ? "" : ", squares not isolated") << "\n";
  return kExitOk;
}

int find_rect_cmd(Run& run) {
  const ClosedCurve& curve = require_curve(run.item);
  run.doc.settings["ratio"] = run.opt.ratio;
  const RectangleResult r = find_rectangle(curve, run.opt.ratio, run.finder);
  run.doc.result = {{"found", r.found},
                    {"rectangle", polygon_to_json(r.rectangle)},
                    {"residual", r.residual},
                    {"diagonal_gap", r.diagonal_gap},
                    {"aspect_ratio", r.aspect_ratio},
                    {"method", r.method},
                    {"direct_solutions", r.direct_solutions}};
  for (const Branch& b : r.branches) add_branch(run, b);
  if (!r.found) {
    run.doc.status = "numerical_failure";
    run.doc.diagnostic = r.diagnostic;
    run.out << "no rectangle of ratio " << fmt(run.opt.ratio) << " found: " << r.diagnostic << "\n";
    return kExitNumerical;
  }
  add_polygon_figure(run, "rectangle", r.rectangle);
  run.out << "rectangle: " << join(vertices(r.rectangle)) << "\n";
  run.out << "gaps:";
  for (double g : r.rectangle.gaps()) run.out << " " << fmt(g);
  run.out << "\nresidual " << fmt(r.residual, 3) << ", aspect ratio " << fmt(r.aspect_ratio) << " (" << r.method << ")\n";
  return kExitOk;
}

int find_ngon_cmd(Run& run) {
  std::vector<double> ratios = run.opt.ratios;
  if (ratios.empty()) ratios.assign(static_cast<std::size_t>(std::max(run.opt.n - 1, 0)), 1.0);
  if (run.opt.n < 3) throw InvalidInput("--n must be at least 3");
  if (static_cast<int>(ratios.size()) != run.opt.n - 1)
    throw InvalidInput("--ratios needs n - 1 = " + std::to_string(run.opt.n - 1) + " values");
  run.doc.settings["n"] = run.opt.n;
  run.doc.settings["ratios"] = ratios;
  const NgonResult r = find_ngon_families(field_of(run.item), ratios, run.finder);
  json summary = json::array();
  int closed = 0;
  for (const Branch& b : r.branches) {
    add_branch(run, b);
    summary.push_back({{"closed", b.closed},
                       {"winding", b.closed ? json(b.winding) : json(nullptr)},
                       {"isotropy_order", b.isotropy_order}});
    closed += b.closed;
    if (b.closed && !b.samples.empty()) add_polygon_figure(run, "branch sample", PolygonParam::from_lifted(b.samples.front()));
  }
  run.doc.result = {{"n", r.n},
                    {"ratios", r.ratios},
                    {"symmetry_order", r.symmetry_order},
                    {"slice_solutions", r.slice_solutions},
                    {"components", summary},
                    {"winding_sum", r.winding_sum},
                    {"max_isotropy", r.max_isotropy}};
  run.doc.counts = {{"components", r.branches.size()}, {"closed_components", closed}};
  run.doc.verdicts = {{"winding_sum_is_unit", std::abs(r.winding_sum) == 1},
                      {"full_isotropy_present", r.max_isotropy == r.symmetry_order}};
  run.out << r.branches.size() << " component(s), " << closed << " closed; winding sum " << r.winding_sum
          << "; largest isotropy " << r.max_isotropy << " of " << r.symmetry_order << "\n";
  return kExitOk;
}

int count_special_cmd(Run& run) {
  const DistanceField field = field_of(run.item);
  run.doc.settings["size"] = run.opt.size;
  SpecialQuadSettings settings;
  settings.finder = run.finder;
  const SpecialQuadReport r = count_special_quads(field, run.opt.size, std::nullopt, settings);
  run.doc.counts = count_to_json(r.count);
  run.doc.result = {{"count", r.count.orbit_count},
                    {"parity", r.count.parity == 0 ? "even" : "odd"},
                    {"path", {{"size", r.path.size}, {"wobble_first", r.path.wobble_first},
                              {"wobble_last", r.path.wobble_last}, {"frequency", r.path.frequency}}}};
  if (r.square) {
    run.doc.result["square"] = polygon_to_json(r.square->square);
    run.doc.result["square_residual"] = r.square->residual;
  }
  if (r.multistart_square) {
    run.doc.result["multistart_square"] = polygon_to_json(*r.multistart_square);
    run.doc.result["multistart_residual"] = r.multistart_residual;
  }
  if (!r.square_failure.empty()) run.doc.result["square_failure"] = r.square_failure;
  run.doc.verdicts = {{"special_quads", verdict_name(r.verdict)},
                      {"consistent", r.verdict != SpecialVerdict::even_square_missing}};
  for (const auto& o : r.count.orbits) add_polygon_figure(run, "special quadrilateral", o.representative);
  if (run.opt.trace_paths) {
    const SpecialPathReport paths = trace_special_paths(field, run.opt.size, settings);
    json summary = json::array();
    for (const auto& p : paths.paths) {
      add_branch(run, p.branch);
      summary.push_back({{"min_size", p.min_size}, {"max_size", p.max_size}, {"closed", p.branch.closed},
                         {"square_crossings", p.square_crossings}});
      if (const ClosedCurve* c = curve_of(run.item)) {
        // Vertex tracks of the path, one polyline per vertex.
        for (int k = 0; k < 4; ++k) {
          std::vector<CirclePoint> track;
          for (std::size_t i : decimation_indices(p.branch.samples.size(), 400))
            track.emplace_back(p.branch.samples[i][k]);
          run.doc.figures.push_back(figure("x" + std::to_string(k + 1), "path", curve_points(*c, track)));
        }
      }
      run.out << "path: sizes " << fmt(p.min_size, 4) << " .. " << fmt(p.max_size, 4) << ", "
              << (p.branch.closed ? "closed" : "open") << ", " << p.square_crossings << " square crossing(s)\n";
    }
    run.doc.result["paths"] = summary;
    run.doc.result["path_failures"] = paths.failures;
  }
  run.out << r.count.orbit_count << " special quadrilateral(s) of size " << fmt(run.opt.size) << ", parity "
          << (r.count.parity == 0 ? "even" : "odd") << (r.count.parity_reliable ? "" : " (unreliable)") << "\n";
  run.out << "verdict: " << verdict_name(r.verdict) << "\n";
  return kExitOk;
}

int count_squares_cmd(Run& run) {
  CountSettings settings;
  settings.star_values = run.opt.star_values;
  settings.denominator = run.opt.denominator;
  settings.seed = run.opt.params.seed;
  settings.finder = run.finder;
  run.doc.settings["star_values"] = settings.star_values;
  run.doc.settings["denominator"] = settings.denominator;
  const CountReport r = count_squares(field_of(run.item), settings);
  run.doc.counts = count_to_json(r);
  run.doc.result = {{"orbit_count", r.orbit_count}, {"total", r.total}, {"rejected", r.rejected}};
  run.doc.verdicts = {{"odd_orbit_count", !r.rejected && r.parity == 1}};
  for (const auto& o : r.orbits) add_polygon_figure(run, "square", o.representative);
  if (r.rejected) {
    run.out << "rejected: " << r.diagnostic << "\n";
    return kExitOk;
  }
  run.out << r.orbit_count << " square orbit(s), " << r.total << " labelled squares, parity "
          << (r.parity == 0 ? "even" : "odd") << " (" << r.resolution << ")\n";
  return kExitOk;
}

int rect_components_cmd(Run& run) {
  CountSettings settings;
  settings.star_values = run.opt.star_values;
  settings.denominator = run.opt.denominator;
  settings.finder = run.finder;
  const RectangleReport r = classify_rectangle_components(require_curve(run.item), settings);
  json comps = json::array();
  for (const auto& c : r.components) {
    add_branch(run, c.branch);
    comps.push_back({{"closed", c.branch.closed}, {"isotropy_order", c.branch.isotropy_order},
                     {"square_events", c.square_events}});
  }
  run.doc.counts = count_to_json(r.squares);
  run.doc.result = {{"components", comps},
                    {"closed_components", r.closed_components},
                    {"open_components", r.open_components},
                    {"total_square_events", r.total_square_events},
                    {"total_squares", r.squares.total},
                    {"warnings", r.warnings}};
  run.doc.verdicts = {{"closed_components_even", r.closed_even},
                      {"isotropy_1_divisible_by_8", r.r1_divisible_by_8},
                      {"isotropy_2_divisible_by_8", r.r2_divisible_by_8},
                      {"isotropy_4_each_4_mod_8", r.r4_each_4_mod_8},
                      {"total_4_mod_8", r.total_4_mod_8}};
  if (r.squares.rejected) {
    run.out << "rejected: " << r.squares.diagnostic << "\n";
    return kExitOk;
  }
  run.out << r.components.size() << " rectangle component(s) (" << r.closed_components << " closed, "
          << r.open_components << " open); " << r.squares.total << " squares, "
          << (r.total_4_mod_8 ? "4 mod 8" : "not 4 mod 8") << "\n";
  for (const auto& w : r.warnings) run.out << "warning: " << w << "\n";
  return kExitOk;
}

int triangle_cmd(Run& run, const std::optional<CorpusItem>& second) {
  const DistanceField field = field_of(run.item);
  if (!second) {
    const TriangleResult r = find_equilateral_triangle(field, run.finder);
    run.doc.result = {{"triangle", polygon_to_json(r.triangle)}, {"residual", r.residual}, {"spread", r.spread}};
    run.doc.verdicts = {{"equilateral", r.residual < 1e-8 && r.spread > 1e-3}};
    add_polygon_figure(run, "triangle", r.triangle);
    run.out << "triangle: " << join(vertices(r.triangle)) << " (residual " << fmt(r.residual, 3) << ")\n";
    return kExitOk;
  }
  const TwoMetricResult r = find_two_metric_triangle(field, field_of(*second), run.finder);
  run.doc.result = {{"triangle", polygon_to_json(r.triangle)},
                    {"equilateral_residual", r.equilateral_residual},
                    {"isosceles_residual", r.isosceles_residual},
                    {"isosceles_vertex", r.which}};
  run.doc.verdicts = {{"both_metrics", r.equilateral_residual < 1e-8 && r.isosceles_residual < 1e-8}};
  add_branch(run, r.branch);
  add_polygon_figure(run, "triangle", r.triangle);
  run.out << "triangle: " << join(vertices(r.triangle)) << " (residuals " << fmt(r.equilateral_residual, 3) << ", "
          << fmt(r.isosceles_residual, 3) << ")\n";
  return kExitOk;
}

int knot_rhombus_cmd(Run& run) {
  const RhombusResult r = find_planar_rhombus(require_curve(run.item), run.finder);
  run.doc.result = {{"rhombus", polygon_to_json(r.rhombus)},
                    {"residual", r.residual},
                    {"coplanarity", r.coplanarity},
                    {"angle", r.angle},
                    {"diameter", r.diameter}};
  run.doc.verdicts = {{"planar_rhombus", r.residual < 1e-8 && std::abs(r.coplanarity) < 1e-6}};
  add_branch(run, r.branch);
  add_polygon_figure(run, "rhombus", r.rhombus);
  run.out << "rhombus: " << join(vertices(r.rhombus)) << "\n";
  run.out << "residual " << fmt(r.residual, 3) << ", coplanarity " << fmt(r.coplanarity, 3) << "\n";
  return kExitOk;
}

int octahedra_cmd(Run& run) {
  const auto* sphere = std::get_if<EmbeddedSphere>(&run.item);
  if (!sphere) throw InvalidInput("octahedra needs a sphere (corpus scaled-sphere or a sphere file)");
  run.doc.settings["seeds"] = run.opt.octahedron_seeds;
  const OctahedronResult r = find_octahedra(*sphere, run.finder, run.opt.octahedron_seeds);
  json comps = json::array();
  for (const Branch& b : r.components) {
    add_branch(run, b, 200);
    comps.push_back({{"closed", b.closed}, {"samples", b.samples.size()}});
  }
  run.doc.result = {{"components", comps},
                    {"component_count", r.components.size()},
                    {"orbit_count", r.orbit_count},
                    {"stabilizer", r.stabilizer},
                    {"seeds", r.seeds},
                    {"converged", r.converged},
                    {"max_edge_spread", r.max_edge_spread},
                    {"closed_under_group", r.closed_under_group}};
  run.doc.counts = {{"components", r.components.size()}, {"orbits", r.orbit_count}};
  run.doc.verdicts = {{"sixteen_components", r.components.size() == 16},
                      {"equal_edges", r.max_edge_spread < 1e-8},
                      {"closed_under_group", r.closed_under_group}};
  if (!r.components.empty() && !r.components.front().samples.empty()) {
    const Eigen::VectorXd& u = r.components.front().samples.front();
    std::vector<Eigen::Vector3d> segments;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        if (j == i + 3) continue;
        segments.push_back(sphere->point(u.segment<3>(3 * i)));
        segments.push_back(sphere->point(u.segment<3>(3 * j)));
      }
    run.doc.figures.push_back(figure("octahedron", "segments", segments));
  }
  run.out << r.components.size() << " component(s), " << r.orbit_count << " group orbit(s), stabilizer order "
          << r.stabilizer << "; edge spread " << fmt(r.max_edge_spread, 3) << "\n";
  return kExitOk;
}

int corpus_list_cmd(Run& run) {
  json entries = json::array();
  for (const auto& e : corpus_inventory()) {
    entries.push_back({{"name", e.name}, {"produces", e.produces}, {"description", e.description}});
    run.out << std::left << std::setw(16) << e.name << std::setw(8) << e.produces << e.description << "\n";
  }
  run.doc.result = {{"entries", entries}};
  return kExitOk;
}

void write_outputs(const Options& opt, const ResultDocument& doc) {
  if (!opt.json_out.empty()) write_text_file(opt.json_out, serialize(doc));
  if (!opt.svg_out.empty()) write_text_file(opt.svg_out, render_svg(doc));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical search for inscribed polygons on closed curves"};
  app.name("pegfinder");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options opt;
  auto* curve_opt = app.add_option("--curve", opt.curve_file, "curve, field or sphere JSON file");
  auto* corpus_opt = app.add_option("--corpus", opt.corpus_name, "built-in corpus item (see corpus-list)");
  curve_opt->excludes(corpus_opt);
  app.add_option("--a", opt.params.a, "ellipse semi-axis along x");
  app.add_option("--b", opt.params.b, "ellipse semi-axis along y");
  app.add_option("--radius", opt.params.radius, "circle radius");
  app.add_option("--degree", opt.params.degree, "fourier-random radial degree");
  app.add_option("--amp", opt.params.amp, "fourier-random amplitude");
  app.add_option("--lambda-x", opt.params.lambda_x, "scaled-sphere x scale");
  app.add_option("--lambda-y", opt.params.lambda_y, "scaled-sphere y scale");
  app.add_option("--lambda-z", opt.params.lambda_z, "scaled-sphere z scale");
  app.add_option("--seed", opt.params.seed, "seed for random corpus items and the search");
  app.add_option("--tol", opt.tol, "corrector and Newton tolerance")->check(CLI::PositiveNumber);
  app.add_option("--json", opt.json_out, "write the result document here");
  app.add_option("--svg", opt.svg_out, "write a drawing here");
  app.add_flag("--timing", opt.timing, "record wall time in the result document");

  auto* square = app.add_subcommand("find-square", "square via the diagonal swap on the rhombus family");
  auto* rect = app.add_subcommand("find-rect", "rectangle of a given aspect ratio");
  rect->add_option("--ratio", opt.ratio, "aspect ratio r")->required()->check(CLI::PositiveNumber);
  auto* ngon = app.add_subcommand("find-ngon", "families of n-gons with prescribed edge ratios");
  ngon->add_option("--n", opt.n, "number of vertices")->required()->check(CLI::Range(3, 64));
  ngon->add_option("--ratios", opt.ratios, "n - 1 edge ratios e_i / e_n (default all 1)")->delimiter(',');
  auto* special = app.add_subcommand("count-special", "special quadrilaterals of a given size");
  special->add_option("--size", opt.size, "size in (0, 1)")->required();
  special->add_flag("--trace-paths", opt.trace_paths, "also trace the special-quadrilateral paths through them");
  auto* squares = app.add_subcommand("count-squares", "multistart census of squares");
  squares->add_option("--star-values", opt.star_values, "star bases in the seed grid")->check(CLI::PositiveNumber);
  squares->add_option("--denominator", opt.denominator, "simplex lattice denominator")->check(CLI::Range(4, 256));
  auto* rects = app.add_subcommand("rect-components", "rectangle families through the squares");
  rects->add_option("--star-values", opt.star_values, "star bases in the seed grid")->check(CLI::PositiveNumber);
  rects->add_option("--denominator", opt.denominator, "simplex lattice denominator")->check(CLI::Range(4, 256));
  auto* triangle = app.add_subcommand("triangle", "equilateral triangle, or one for two metrics");
  auto* f2_opt = triangle->add_option("--field2", opt.field2_file, "second curve or field JSON file");
  auto* c2_opt = triangle->add_option("--corpus2", opt.corpus2_name, "second corpus item");
  f2_opt->excludes(c2_opt);
  auto* knot = app.add_subcommand("knot-rhombus", "planar rhombus on a space curve");
  auto* octa = app.add_subcommand("octahedra", "regular octahedra on a scaled sphere");
  octa->add_option("--seeds", opt.octahedron_seeds, "multistart seeds")->check(CLI::Range(1, 10000));
  auto* list = app.add_subcommand("corpus-list", "list the built-in corpus");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  ResultDocument doc;
  doc.command.assign(args.begin() + (args.empty() ? 0 : 1), args.end());
  doc.command.insert(doc.command.begin(), "pegfinder");
  CLI::App* sub = app.get_subcommands().front();
  doc.subcommand = sub->get_name();

  int code = kExitOk;
  try {
    FinderSettings finder;
    finder.trace.corrector_tol = opt.tol;
    finder.trace.seed = opt.params.seed;
    finder.trace.validate();
    Run run{opt, out, doc, CorpusItem{EmbeddedSphere(Eigen::Vector3d::Ones())}, finder};
    if (sub == list) {
      code = corpus_list_cmd(run);
    } else {
      std::string name = opt.corpus_name;
      if (opt.curve_file.empty() && name.empty()) {
        if (sub != octa) throw InvalidInput("give --curve FILE or --corpus NAME");
        name = "scaled-sphere";
      }
      run.item = opt.curve_file.empty() ? corpus(name, opt.params) : item_from_json(read_json_file(opt.curve_file));
      doc.input = describe_input(opt, run.item, name);
      doc.settings = {{"trace", trace_settings_to_json(finder.trace)}, {"seed", opt.params.seed}};
      if (sub == square) code = find_square_cmd(run);
      else if (sub == rect) code = find_rect_cmd(run);
      else if (sub == ngon) code = find_ngon_cmd(run);
      else if (sub == special) code = count_special_cmd(run);
      else if (sub == squares) code = count_squares_cmd(run);
      else if (sub == rects) code = rect_components_cmd(run);
      else if (sub == knot) code = knot_rhombus_cmd(run);
      else if (sub == octa) code = octahedra_cmd(run);
      else if (sub == triangle) {
        std::optional<CorpusItem> second;
        if (!opt.field2_file.empty()) second = item_from_json(read_json_file(opt.field2_file));
        if (!opt.corpus2_name.empty()) second = corpus(opt.corpus2_name, opt.params);
        if (second) {
          json j;
          std::visit([&](const auto& x) { j = to_json(x); }, *second);
          doc.input["second"] = j;
        }
        code = triangle_cmd(run, second);
      }
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // NumericalFailure and DegenerateConfiguration.
    doc.status = "numerical_failure";
    doc.diagnostic = e.what();
    err << "numerical failure: " << e.what() << "\n";
    code = kExitNumerical;
  }

  if (opt.timing)
    doc.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_outputs(opt, doc);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace pegfinder
