#include <doctest.h>

#include "pegfinder/continuation.hpp"
#include "pegfinder/counting.hpp"
#include "pegfinder/errors.hpp"
#include "pegfinder/solver.hpp"
#include "support.hpp"

using namespace pegfinder;

TEST_CASE("refine converges to the symmetric circle square") {
  const SystemPtr s = square_system(corpus_field("circle"));
  const PolygonParam start(CirclePoint(0.0), {0.24, 0.26, 0.25, 0.25});
  const PolygonParam p = PolygonParam::from_lifted(refine(*s, start.lifted()));
  for (double g : p.gaps()) CHECK(g == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("refine finds the ellipse square from nearby angles") {
  const SystemPtr s = square_system(corpus_field("ellipse"));
  const double t = testing::kEllipseSquareT;
  const PolygonParam start(CirclePoint(t + 0.01), {0.5 - 2 * t - 0.01, 2 * t + 0.02, 0.5 - 2 * t, 2 * t - 0.01});
  const Eigen::VectorXd u = refine(*s, start.lifted());
  CHECK(s->residual(u).norm() < 1e-10);
  const PolygonParam exact(CirclePoint(t), {0.5 - 2 * t, 2 * t, 0.5 - 2 * t, 2 * t});
  CHECK(orbit_distance(PolygonParam::from_lifted(u), exact) < 1e-9);
}

TEST_CASE("refine takes least-squares steps on underdetermined systems") {
  // Squares on the circle form a family, so the Jacobian is singular there.
  const SystemPtr s = square_system(corpus_field("circle"));
  const PolygonParam exact(CirclePoint(0.1), {0.25, 0.25, 0.25, 0.25});
  CHECK(jacobian_condition(*s, exact.lifted()) > 1e10);
  const PolygonParam start(CirclePoint(0.1), {0.2, 0.3, 0.22, 0.28});
  const SolveResult r = try_refine(*s, start.lifted());
  CHECK(r.ok());
  CHECK(r.residual_norm < 1e-10);
}

TEST_CASE("refine reports boundary exits and failures") {
  const SystemPtr s = square_system(corpus_field("ellipse"));
  SolverSettings settings;
  settings.max_iterations = 0;
  const PolygonParam start(CirclePoint(0.0), {0.1, 0.4, 0.1, 0.4});
  CHECK_THROWS_AS(refine(*s, start.lifted(), settings), NumericalFailure);
  const PolygonParam edge(CirclePoint(0.0), {0.00001, 0.5, 0.25, 0.24999});
  CHECK(try_refine(*s, edge.lifted()).status == SolveStatus::boundary);
}

TEST_CASE("trace settings are validated") {
  TraceSettings s;
  CHECK_NOTHROW(s.validate());
  s.corrector_tol = 1e-5;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s = TraceSettings{};
  s.step_max = -1.0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
}

TEST_CASE("circle equal-edge triangles form one closed rotating branch") {
  const SystemPtr s = edge_ratio_system(corpus_field("circle"), {1.0, 1.0});
  const PolygonParam start(CirclePoint(0.0), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const TraceSettings settings;
  const Branch b = trace_branch(s, start.lifted(), settings);
  CHECK(b.closed);
  CHECK(std::abs(winding_number(b)) == 1);
  CHECK(isotropy(b, settings) == 3);
  for (const auto& u : b.samples) CHECK(s->residual(u).norm() <= settings.corrector_tol);
  for (std::size_t i = 1; i < b.samples.size(); ++i)
    CHECK(s->difference(b.samples[i], b.samples[i - 1]).norm() <= settings.step_max * (1.0 + 1e-9));
}

TEST_CASE("circle square family has winding one and isotropy four") {
  const SystemPtr s = rhombus_system(corpus_field("circle"));
  const PolygonParam start(CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25});
  const Branch b = trace_branch(s, start.lifted());
  CHECK(b.closed);
  CHECK(std::abs(winding_number(b)) == 1);
  CHECK(isotropy(b) == 4);
}

TEST_CASE("circle rectangles sweep between the two degenerate ends") {
  const SystemPtr s = rectangle_system(corpus_field("circle"));
  const PolygonParam start(CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25});
  const Branch b = trace_branch(s, start.lifted(), {}, {EventSpec{EventKind::square_on_branch, square_event(corpus_field("circle"))}});
  CHECK_FALSE(b.closed);
  CHECK(b.count(EventKind::boundary_approach) == 2);
  CHECK(b.count(EventKind::square_on_branch) == 1);
  CHECK_THROWS_AS(winding_number(b), InvalidInput);
  CHECK(isotropy(b) == 1);
  double lo = 1.0, hi = 0.0;
  for (const auto& u : b.samples) {
    const PolygonParam p = PolygonParam::from_lifted(u);
    const auto& g = p.gaps();
    // (0, u, 1/2, 1/2 + u) up to rotation.
    CHECK(g[0] == doctest::Approx(g[2]).epsilon(1e-8));
    CHECK(g[0] + g[1] == doctest::Approx(0.5).epsilon(1e-8));
    lo = std::min(lo, g[0]);
    hi = std::max(hi, g[0]);
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 0.5 - 1e-3);
}

TEST_CASE("a contractible loop has winding zero") {
  Branch b;
  b.closed = true;
  b.system = rhombus_system(corpus_field("circle"));
  for (int i = 0; i < 32; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 32;
    b.samples.push_back(PolygonParam(CirclePoint(0.1 + 0.01 * std::cos(a)),
                                     {0.25 + 0.01 * std::sin(a), 0.25, 0.25 - 0.01 * std::sin(a), 0.25})
                            .lifted());
  }
  CHECK(winding_number(b) == 0);
}

TEST_CASE("equal-edge winding sums and full isotropy on a random curve") {
  CorpusParams p;
  p.seed = 3;
  const DistanceField f = corpus_field("fourier-random", p);
  for (int n = 3; n <= 5; ++n) {
    const SystemPtr s = edge_ratio_system(f, std::vector<double>(n - 1, 1.0));
    const auto starts = star_slice_solutions(s, 0.1, 12);
    const auto branches = trace_components(s, starts);
    CHECK(std::abs(winding_sum(branches)) == 1);
    int best = 0;
    for (const auto& b : branches)
      if (b.closed) best = std::max(best, b.isotropy_order);
    CHECK(best == n);
  }
}

TEST_CASE("a generic closed rhombus-type branch can have trivial isotropy") {
  CorpusParams p;
  p.seed = 3;
  const DistanceField f = corpus_field("fourier-random", p);
  const SystemPtr s = edge_ratio_system(f, {1.3, 1.0, 1.3});
  const auto branches = trace_components(s, star_slice_solutions(s, 0.1, 16));
  bool any_closed = false;
  for (const auto& b : branches) {
    if (!b.closed) continue;
    any_closed = true;
    CHECK(b.isotropy_order <= 2);
  }
  CHECK(any_closed);
}

TEST_CASE("tracing is deterministic") {
  const SystemPtr s = rhombus_system(corpus_field("ellipse"));
  const auto starts = star_slice_solutions(s, 0.1, 12);
  REQUIRE_FALSE(starts.empty());
  const Branch a = trace_branch(s, starts.front());
  const Branch b = trace_branch(s, starts.front());
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("the spiral special-quadrilateral path runs from size near zero to one") {
  const SpecialPathReport r = trace_special_paths(corpus_field("spiral"), 0.1);
  REQUIRE(r.paths.size() >= 1);
  const SpecialPath& path = r.paths.front();
  CHECK_FALSE(path.branch.closed);
  CHECK(path.min_size < 0.01);
  CHECK(path.max_size > 0.99);
  CHECK(path.branch.count(EventKind::boundary_approach) == 2);
}
