#include <doctest.h>

#include "pegfinder/errors.hpp"
#include "pegfinder/finders.hpp"
#include "support.hpp"

using namespace pegfinder;

TEST_CASE("circle square") {
  const SquareResult r = find_square(corpus_curve("circle"));
  for (double g : r.square.gaps()) CHECK(g == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r.residual < 1e-8);
  CHECK_FALSE(r.isolated);
}

TEST_CASE("ellipse square matches the algebraic solution") {
  const SquareResult r = find_square(corpus_curve("ellipse"));
  const double t = testing::kEllipseSquareT;
  const PolygonParam exact(CirclePoint(t), {0.5 - 2 * t, 2 * t, 0.5 - 2 * t, 2 * t});
  CHECK(orbit_distance(r.square, exact) < 1e-9);
  CHECK(r.residual < 1e-10);
  CHECK(r.agrees);
  CHECK(r.multistart_orbits.size() == 1);
  CHECK(r.swap_events >= 1);
}

TEST_CASE("squares on random Fourier curves agree with multistart") {
  for (std::uint64_t seed : {0u, 8u, 15u}) {
    CorpusParams p;
    p.seed = seed;
    const SquareResult r = find_square(corpus_curve("fourier-random", p));
    CHECK(r.residual < 1e-8);
    CHECK(r.agrees);
    CHECK(r.agreement < 1e-6);
  }
}

TEST_CASE("polyline curves use secant Jacobians") {
  const ClosedCurve pentagon = ClosedCurve::polyline(
      2, {{1, 0, 0}, {0.4, 0.9, 0}, {-0.8, 0.6, 0}, {-0.7, -0.7, 0}, {0.3, -0.95, 0}});
  const SquareResult r = find_square(pentagon);
  CHECK(r.residual < 1e-8);
}

TEST_CASE("rectangles of aspect ratio two") {
  const RectangleResult c = find_rectangle(corpus_curve("circle"), 2.0);
  REQUIRE(c.found);
  const auto& g = c.rectangle.gaps();
  CHECK(std::min(std::abs(g[0] - testing::kCircleRatio2Gap), std::abs(g[1] - testing::kCircleRatio2Gap)) < 1e-8);
  CHECK(c.aspect_ratio == doctest::Approx(2.0).epsilon(1e-8));

  const RectangleResult e = find_rectangle(corpus_curve("ellipse"), 2.0);
  REQUIRE(e.found);
  CHECK(e.residual < 1e-8);
  // Substitution: opposite sides parallel and equal, diagonals equal, sides in ratio 2.
  const ClosedCurve curve = corpus_curve("ellipse");
  const auto xs = vertices(e.rectangle);
  const Eigen::Vector3d p0 = curve.point(xs[0]), p1 = curve.point(xs[1]), p2 = curve.point(xs[2]), p3 = curve.point(xs[3]);
  CHECK(((p1 - p0) + (p3 - p2)).norm() < 1e-8);
  CHECK(std::abs((p2 - p0).norm() - (p3 - p1).norm()) < 1e-8);
  CHECK((p1 - p0).norm() / (p2 - p1).norm() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("rectangle of ratio one on the circle is the square") {
  const RectangleResult r = find_rectangle(corpus_curve("circle"), 1.0);
  REQUIRE(r.found);
  for (double g : r.rectangle.gaps()) CHECK(g == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("rectangles need a planar curve and a positive ratio") {
  CHECK_THROWS_AS(find_rectangle(corpus_curve("trefoil"), 2.0), InvalidInput);
  CHECK_THROWS_AS(find_rectangle(corpus_curve("circle"), -1.0), InvalidInput);
}

TEST_CASE("equilateral triangles") {
  const TriangleResult c = find_equilateral_triangle(corpus_field("circle"));
  for (double g : c.triangle.gaps()) CHECK(g == doctest::Approx(1.0 / 3).epsilon(1e-9));

  const TriangleResult e = find_equilateral_triangle(corpus_field("ellipse"));
  CHECK(e.residual < 1e-8);
  CHECK(e.spread > 1e-3);
  const auto xs = vertices(e.triangle);
  const ClosedCurve curve = corpus_curve("ellipse");
  const double d01 = curve.chord(xs[0], xs[1]), d12 = curve.chord(xs[1], xs[2]), d20 = curve.chord(xs[2], xs[0]);
  CHECK(std::abs(d01 - d12) < 1e-8);
  CHECK(std::abs(d12 - d20) < 1e-8);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CorpusParams p;
    p.seed = seed;
    const TriangleResult r = find_equilateral_triangle(corpus_field("synthetic-field", p));
    CHECK(r.residual < 1e-8);
    CHECK(r.spread > 1e-3);
  }
}

TEST_CASE("two-metric triangles") {
  const TwoMetricResult same = find_two_metric_triangle(corpus_field("circle"), corpus_field("circle"));
  CHECK(same.equilateral_residual < 1e-8);
  CHECK(same.isosceles_residual < 1e-8);

  const TwoMetricResult mod = find_two_metric_triangle(corpus_field("circle"), corpus_field("modulated-field"));
  CHECK(mod.equilateral_residual < 1e-8);
  CHECK(mod.isosceles_residual < 1e-8);
  CHECK(mod.branch.closed);

  CorpusParams p;
  p.seed = 3;
  const TwoMetricResult r = find_two_metric_triangle(corpus_field("ellipse"), corpus_field("synthetic-field", p));
  CHECK(r.equilateral_residual < 1e-8);
  CHECK(r.isosceles_residual < 1e-8);
}

TEST_CASE("planar rhombi on space curves") {
  const RhombusResult t = find_planar_rhombus(corpus_curve("trefoil"));
  CHECK(t.residual < 1e-8);
  CHECK(std::abs(t.coplanarity) < 1e-6);
  CHECK(t.diameter > 1e-3);

  const RhombusResult flat = find_planar_rhombus(corpus_curve("ellipse"));
  CHECK(flat.residual < 1e-8);
  CHECK(std::abs(flat.coplanarity) < 1e-12);

  const RhombusResult tilted = find_planar_rhombus(corpus_curve("tilted-circle"));
  CHECK(tilted.residual < 1e-8);
  CHECK(std::abs(tilted.coplanarity) < 1e-6);
}

TEST_CASE("edge-ratio families report their winding sum") {
  CorpusParams p;
  p.seed = 7;
  const NgonResult r = find_ngon_families(corpus_field("fourier-random", p), {1, 1, 1, 1});
  CHECK(r.symmetry_order == 5);
  CHECK(std::abs(r.winding_sum) == 1);
  CHECK(r.max_isotropy == 5);
}

TEST_CASE("octahedron group") {
  const auto& g = octahedron_group();
  CHECK(g.size() == 48);
  Rng rng(1);
  Eigen::VectorXd u(18);
  for (int i = 0; i < 18; ++i) u[i] = rng.normal();
  for (const LabelMap& m : g) {
    // Opposite pairs stay opposite.
    for (int i = 0; i < 3; ++i) CHECK((m[i] + 3) % 6 == m[i + 3]);
    CHECK(act_labels(m, u).norm() == doctest::Approx(u.norm()));
  }
}

TEST_CASE("octahedra on the scaled sphere") {
  const OctahedronResult r = find_octahedra(EmbeddedSphere(Eigen::Vector3d(1, 1, 0.5)));
  CHECK(r.components.size() == 16);
  CHECK(r.orbit_count == 1);
  CHECK(r.stabilizer == 3);
  CHECK(r.max_edge_spread < 1e-8);
  CHECK(r.closed_under_group);
  for (const auto& b : r.components) CHECK(b.closed);
}

TEST_CASE("the round sphere is rejected") {
  CHECK_THROWS_AS(find_octahedra(EmbeddedSphere(Eigen::Vector3d(1, 1, 1))), InvalidInput);
}
