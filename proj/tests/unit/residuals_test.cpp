#include <doctest.h>

#include "pegfinder/errors.hpp"
#include "pegfinder/residuals.hpp"
#include "support.hpp"

using namespace pegfinder;

namespace {

CorpusParams seeded(std::uint64_t s) {
  CorpusParams p;
  p.seed = s;
  return p;
}

}  // namespace

TEST_CASE("analytic Jacobians match finite differences") {
  const DistanceField ellipse = corpus_field("ellipse");
  const DistanceField synth = corpus_field("synthetic-field", seeded(1));
  const ClosedCurve fourier = corpus_curve("fourier-random", seeded(2));
  const ClosedCurve trefoil = corpus_curve("trefoil");
  const std::vector<std::pair<std::string, SystemPtr>> systems = {
      {"square", square_system(ellipse)},
      {"square synthetic", square_system(synth)},
      {"edge ratio", edge_ratio_system(ellipse, {1.0, 1.5, 0.8, 1.2})},
      {"rhombus", rhombus_system(synth)},
      {"rectangle", rectangle_system(ellipse)},
      {"special", special_quad_system(ellipse)},
      {"triangle", triangle_system(synth)},
      {"two metric", two_metric_system(ellipse, synth, 1)},
      {"parallelogram", parallelogram_system(fourier, 2.0)},
      {"ratio rectangle", ratio_rectangle_system(fourier, 1.5)},
      {"planar rhombus", planar_rhombus_system(trefoil)},
      {"star slice", star_slice(square_system(ellipse), 0.2)},
  };
  for (const auto& [name, s] : systems) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Eigen::VectorXd u = testing::random_lifted(s->domain_dim(), seed);
      CHECK_MESSAGE(testing::jacobian_error(*s, u) < 1e-5, name);
    }
  }

  const SpecialSliceSystem slice(ellipse, GeneratorPath{0.3, 0.02, -0.01, 2});
  CHECK(testing::jacobian_error(slice, Eigen::Vector3d(0.2, 0.3, 0.4)) < 1e-5);

  const OctahedronSystem oct(EmbeddedSphere(Eigen::Vector3d(1.0, 0.8, 0.5)));
  Rng rng(5);
  Eigen::VectorXd u(18);
  for (int i = 0; i < 18; ++i) u[i] = rng.normal();
  CHECK(testing::jacobian_error(oct, u) < 1e-5);
}

TEST_CASE("square residual vanishes on the known squares") {
  const PolygonParam circle_square(CirclePoint(0.13), {0.25, 0.25, 0.25, 0.25});
  CHECK(square_residual(corpus_curve("circle"), circle_square).norm() < 1e-15);

  const double t = testing::kEllipseSquareT;
  const PolygonParam ellipse_square(CirclePoint(t), {0.5 - 2 * t, 2 * t, 0.5 - 2 * t, 2 * t});
  CHECK(square_residual(corpus_curve("ellipse"), ellipse_square).norm() < 1e-14);
  // The vertices are (+-2/sqrt5, +-2/sqrt5).
  for (CirclePoint x : vertices(ellipse_square)) {
    const Eigen::Vector3d p = corpus_curve("ellipse").point(x);
    CHECK(std::abs(p.x()) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(std::abs(p.y()) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-14));
  }
  CHECK(square_closeness(edge_diag_map(corpus_curve("ellipse"), ellipse_square)) < 1e-14);
}

TEST_CASE("zero sets are equivariant under the cyclic action") {
  const DistanceField f = corpus_field("circle");
  const PolygonParam sq(CirclePoint(0.05), {0.25, 0.25, 0.25, 0.25});
  for (const SystemPtr& s : {square_system(f), rhombus_system(f), rectangle_system(f)}) {
    CHECK(s->symmetry_order() == 4);
    CHECK(s->residual(sq.lifted()).norm() < 1e-14);
    CHECK(s->residual(s->act(sq.lifted())).norm() < 1e-14);
  }
  // A generic rectangle on the circle and its images.
  const PolygonParam rect(CirclePoint(0.3), {0.2, 0.3, 0.2, 0.3});
  const SystemPtr r = rectangle_system(f);
  for (int k = 0; k < 4; ++k) CHECK(r->residual(r->act(rect.lifted(), k)).norm() < 1e-14);
}

TEST_CASE("edge ratio symmetry order follows the ratio pattern") {
  const DistanceField f = corpus_field("ellipse");
  CHECK(edge_ratio_system(f, {1, 1, 1, 1})->symmetry_order() == 5);
  CHECK(edge_ratio_system(f, {2, 1, 2})->symmetry_order() == 2);
  CHECK(edge_ratio_system(f, {2, 1, 1})->symmetry_order() == 1);
  CHECK_THROWS_AS(edge_ratio_system(f, {5, 1}), InvalidInput);
}

TEST_CASE("special quadrilateral classifier on the circle") {
  // x1 = 0, x4 = 0.1, equal gaps: a = 2 sin(pi/30) < b = 2 sin(pi/10).
  const DistanceField f = corpus_field("circle");
  const GeneratorPath path{0.1};
  const SpecialQuadEvaluation e =
      special_quad_residual(f, CirclePoint(0.0), CirclePoint(0.1 / 3), CirclePoint(0.2 / 3), path);
  CHECK(e.residual.norm() < 1e-14);
  CHECK(e.a == doctest::Approx(2.0 * std::sin(std::numbers::pi / 30.0)));
  CHECK(e.b == doctest::Approx(2.0 * std::sin(std::numbers::pi / 10.0)));
  CHECK(e.size == doctest::Approx(0.1));
  CHECK_FALSE(e.is_special);
  CHECK_THROWS_AS(special_quad_residual(f, CirclePoint(0.0), CirclePoint(0.5), CirclePoint(0.05), path), InvalidInput);
}

TEST_CASE("triangle residual on the chordal circle") {
  const DistanceField f = corpus_field("circle");
  CHECK(triangle_residual(f, CirclePoint(0.1), CirclePoint(0.1 + 1.0 / 3), CirclePoint(0.1 + 2.0 / 3)).norm() < 1e-14);
  CHECK(triangle_residual(f, CirclePoint(0.1), CirclePoint(0.2), CirclePoint(0.6)).norm() > 0.1);
}

TEST_CASE("parallelogram map vanishes on circle rectangles of the right ratio") {
  const double u = testing::kCircleRatio2Gap;
  const PolygonParam p(CirclePoint(0.0), {u, 0.5 - u, u, 0.5 - u});
  CHECK(parallelogram_residual(corpus_curve("circle"), p, 2.0).norm() < 1e-14);
  CHECK(rectangle_residual(corpus_curve("circle"), p).norm() < 1e-14);
  CHECK(parallelogram_residual(corpus_curve("circle"), p, 1.0).norm() > 0.1);
}

TEST_CASE("planarity measures") {
  const std::array<Eigen::Vector3d, 4> flat = {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
                                               Eigen::Vector3d(-1, 0, 0), Eigen::Vector3d(0, -1, 0)};
  CHECK(coplanarity(flat) == 0.0);
  CHECK(planarity_angle(flat) == doctest::Approx(std::numbers::pi));
  std::array<Eigen::Vector3d, 4> bent = flat;
  bent[1].z() = 0.5;
  CHECK(std::abs(coplanarity(bent)) > 0.1);
  std::array<Eigen::Vector3d, 4> degenerate = flat;
  degenerate[1] = degenerate[0];
  CHECK_THROWS_AS(planarity_angle(degenerate), DegenerateConfiguration);
}

TEST_CASE("regular octahedron on the round sphere") {
  const EmbeddedSphere s(Eigen::Vector3d(1, 1, 1));
  std::array<Eigen::Vector3d, 6> q;
  for (int k = 0; k < 3; ++k) {
    q[k] = Eigen::Vector3d::Unit(k);
    q[k + 3] = -Eigen::Vector3d::Unit(k);
  }
  CHECK(octahedron_residual(s, q).norm() < 1e-15);
  q[3] = q[0];
  CHECK_THROWS_AS(octahedron_residual(s, q), DegenerateConfiguration);
  CHECK(octahedron_edges().size() == 12);
  for (const auto& e : octahedron_edges()) CHECK(std::abs(e[0] - e[1]) != 3);
}

TEST_CASE("event functions change sign where expected") {
  const DistanceField f = corpus_field("circle");
  const PolygonParam rect(CirclePoint(0.0), {0.2, 0.3, 0.2, 0.3});
  const PolygonParam other(CirclePoint(0.0), {0.3, 0.2, 0.3, 0.2});
  const EventFunction sq = square_event(f);
  CHECK(sq(rect.lifted()) * sq(other.lifted()) < 0.0);
  const PolygonParam kite(CirclePoint(0.0), {0.15, 0.15, 0.35, 0.35});
  const PolygonParam kite2(CirclePoint(0.0), {0.35, 0.15, 0.15, 0.35});
  const EventFunction swap = diagonal_swap_event(f);
  CHECK(swap(kite.lifted()) * swap(kite2.lifted()) < 0.0);
}
