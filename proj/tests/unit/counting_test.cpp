#include <doctest.h>

#include "pegfinder/counting.hpp"
#include "pegfinder/errors.hpp"
#include "support.hpp"

using namespace pegfinder;

namespace {

CountSettings coarse() {
  CountSettings s;
  s.star_values = 16;
  s.denominator = 16;
  return s;
}

}  // namespace

TEST_CASE("the ellipse has one square orbit") {
  const CountReport r = count_squares(corpus_curve("ellipse"));
  CHECK_FALSE(r.rejected);
  CHECK(r.orbit_count == 1);
  CHECK(r.total == 4);
  CHECK(r.parity == 1);
  CHECK(r.seeds >= 64L * 64 * 64);
  CHECK(r.orbits.front().residual < 1e-10);
}

TEST_CASE("the circle is rejected with a family diagnostic") {
  const CountReport r = count_squares(corpus_curve("circle"));
  CHECK(r.rejected);
  CHECK_FALSE(r.parity_reliable);
  CHECK(r.diagnostic.find("family") != std::string::npos);
}

TEST_CASE("orbit counts do not depend on the grid resolution") {
  CorpusParams p;
  p.seed = 5;
  const ClosedCurve c = corpus_curve("fourier-random", p);
  CountSettings fine = coarse();
  fine.star_values *= 2;
  fine.denominator *= 2;
  CHECK(count_squares(c, coarse()).orbit_count == count_squares(c, fine).orbit_count);
}

TEST_CASE("no special quadrilaterals of size 0.1 on the circle") {
  const SpecialQuadReport r = count_special_quads(corpus_field("circle"), 0.1);
  CHECK(r.count.orbit_count == 0);
  CHECK(r.count.parity == 0);
  CHECK(r.verdict == SpecialVerdict::even_square_found);
}

TEST_CASE("special quadrilateral reports are consistent") {
  for (const char* name : {"ellipse", "cusped", "spiral"}) {
    for (double size : {0.1, 0.5}) {
      const SpecialQuadReport r = count_special_quads(corpus_field(name), size);
      CHECK(r.count.parity == r.count.orbit_count % 2);
      if (r.count.parity == 0) CHECK_MESSAGE(r.verdict == SpecialVerdict::even_square_found, name);
      for (const OrbitRecord& o : r.count.orbits) {
        CHECK(std::abs(o.size - size) < 1e-9);
        CHECK(o.residual < 1e-10);
        CHECK(o.a >= o.b - 1e-9);
      }
    }
  }
}

TEST_CASE("generator path perturbations keep the parity") {
  const DistanceField f = corpus_field("spiral");
  const int base = count_special_quads(f, 0.3).count.parity;
  GeneratorPath wobbly{0.3, 0.01, -0.01, 2};
  CHECK(count_special_quads(f, 0.3, wobbly).count.parity == base);
}

TEST_CASE("special quadrilateral sizes must lie in (0, 1)") {
  CHECK_THROWS_AS(count_special_quads(corpus_field("circle"), 0.0), InvalidInput);
  CHECK_THROWS_AS(count_special_quads(corpus_field("circle"), 1.0), InvalidInput);
}

TEST_CASE("special quadrilaterals on the spiral exist for all sizes" * doctest::may_fail()) {
  const DistanceField f = corpus_field("spiral");
  for (double size : {0.02, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.98})
    CHECK_MESSAGE(count_special_quads(f, size).count.orbit_count > 0, "size " << size);
}

TEST_CASE("rectangle components through the ellipse square") {
  const RectangleReport r = classify_rectangle_components(corpus_curve("ellipse"));
  CHECK(r.squares.orbit_count == 1);
  CHECK(r.closed_even);
  CHECK(r.total_4_mod_8);
  for (const auto& c : r.components) {
    CHECK(c.square_events >= 1);
    if (c.branch.closed) CHECK(c.square_events % 2 == 0);
  }
}

TEST_CASE("rectangle bookkeeping on a random Fourier curve") {
  CorpusParams p;
  p.seed = 5;
  const RectangleReport r = classify_rectangle_components(corpus_curve("fourier-random", p));
  CHECK(r.closed_even);
  CHECK((4 * r.squares.orbit_count) % 8 == 4);
}

TEST_CASE("the circle is rejected for rectangle components") {
  const RectangleReport r = classify_rectangle_components(corpus_curve("circle"));
  CHECK(r.squares.rejected);
  CHECK(r.components.empty());
}

TEST_CASE("orientation of inscribed squares") {
  const SquareResult s = find_square(corpus_curve("ellipse"));
  CHECK(orientation_check(corpus_curve("ellipse"), s.square));
  auto xs = vertices(s.square);
  std::reverse(xs.begin(), xs.end());
  CHECK_FALSE(orientation_check(corpus_curve("ellipse"), xs));
  const PolygonParam sq(CirclePoint(0.0), {0.25, 0.25, 0.25, 0.25});
  CHECK(orientation_check(corpus_curve("circle"), sq));
  CHECK(quad_signed_area({Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(-1, 0, 0),
                          Eigen::Vector3d(0, -1, 0)}) == doctest::Approx(2.0));
}
