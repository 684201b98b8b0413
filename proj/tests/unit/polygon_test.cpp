#include <doctest.h>

#include "pegfinder/errors.hpp"
#include "pegfinder/polygon.hpp"
#include "support.hpp"

using namespace pegfinder;

TEST_CASE("gaps must lie on the simplex") {
  CHECK_NOTHROW(PolygonParam(CirclePoint(0.1), {0.25, 0.25, 0.25, 0.25}));
  CHECK_THROWS_AS(PolygonParam(CirclePoint(0.1), {0.5, 0.5, 0.5, 0.5}), InvalidInput);
  CHECK_THROWS_AS(PolygonParam(CirclePoint(0.1), {1.1, -0.1}), InvalidInput);
  CHECK_THROWS_AS(PolygonParam(CirclePoint(0.1), {1.0}), InvalidInput);
}

TEST_CASE("vertices and the bracket map are inverse") {
  const PolygonParam p(CirclePoint(0.9), {0.1, 0.2, 0.3, 0.4});
  const auto xs = vertices(p);
  CHECK(xs[1].value() == doctest::Approx(0.0));
  CHECK(xs[2].value() == doctest::Approx(0.2));
  const PolygonParam q = from_vertices(xs);
  CHECK(param_distance(p, q) < 1e-15);

  const std::vector<CirclePoint> bad = {CirclePoint(0.0), CirclePoint(0.5), CirclePoint(0.25)};
  CHECK_THROWS_AS(from_vertices(bad), InvalidInput);
}

TEST_CASE("the cyclic shift rotates the star base by 1/n") {
  for (int n = 3; n <= 6; ++n) {
    const PolygonParam p = PolygonParam::from_lifted(testing::random_lifted(n, static_cast<std::uint64_t>(n)));
    const PolygonParam q = cyclic_shift(p);
    CHECK(circle_distance(to_star(q).star_base, CirclePoint(to_star(p).star_base.value() + 1.0 / n)) < 1e-14);
    CHECK(param_distance(cyclic_shift(p, n), p) < 1e-14);
    CHECK(param_distance(from_star(to_star(p)), p) < 1e-14);
  }
}

TEST_CASE("orbit distance and canonical representatives are shift invariant") {
  const PolygonParam p = PolygonParam::from_lifted(testing::random_lifted(4, 7));
  for (int k = 0; k < 4; ++k) {
    CHECK(orbit_distance(p, cyclic_shift(p, k)) < 1e-14);
    CHECK(param_distance(canonical(cyclic_shift(p, k)), canonical(p)) < 1e-12);
  }
  CHECK(to_star(canonical(p)).star_base.value() < 0.25);
}

TEST_CASE("boundary distance is the smallest gap") {
  const PolygonParam p(CirclePoint(0.0), {0.4, 0.05, 0.3, 0.25});
  CHECK(boundary_distance(p) == doctest::Approx(0.05));
  CHECK(lifted_boundary_distance(p.lifted()) == doctest::Approx(0.05));
  CHECK_FALSE(PolygonParam(CirclePoint(0.0), {0.5, 0.5, 0.0}).interior());
}

TEST_CASE("lifted helpers respect the integer identification") {
  const Eigen::VectorXd v = testing::random_lifted(4, 3);
  const Eigen::VectorXd w = v + Eigen::VectorXd::Constant(4, 2.0);
  CHECK(lifted_difference(w, v).norm() < 1e-14);
  CHECK(lifted_difference(shift_lifted(v, 4), v).norm() < 1e-14);
}
