#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "shapemetrics/min_enclosing_circle.hpp"

using namespace shapemetrics;

TEST_CASE("single point circle has zero radius") {
  const std::vector<Point> pts{{0, 0}};
  const Circle c = min_enclosing_circle(pts);
  CHECK(c.center == Point{0, 0});
  CHECK(c.radius == 0.0);
}

TEST_CASE("three-point example is decided by the diameter pair") {
  const std::vector<Point> pts{{0, 0}, {6, 0}, {3, 3}};
  const Circle c = min_enclosing_circle(pts);
  CHECK(c.center.x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(c.center.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.radius == doctest::Approx(3.0).epsilon(1e-12));
  const oracle::Circle o = oracle::min_enclosing_circle(pts);
  CHECK(o.r == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(min_enclosing_circle(std::vector<Point>{}), std::invalid_argument);
}

TEST_CASE("equilateral triangle uses its circumcircle") {
  const std::vector<Point> pts{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
  CHECK(min_enclosing_circle(pts).radius == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("collinear pixels give the end-to-end diameter") {
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({double(i), 0.0});
  const Circle c = min_enclosing_circle(pts);
  CHECK(c.radius == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(c.center.x == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("random pixel sets match the exhaustive oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(1 + rng.below(30));
    const auto span = 1 + rng.below(trial % 2 ? 40 : 5);  // small spans force duplicates and collinearity
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({double(rng.below(span)), double(rng.below(span))});
    const Circle c = min_enclosing_circle(pts);
    const oracle::Circle o = oracle::min_enclosing_circle(pts);
    CHECK(std::abs(c.radius - o.r) <= 1e-9);
    for (const Point& p : pts) CHECK(std::hypot(p.x - c.center.x, p.y - c.center.y) <= c.radius + 1e-9);
  }
}

TEST_CASE("result does not depend on input order") {
  Rng rng(8);
  std::vector<Point> pts;
  for (int i = 0; i < 200; ++i) pts.push_back({rng.normal(), rng.normal()});
  const double r = min_enclosing_circle(pts).radius;
  std::reverse(pts.begin(), pts.end());
  CHECK(min_enclosing_circle(pts).radius == doctest::Approx(r).epsilon(1e-12));
}
