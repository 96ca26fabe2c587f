#include <doctest.h>

#include <cmath>

#include "tsclust/error.hpp"
#include "tsclust/series.hpp"

using namespace tsclust;

TEST_CASE("RawSeries validates its observations") {
  const RawSeries y("a", 2, {0.25, 0.5, 1.0}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  CHECK(y.m() == 3);
  CHECK(y.s() == 2);
  CHECK(y.value(1)[0] == 0.3);
  CHECK(y.value(2)[1] == 0.6);
  CHECK_THROWS_AS(RawSeries("b", 1, {0.0, 0.5}, {1, 2}), Error);
  CHECK_THROWS_AS(RawSeries("b", 1, {0.5, 1.5}, {1, 2}), Error);
  CHECK_THROWS_AS(RawSeries("b", 1, {0.5, 0.5}, {1, 2}), Error);
  CHECK_THROWS_AS(RawSeries("b", 1, {0.6, 0.5}, {1, 2}), Error);
  CHECK_THROWS_AS(RawSeries("b", 2, {0.5, 1.0}, {1, 2, 3}), Error);
  CHECK_THROWS_AS(RawSeries("b", 1, {0.5, 1.0}, {1, NAN}), Error);
  CHECK_THROWS_AS(RawSeries("b", 1, {}, {}), Error);
  // Observations may leave [0, 1]; only grid values are confined.
  CHECK_NOTHROW(RawSeries("c", 1, {1.0}, {-3.0}));
}

TEST_CASE("uniform times are j/m") {
  const auto y = RawSeries::uniform("u", 1, {1, 2, 3, 4});
  REQUIRE(y.m() == 4);
  CHECK(y.times()[0] == 0.25);
  CHECK(y.times()[3] == 1.0);
}

TEST_CASE("GridSeries layout and bounds") {
  const GridSeries g("g", 2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  CHECK(g.at_slot(1)[0] == 0.3);
  CHECK(GridSeries::slot_time(0, 4) == 0.25);
  CHECK(GridSeries::slot_time(3, 4) == 1.0);
  CHECK_THROWS_AS(GridSeries("g", 1, 2, {0.5, 1.5}), Error);
  CHECK_THROWS_AS(GridSeries("g", 1, 2, {0.5}), Error);
}

TEST_CASE("flatten is time-major and round-trips") {
  const GridSeries g("g", 2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  const auto p = flatten(g);
  REQUIRE(p.dim() == 6);
  CHECK(p.coords()[2] == 0.3);
  CHECK(p.source_id() == "g");
  CHECK(unflatten(p, 2, 3) == g);
  CHECK_THROWS_AS(unflatten(p, 4, 2), Error);
  CHECK_THROWS_AS(FlatPoint({0.5, -0.1}, "x"), Error);
}

TEST_CASE("distances") {
  const std::vector<double> a{0.1, 0.5, 0.9};
  const std::vector<double> b{0.2, 0.1, 0.9};
  CHECK(sup_distance(a, b) == doctest::Approx(0.4));
  CHECK(sup_distance(a, a) == 0.0);
  const PathFn f = [](double t) { return std::vector<double>{t, 0.0}; };
  const PathFn g = [](double t) { return std::vector<double>{0.0, 2.0 * t}; };
  // max over t in {0.5, 1} of sqrt(t^2 + 4t^2)
  CHECK(grid_sup_distance(f, g, 2) == doctest::Approx(std::sqrt(5.0)));
}
