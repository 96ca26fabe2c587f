#include <doctest.h>

#include <cmath>
#include <random>

#include "tsclust/error.hpp"
#include "tsclust/synthetic.hpp"

using namespace tsclust;
using namespace tsclust::synthetic;

namespace {

MixtureSpec two_bumps() {
  return MixtureSpec(2, {{0.4, {{0.2, 0.1, BumpShape::Triangular}, {0.2, 0.1, BumpShape::Triangular}}},
                         {0.6, {{0.7, 0.2, BumpShape::Quadratic}, {0.7, 0.2, BumpShape::Uniform}}}});
}

double integrate_1d(const CoordinateBump& b, int steps) {
  const double lo = b.center - b.half_width;
  const double h = 2.0 * b.half_width / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) sum += b.density(lo + (i + 0.5) * h);
  return sum * h;
}

}  // namespace

TEST_CASE("bumps are densities with the stated peak") {
  for (auto shape : {BumpShape::Triangular, BumpShape::Quadratic, BumpShape::Uniform}) {
    const CoordinateBump b{0.5, 0.2, shape};
    CHECK(integrate_1d(b, 200000) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.density(0.5) == doctest::Approx(b.peak()));
    CHECK(b.density(0.71) == 0.0);
    CHECK(b.density(0.29) == 0.0);
    CHECK(parse_bump_shape(to_string(shape)) == shape);
  }
  CHECK_THROWS_AS(parse_bump_shape("gaussian"), Error);
}

TEST_CASE("inverse cdf inverts the cdf") {
  for (auto shape : {BumpShape::Triangular, BumpShape::Quadratic, BumpShape::Uniform}) {
    const CoordinateBump b{0.4, 0.3, shape};
    for (double u : {0.01, 0.2, 0.5, 0.77, 0.99}) {
      const double x = b.inverse_cdf(u);
      // Integrate the density up to x numerically.
      const double lo = b.center - b.half_width;
      const int steps = 100000;
      const double h = (x - lo) / steps;
      double cdf = 0.0;
      for (int i = 0; i < steps; ++i) cdf += b.density(lo + (i + 0.5) * h) * h;
      CHECK(cdf == doctest::Approx(u).epsilon(1e-6));
    }
  }
}

TEST_CASE("mixture summaries") {
  const auto spec = two_bumps();
  CHECK(spec.dim() == 2);
  CHECK(spec.size() == 2);
  // Support boxes [0.1,0.3]^2 and [0.5,0.9]^2 differ by 0.2 along each axis.
  CHECK(spec.margin() == doctest::Approx(std::sqrt(0.08)));
  const double p0 = 0.4 * 10.0 * 10.0;
  const double p1 = 0.6 * (0.75 / 0.2) * (1.0 / 0.4);
  CHECK(spec.peak() == doctest::Approx(std::max(p0, p1)));
  const std::vector<double> x{0.2, 0.2};
  CHECK(true_density(spec, x) == doctest::Approx(p0));
  const std::vector<double> out{0.4, 0.4};
  CHECK(true_density(spec, out) == 0.0);
  // Inner core of the triangular component: density halves at the core edge.
  CHECK(spec.component(0).inner_core_min_density() == doctest::Approx(25.0));
  const double core1 = 0.6 * spec.component(1).inner_core_min_density();
  CHECK(spec.lambda_star() == doctest::Approx(0.5 * std::min(0.4 * 25.0, core1)));
}

TEST_CASE("mixture validation") {
  CHECK_THROWS_AS(MixtureSpec(1, {}), Error);
  CHECK_THROWS_AS(MixtureSpec(1, {{0.5, {{0.5, 0.1, BumpShape::Triangular}}}}), Error);
  CHECK_THROWS_AS(MixtureSpec(1, {{1.0, {{0.95, 0.1, BumpShape::Triangular}}}}), Error);
  // Overlapping supports.
  CHECK_THROWS_AS(MixtureSpec(1, {{0.5, {{0.3, 0.2, BumpShape::Triangular}}},
                                  {0.5, {{0.45, 0.2, BumpShape::Triangular}}}}),
                  Error);
  const MixtureSpec single(1, {{1.0, {{0.5, 0.2, BumpShape::Triangular}}}});
  CHECK(std::isinf(single.margin()));
}

TEST_CASE("flat samples stay in supports and are reproducible") {
  const auto spec = two_bumps();
  const auto a = sample_flat(spec, 2000, 4);
  const auto b = sample_flat(spec, 2000, 4);
  CHECK(a.labels == b.labels);
  CHECK(std::equal(a.points.data().begin(), a.points.data().end(), b.points.data().begin()));
  std::size_t first = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(spec.component(a.labels[i]).in_support(a.points.point(i)));
    first += a.labels[i] == 0;
  }
  CHECK(std::fabs(first / 2000.0 - 0.4) < 0.05);
  const auto c = sample_flat(spec, 2000, 5);
  CHECK_FALSE(std::equal(a.points.data().begin(), a.points.data().end(), c.points.data().begin()));
}

TEST_CASE("component templates") {
  ComponentTemplate c;
  c.offset = 0.3;
  c.slope = 0.2;
  c.amplitude = 0.1;
  c.frequency = 2.0;
  c.phase = 0.25;
  c.jump_at = 0.5;
  c.jump_size = 0.1;
  CHECK(c.value(0.25) == doctest::Approx(0.3 + 0.05 + 0.1 * std::sin(2.0 * M_PI * 0.75)));
  CHECK(c.value(0.5) == doctest::Approx(0.3 + 0.1 + 0.1 * std::sin(2.0 * M_PI * 1.25) + 0.1));
  CHECK(c.lipschitz() == doctest::Approx(0.2 + 0.1 * 2.0 * M_PI * 2.0));
  CHECK(c.has_jump());
  ComponentTemplate flat;
  CHECK_FALSE(flat.has_jump());
}

TEST_CASE("families and raw samples") {
  ComponentTemplate lo;
  lo.offset = 0.3;
  ComponentTemplate hi;
  hi.offset = 0.7;
  hi.jump_at = 0.55;
  hi.jump_size = 0.1;
  const FunctionFamilySpec fam(1, {{0.5, {lo}}, {0.5, {hi}}}, 0.05, 0.02, 0.1);
  CHECK(fam.has_jumps());
  CHECK_NOTHROW(fam.check_grid(4));
  CHECK_THROWS_AS(fam.check_grid(20), Error);  // 0.55 = 11/20 is a grid point
  const auto sample = sample_raw_series(fam, 30, 50, 4, 9);
  REQUIRE(sample.series.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& y = sample.series[i];
    CHECK(y.id() == series_id(i));
    CHECK(y.m() == 50);
    for (std::size_t j = 0; j < y.m(); ++j) {
      const double t = y.times()[j];
      CHECK(t == doctest::Approx((j + 1) / 50.0));
      CHECK(std::fabs(y.value(j)[0] - sample.paths[i].value(t)[0]) <= 0.05 + 1e-12);
    }
    for (std::size_t slot = 0; slot < 4; ++slot) {
      CHECK(sample.truth[i].at_slot(slot)[0] == sample.paths[i].value((slot + 1) / 4.0)[0]);
    }
  }
  // Paths depend only on the seed, not on the number of observations.
  const auto longer = sample_raw_series(fam, 30, 200, 4, 9);
  CHECK(longer.labels == sample.labels);
  for (std::size_t i = 0; i < 30; ++i) CHECK(longer.truth[i] == sample.truth[i]);
  CHECK_THROWS_AS(sample_raw_series(fam, 5, 4, 4, 1), Error);
}

TEST_CASE("family validation") {
  ComponentTemplate c;
  c.offset = 0.02;
  CHECK_THROWS_AS(FunctionFamilySpec(1, {{1.0, {c}}}, 0.0, 0.05), Error);
  ComponentTemplate ok;
  CHECK_THROWS_AS(FunctionFamilySpec(2, {{1.0, {ok}}}, 0.0), Error);
  CHECK_THROWS_AS(FunctionFamilySpec(1, {{0.6, {ok}}}, 0.0), Error);
  CHECK_THROWS_AS(FunctionFamilySpec(1, {{1.0, {ok}}}, -0.1), Error);
}
