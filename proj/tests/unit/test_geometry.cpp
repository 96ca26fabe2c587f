#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tsclust/error.hpp"
#include "tsclust/geometry.hpp"

using namespace tsclust::geometry;

TEST_CASE("unit ball volumes match closed forms") {
  const double pi = std::numbers::pi;
  CHECK(ball_volume(1) == 2.0);
  CHECK(ball_volume(2) == pi);
  CHECK(ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
  CHECK(ball_volume(4) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
  for (int d = 1; d <= 40; ++d) {
    CHECK(ball_volume(d) == doctest::Approx(oracle::unit_ball_volume(d)).epsilon(1e-12));
    CHECK(log_ball_volume(d) == doctest::Approx(std::log(oracle::unit_ball_volume(d))).epsilon(1e-12));
  }
  CHECK(ball_measure(3, 2.0) == doctest::Approx(8.0 * ball_volume(3)));
  CHECK(BallSpec(2, 0.5).volume() == doctest::Approx(pi / 4.0));
  CHECK_THROWS_AS(ball_volume(0), tsclust::Error);
  CHECK_THROWS_AS(BallSpec(2, -1.0), tsclust::Error);
}

TEST_CASE("reg_inc_beta known values and edges") {
  CHECK(reg_inc_beta(0.5, 2.0, 3.0) == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(reg_inc_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), tsclust::Error);
  CHECK_THROWS_AS(reg_inc_beta(0.5, 0.0, 1.0), tsclust::Error);
  CHECK_THROWS_AS(reg_inc_beta(NAN, 1.0, 1.0), tsclust::Error);
}

TEST_CASE("reg_inc_beta agrees with the binomial tail for integer parameters") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> p(1, 30);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(gen);
    const int a = p(gen), b = p(gen);
    CHECK(reg_inc_beta(x, a, b) == doctest::Approx(oracle::binomial_beta(x, a, b)).epsilon(1e-10));
  }
}

TEST_CASE("reg_inc_beta properties") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> p(0.05, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(gen), a = p(gen), b = p(gen);
    const double v = reg_inc_beta(x, a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v + reg_inc_beta(1.0 - x, b, a) == doctest::Approx(1.0).epsilon(1e-10));
    const double x2 = std::min(1.0, x + 0.01);
    CHECK(reg_inc_beta(x2, a, b) >= v - 1e-14);
  }
}

TEST_CASE("continued fraction and series agree where both apply") {
  for (double x : {0.01, 0.1, 0.2, 0.3}) {
    for (double a : {0.5, 1.0, 2.5, 7.0}) {
      for (double b : {0.5, 1.5, 4.0}) {
        double cf = 0.0;
        REQUIRE(detail::inc_beta_continued_fraction(x, a, b, cf));
        CHECK(cf == doctest::Approx(detail::inc_beta_series(x, a, b)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("symmetric difference matches quadrature of the lens") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const int dim = 1 + static_cast<int>(gen() % 6);
    const double delta = 0.1 + 2.0 * u(gen);
    const double dist = 2.2 * delta * u(gen);
    const double want = oracle::sym_diff_quadrature(dist, delta, dim);
    CHECK(ball_sym_diff_volume(dist, delta, dim) ==
          doctest::Approx(want).epsilon(1e-8).scale(ball_measure(dim, delta)));
  }
}

TEST_CASE("symmetric difference edge cases") {
  CHECK(ball_sym_diff_volume(0.0, 1.0, 3) == 0.0);
  CHECK(ball_sym_diff_volume(5.0, 1.0, 3) == doctest::Approx(2.0 * ball_measure(3, 1.0)));
  CHECK(ball_sym_diff_volume(2.0, 1.0, 2) == doctest::Approx(2.0 * std::numbers::pi));
  // Interval arithmetic in one dimension.
  CHECK(ball_sym_diff_volume(1.0, 1.0, 1) == 2.0);
  CHECK(ball_sym_diff_volume(0.25, 0.5, 1) == 0.5);
  CHECK(ball_sym_diff_volume(3.0, 1.0, 1) == 4.0);
  for (double dist : {0.1, 0.5, 0.9, 1.7}) {
    CHECK(detail::sym_diff_by_beta(dist, 1.0, 1) == doctest::Approx(2.0 * std::min(dist, 2.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ball_sym_diff_volume(-1.0, 1.0, 2), tsclust::Error);
  CHECK_THROWS_AS(ball_sym_diff_volume(1.0, 0.0, 2), tsclust::Error);
}

TEST_CASE("symmetric difference is increasing in dist and below the linear bound") {
  for (int dim = 1; dim <= 6; ++dim) {
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double dist = i * 0.01;
      const double v = ball_sym_diff_volume(dist, 1.0, dim);
      CHECK(v >= prev);
      prev = v;
      if (dist <= 1.0) {
        const auto b = ball_sym_diff_bound(dist, 1.0, dim);
        CHECK_FALSE(b.outside_regime);
        CHECK(v <= b.value);
      }
    }
  }
  CHECK(ball_sym_diff_bound(1.0, 1.0, 1).value == 2.0);
  CHECK(ball_sym_diff_bound(2.0, 1.0, 3).outside_regime);
}
