#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsclust/error.hpp"
#include "tsclust/spatial_index.hpp"

using namespace tsclust;

TEST_CASE("PointSet basics") {
  PointSet p(2, {0.1, 0.2, 0.3, 0.4});
  CHECK(p.size() == 2);
  CHECK(p.point(1)[0] == 0.3);
  const std::vector<double> q{0.5, 0.6};
  p.push_back(q);
  CHECK(p.size() == 3);
  const std::vector<std::size_t> idx{2, 0};
  const auto sub = p.subset(idx);
  CHECK(sub.point(0)[1] == 0.6);
  CHECK_THROWS_AS(PointSet(2, {0.1, 0.2, 0.3}), Error);
}

TEST_CASE("radius queries equal brute force, boundaries included") {
  std::mt19937_64 gen(5);
  for (std::size_t dim : {1u, 2u, 3u, 5u, 8u}) {
    for (std::size_t n : {1u, 7u, 100u, 1500u}) {
      const auto pts = oracle::random_points(gen, n, dim);
      const KdTree tree(pts, 8);
      const auto queries = oracle::random_points(gen, 60, dim);
      for (double r : {0.0, 0.05, 0.2, 0.7, 3.0}) {
        for (std::size_t q = 0; q < queries.size() + n; ++q) {
          // Queries at the data points themselves exercise ties at r = 0.
          const auto x = q < queries.size() ? queries.point(q) : pts.point(q - queries.size());
          std::vector<std::size_t> want;
          for (std::size_t i = 0; i < n; ++i) {
            if (in_closed_ball(squared_distance(x, pts.point(i)), r)) want.push_back(i);
          }
          REQUIRE(tree.within(x, r) == want);
          REQUIRE(tree.count_within(x, r) == want.size());
        }
      }
    }
  }
}

TEST_CASE("points exactly on the sphere are inside") {
  PointSet pts(2, {0.0, 0.0, 0.5, 0.0, 0.0, 0.5, 0.25, 0.25});
  const KdTree tree(pts, 1);
  const std::vector<double> origin{0.0, 0.0};
  CHECK(tree.count_within(origin, 0.5) == 4);
  CHECK(tree.count_within(origin, 0.4999999) == 2);
}

TEST_CASE("duplicate points") {
  PointSet pts(1, std::vector<double>(500, 0.5));
  const KdTree tree(pts, 4);
  const std::vector<double> q{0.5};
  CHECK(tree.count_within(q, 0.0) == 500);
  const std::vector<double> q2{0.6};
  CHECK(tree.count_within(q2, 0.05) == 0);
}

TEST_CASE("early stop in for_each_within") {
  std::mt19937_64 gen(6);
  const auto pts = oracle::random_points(gen, 300, 2);
  const KdTree tree(pts);
  std::size_t seen = 0;
  const std::vector<double> q{0.5, 0.5};
  tree.for_each_within(q, 1.0, [&](std::size_t) { return ++seen < 10; });
  CHECK(seen == 10);
}
