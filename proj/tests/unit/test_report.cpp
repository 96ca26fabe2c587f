#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tsclust/report.hpp"

using namespace tsclust::experiments;

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x, y;
  for (int i = 0; i < 8; ++i) {
    x.push_back(std::pow(2.0, i) * 100.0);
    y.push_back(3.0 * std::pow(x.back(), -0.4));
  }
  const auto fit = fit_loglog(x, y);
  REQUIRE(fit.defined);
  CHECK(fit.slope == doctest::Approx(-0.4));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.points == 8);
}

TEST_CASE("log-log fit needs enough usable points") {
  const std::vector<double> x{1, 2, 4, 8, 16};
  const std::vector<double> y{1, 0, 0.5, -1, 0.25};
  CHECK_FALSE(fit_loglog(x, y).defined);
  CHECK(fit_loglog(x, y, 3).defined);
  CHECK_FALSE(fit_loglog({1.0}, {1.0}, 1).defined);
}

TEST_CASE("order statistics") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK(quantile({0, 10}, 0.25) == doctest::Approx(2.5));
  CHECK(quantile({5, 1, 3}, 1.0) == 5.0);
  CHECK(quantile({5, 1, 3}, 0.0) == 1.0);
  CHECK(count_increases({3, 2, 2, 4, 1, 5}) == 2);
  CHECK(count_decreases({3, 2, 2, 4, 1, 5}) == 2);
}

TEST_CASE("run_trials keeps index order and propagates errors") {
  const auto out = run_trials(100, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  CHECK(run_trials(0, [](std::size_t i) { return i; }).empty());
  CHECK_THROWS_AS(run_trials(10,
                             [](std::size_t i) {
                               if (i == 7) throw std::runtime_error("boom");
                               return i;
                             }),
                  std::runtime_error);
}

TEST_CASE("report documents") {
  ExperimentReport r;
  r.name = "demo";
  r.seed = 3;
  r.rungs.push_back({10, {1.0, 2.0}, 1.5});
  r.curves.push_back({"error", "n", "err", {1, 2}, {0.5, 0.25}});
  r.wall_clock_seconds = 1.25;
  r.finalize();
  CHECK_FALSE(r.pass);  // no checks
  r.add_check("a", true, "fine");
  r.add_check("b", false);
  r.finalize();
  CHECK_FALSE(r.pass);
  REQUIRE(r.find_check("b"));
  CHECK_FALSE(r.find_check("b")->pass);
  CHECK(r.find_check("zzz") == nullptr);
  const auto doc = r.to_json();
  CHECK_FALSE(doc.contains("wall_clock_seconds"));
  CHECK(r.to_json(true)["wall_clock_seconds"] == 1.25);
  CHECK(doc["rungs"][0]["summary"] == 1.5);
  CHECK(doc.dump() == r.to_json().dump());
  CHECK(r.curves_csv().find("error,") != std::string::npos);
}
