#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tsclust/tsclust.h"

namespace {

std::string content_of(const tsc_output* out, const std::string& name) {
  for (size_t i = 0; i < tsc_output_count(out); ++i) {
    if (name == tsc_output_name(out, i)) {
      size_t len = 0;
      const char* data = tsc_output_content(out, i, &len);
      return std::string(data, len);
    }
  }
  return {};
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(tsc_status_name(TSC_OK)) == "ok");
  CHECK(std::string(tsc_status_name(TSC_PARSE_ERROR)) == "parse_error");
  CHECK(std::string(tsc_status_name(TSC_INTERNAL_ERROR)) == "internal_error");
  CHECK(std::strlen(tsc_version()) > 0);
}

TEST_CASE("geometry through the C layer") {
  double v = 0.0;
  REQUIRE(tsc_ball_volume(2, &v) == TSC_OK);
  CHECK(v == doctest::Approx(M_PI));
  REQUIRE(tsc_reg_inc_beta(0.5, 2.0, 2.0, &v) == TSC_OK);
  CHECK(v == doctest::Approx(0.5));
  REQUIRE(tsc_ball_sym_diff_volume(2.0, 1.0, 1, &v) == TSC_OK);
  CHECK(v == doctest::Approx(4.0));
  int outside = -1;
  REQUIRE(tsc_ball_sym_diff_bound(0.5, 1.0, 2, &v, &outside) == TSC_OK);
  CHECK(outside == 0);
  REQUIRE(tsc_ball_sym_diff_bound(2.0, 1.0, 2, &v, &outside) == TSC_OK);
  CHECK(outside == 1);
  CHECK(tsc_ball_volume(0, &v) == TSC_INVALID_ARGUMENT);
  CHECK(std::strlen(tsc_last_error()) > 0);
  CHECK(tsc_ball_volume(2, nullptr) == TSC_INVALID_ARGUMENT);
}

TEST_CASE("kde handle") {
  const std::vector<double> pts{0.1, 0.12, 0.14, 0.8};
  tsc_kde* kde = nullptr;
  REQUIRE(tsc_kde_create(pts.data(), 4, 1, 0.03, &kde) == TSC_OK);
  const double x = 0.12;
  size_t count = 0;
  REQUIRE(tsc_kde_count(kde, &x, &count) == TSC_OK);
  CHECK(count == 3);
  double value = 0.0, lambda = 0.0;
  REQUIRE(tsc_kde_eval(kde, &x, &value) == TSC_OK);
  REQUIRE(tsc_lambda_of_k(3.0, 4, 0.03, 1, &lambda) == TSC_OK);
  CHECK(value == lambda);
  int member = -1;
  REQUIRE(tsc_kde_level_set_member(kde, lambda, &x, &member) == TSC_OK);
  CHECK(member == 1);
  tsc_kde_destroy(kde);
  tsc_kde_destroy(nullptr);
  CHECK(tsc_kde_create(pts.data(), 4, 1, -1.0, &kde) == TSC_INVALID_ARGUMENT);
  CHECK(tsc_kde_eval(nullptr, &x, &value) == TSC_INVALID_ARGUMENT);
  REQUIRE(tsc_delta_schedule(1000, 1, &value) == TSC_OK);
  CHECK(value == doctest::Approx(std::cbrt(std::log(1000.0) / 1000.0)));
}

TEST_CASE("dbscan") {
  const std::vector<double> pts{0.1, 0.11, 0.12, 0.9, 0.91, 0.92, 0.5};
  std::vector<int> labels(7, 99);
  int clusters = 0;
  REQUIRE(tsc_dbscan(pts.data(), 7, 1, 3, 0.05, 0.0, labels.data(), &clusters) == TSC_OK);
  CHECK(clusters == 2);
  CHECK(labels == std::vector<int>{0, 0, 0, 1, 1, 1, -1});
}

TEST_CASE("document runs and outputs") {
  const auto dir = std::filesystem::temp_directory_path() / "tsclust_capi_test";
  std::filesystem::remove_all(dir);
  const char* synth = R"({"kind": "family", "n": 12, "m": 60, "d": 3, "seed": 4,
    "spec": {"s": 1, "noise_bound": 0.02,
             "templates": [{"weight": 0.5, "components": [{"offset": 0.2}]},
                           {"weight": 0.5, "components": [{"offset": 0.8}]}]}})";
  tsc_output* out = nullptr;
  REQUIRE(tsc_run_synth(synth, &out) == TSC_OK);
  REQUIRE(tsc_output_write(out, dir.string().c_str()) == TSC_OK);
  CHECK(content_of(out, "series.csv").rfind("series_id,time,v1\n", 0) == 0);
  tsc_output_destroy(out);

  const std::string input = (dir / "series.csv").string();
  REQUIRE(tsc_run_cluster(R"({"d": 3, "k": 2, "delta": 0.1})", input.c_str(), &out) == TSC_OK);
  const auto assignments = content_of(out, "assignments.csv");
  CHECK(assignments.rfind("series_id,cluster\n", 0) == 0);
  CHECK(assignments.find(",-1") == std::string::npos);
  tsc_output_destroy(out);

  REQUIRE(tsc_run_tree(R"({"d": 3, "k_ladder": [1, 4], "delta": 0.1})", input.c_str(), &out) == TSC_OK);
  CHECK(!content_of(out, "tree.json").empty());
  tsc_output_destroy(out);

  REQUIRE(tsc_run_smooth(R"({"d": 3})", input.c_str(), &out) == TSC_OK);
  CHECK(!content_of(out, "grid.csv").empty());
  tsc_output_destroy(out);

  out = nullptr;
  CHECK(tsc_run_cluster(R"({"d": 3})", input.c_str(), &out) == TSC_SCHEMA_ERROR);
  CHECK(out == nullptr);
  CHECK(std::string(tsc_last_error()).find("k|lambda") != std::string::npos);
  CHECK(tsc_run_cluster("{not json", input.c_str(), &out) == TSC_PARSE_ERROR);
  CHECK(tsc_run_cluster(R"({"d": 3, "k": 1})", "/nonexistent.csv", &out) == TSC_IO_ERROR);
  CHECK(tsc_run_cluster(R"({"d": 60, "k": 1, "delta": 0.1})", input.c_str(), &out) == TSC_REFUSED);
  std::ofstream(dir / "bad.csv") << "series_id,time,v1\na,0.5,0.1\na,0.5,0.2\n";
  CHECK(tsc_run_cluster(R"({"d": 1, "k": 1})", (dir / "bad.csv").string().c_str(), &out) ==
        TSC_PARSE_ERROR);
  CHECK(std::string(tsc_last_error()).find("bad.csv:3:") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment registry") {
  const size_t n = tsc_experiment_count();
  REQUIRE(n > 0);
  bool found = false;
  for (size_t i = 0; i < n; ++i) {
    found |= std::string(tsc_experiment_name(i)) == "dimensionality";
    CHECK(std::strlen(tsc_experiment_description(i)) > 0);
  }
  CHECK(found);
  CHECK(tsc_experiment_name(n) == nullptr);
  tsc_output* out = nullptr;
  REQUIRE(tsc_experiment_default_config("sym_diff_mc", &out) == TSC_OK);
  CHECK(content_of(out, "config.json").find("pairs") != std::string::npos);
  tsc_output_destroy(out);
  REQUIRE(tsc_run_experiment("dimensionality", nullptr, 0, &out) == TSC_OK);
  CHECK(content_of(out, "report.json").find("\"experiment\": \"dimensionality\"") != std::string::npos);
  tsc_output_destroy(out);
  CHECK(tsc_run_experiment("nope", "{}", 0, &out) == TSC_UNKNOWN_NAME);
}
