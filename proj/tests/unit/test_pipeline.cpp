#include <doctest.h>

#include <set>
#include <sstream>

#include "tsclust/config.hpp"
#include "tsclust/error.hpp"
#include "tsclust/io.hpp"
#include "tsclust/pipeline.hpp"
#include "tsclust/synthetic.hpp"

using namespace tsclust;
using namespace tsclust::pipeline;

namespace {

json two_family_synth(std::size_t n, std::size_t m) {
  return json::parse(R"({
    "kind": "family", "m": )" + std::to_string(m) + R"(, "d": 4, "seed": 11, "n": )" +
                     std::to_string(n) + R"(,
    "spec": {"s": 1, "noise_bound": 0.05, "offset_jitter": 0.02,
             "templates": [
               {"weight": 0.5, "components": [{"offset": 0.25, "amplitude": 0.1}]},
               {"weight": 0.5, "components": [{"offset": 0.75, "slope": -0.1}]}]}})");
}

std::vector<RawSeries> series_of(const RunOutput& synth) {
  return io::parse_series_csv(synth.find("series.csv")->content, "series.csv");
}

std::vector<int> column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<int> out;
  while (std::getline(in, line)) out.push_back(std::stoi(line.substr(line.find(',') + 1)));
  return out;
}

}  // namespace

TEST_CASE("two families are recovered exactly") {
  const auto synth = run_synth(two_family_synth(40, 200));
  const auto series = series_of(synth);
  const auto labels = column(synth.find("labels.csv")->content);
  const auto out = run_cluster(json{{"d", 4}, {"k", 3}, {"delta", 0.15}}, series);
  const auto clusters = column(out.find("assignments.csv")->content);
  REQUIRE(clusters.size() == 40);
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(clusters[i] >= 0);
    pairs.emplace(labels[i], clusters[i]);
  }
  CHECK(pairs.size() == 2);
  const auto manifest = json::parse(out.find("manifest.json")->content);
  CHECK(manifest["resolved"]["cluster_count"] == 2);
  CHECK(manifest["resolved"]["link_radius"] == 0.3);
  CHECK(manifest["n"] == 40);
  CHECK(out.find("tree.json") == nullptr);
}

TEST_CASE("k larger than n gives all noise") {
  const auto series = series_of(run_synth(two_family_synth(10, 50)));
  const auto out = run_cluster(json{{"d", 4}, {"k", 11}, {"delta", 0.2}}, series);
  for (int c : column(out.find("assignments.csv")->content)) CHECK(c == -1);
}

TEST_CASE("tree documents nest and are deterministic") {
  const auto series = series_of(run_synth(two_family_synth(30, 100)));
  const json cfg{{"d", 4}, {"k_ladder", {1, 3, 6}}, {"delta", 0.15}};
  const auto a = run_tree(cfg, series);
  const auto b = run_tree(cfg, series);
  CHECK(a.find("tree.json")->content == b.find("tree.json")->content);
  const auto tree = json::parse(a.find("tree.json")->content);
  REQUIRE(tree["levels"].size() == 3);
  CHECK(tree["levels"][0]["k"] == 6);
  for (const auto& root : tree["clusters"]) {
    CHECK(root["k"] == 1);
    for (const auto& child : root["children"]) {
      CHECK(child["k"] == 3);
      CHECK(child["members"].size() <= root["members"].size());
    }
  }
  const auto with_tree = run_cluster(json{{"d", 4}, {"k", 3}, {"k_ladder", {1, 3}}, {"delta", 0.15}}, series);
  CHECK(with_tree.find("tree.json") != nullptr);
}

TEST_CASE("smooth writes the grid") {
  const auto synth = run_synth(two_family_synth(5, 80));
  const auto out = run_smooth(json{{"d", 4}}, series_of(synth));
  const auto grid = out.find("grid.csv")->content;
  CHECK(grid.rfind("series_id,slot,time,v1\n", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 1 + 5 * 4);
  const auto manifest = json::parse(out.find("manifest.json")->content);
  CHECK(manifest["resolved"]["gamma_by_m"].contains("80"));
  CHECK_FALSE(manifest["resolved"].contains("delta"));
}

TEST_CASE("synth mixture output") {
  const auto out = run_synth(json::parse(R"({"kind": "mixture", "n": 20, "seed": 2,
    "spec": {"dim": 2, "components": [{"weight": 1, "bumps": [{"center": 0.5, "half_width": 0.3},
                                                              {"center": 0.5, "half_width": 0.3}]}]}})"));
  const auto csv = out.find("points.csv")->content;
  CHECK(csv.rfind("point_id,label,x1,x2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
  CHECK_THROWS_AS(run_synth(json{{"kind", "cloud"}, {"n", 3}, {"spec", json::object()}}), Error);
}

TEST_CASE("pipeline refusals") {
  const auto series = series_of(run_synth(two_family_synth(5, 8)));
  try {
    run_cluster(json{{"d", 8}, {"k", 1}, {"delta", 0.1}}, series);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Refused);
    CHECK(std::string(e.what()).find("series_00000") != std::string::npos);
  }
  const std::vector<RawSeries> two(series.begin(), series.begin() + 2);
  CHECK_THROWS_AS(run_cluster(json{{"d", 2}, {"k", 1}}, two), Error);
  CHECK_THROWS_AS(run_cluster(json{{"d", 2}, {"k", 1}, {"s", 2}, {"delta", 0.1}}, series), Error);
  CHECK_THROWS_AS(run_cluster(json{{"d", 2}, {"k", 1}, {"delta", 0.1}}, {}), Error);
}

TEST_CASE("experiment outputs") {
  const auto out = run_experiment("dimensionality", json::object(), false);
  REQUIRE(out.find("report.json") != nullptr);
  const auto doc = json::parse(out.find("report.json")->content);
  CHECK(doc["experiment"] == "dimensionality");
  CHECK_FALSE(doc.contains("wall_clock_seconds"));
  CHECK_THROWS_AS(run_experiment("nope", json::object(), false), Error);
}
