#include <doctest.h>

#include <string>

#include "tsclust/config.hpp"

using namespace tsclust;
using namespace tsclust::config;

namespace {

std::string error_of(const json& doc, PipelineMode mode, ErrorCode want) {
  try {
    pipeline_from_json(doc, mode);
  } catch (const Error& e) {
    CHECK(e.code() == want);
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

}  // namespace

TEST_CASE("pipeline config defaults and round trip") {
  const auto cfg = pipeline_from_json(json{{"d", 4}, {"k", 3}}, PipelineMode::Cluster);
  CHECK(cfg.d == 4);
  CHECK(cfg.k == 3u);
  CHECK(cfg.delta.is_auto());
  CHECK(cfg.gamma.is_auto());
  CHECK(cfg.clip);
  const auto again = pipeline_from_json(to_json(cfg), PipelineMode::Cluster);
  CHECK(to_json(again) == to_json(cfg));
  const auto explicit_cfg =
      pipeline_from_json(json{{"d", 2}, {"delta", 0.3}, {"gamma", "auto"}, {"lambda_ladder", {4.0, 2.0}}},
                         PipelineMode::Tree);
  CHECK(*explicit_cfg.delta.value == 0.3);
  CHECK(explicit_cfg.lambda_ladder.size() == 2);
}

TEST_CASE("schema errors list every missing and unknown key") {
  const auto msg = error_of(json{{"kk", 3}, {"bogus", 1}}, PipelineMode::Cluster, ErrorCode::SchemaError);
  CHECK(msg == "config: missing keys [d, k|lambda]; unknown keys [bogus, kk]");
  CHECK(error_of(json{{"d", 2}}, PipelineMode::Tree, ErrorCode::SchemaError)
            .find("k_ladder|lambda_ladder") != std::string::npos);
  CHECK(error_of(json{{"d", "two"}, {"k", 1}}, PipelineMode::Cluster, ErrorCode::SchemaError) ==
        "config.d: wrong type");
  CHECK(error_of(json::array(), PipelineMode::Smooth, ErrorCode::SchemaError) == "config: expected an object");
  CHECK(error_of(json{{"d", 2}, {"delta", "soon"}}, PipelineMode::Smooth, ErrorCode::SchemaError)
            .find("auto") != std::string::npos);
}

TEST_CASE("value errors") {
  error_of(json{{"d", 0}}, PipelineMode::Smooth, ErrorCode::InvalidArgument);
  error_of(json{{"d", 2}, {"k", 2}, {"lambda", 1.0}}, PipelineMode::Cluster, ErrorCode::InvalidArgument);
  error_of(json{{"d", 2}, {"k", 0}}, PipelineMode::Cluster, ErrorCode::InvalidArgument);
  error_of(json{{"d", 2}, {"delta", -1.0}}, PipelineMode::Smooth, ErrorCode::InvalidArgument);
  error_of(json{{"d", 2}, {"k_ladder", {3}}, {"lambda_ladder", {1.0}}}, PipelineMode::Tree,
           ErrorCode::InvalidArgument);
  error_of(json{{"d", 2}, {"k", 1}, {"link_radius", 0.0}}, PipelineMode::Cluster, ErrorCode::InvalidArgument);
}

TEST_CASE("mixture and family documents") {
  const auto mix = mixture_from_json(json::parse(R"({
    "dim": 1,
    "components": [
      {"weight": 0.5, "bumps": [{"center": 0.2, "half_width": 0.1}]},
      {"weight": 0.5, "bumps": [{"center": 0.7, "half_width": 0.2, "shape": "quadratic"}]}
    ]})"));
  CHECK(mix.component(0).bumps[0].shape == synthetic::BumpShape::Triangular);
  CHECK(mix.component(1).bumps[0].shape == synthetic::BumpShape::Quadratic);
  CHECK(to_json(mixture_from_json(to_json(mix))) == to_json(mix));

  const auto fam = family_from_json(json::parse(R"({
    "s": 1, "noise_bound": 0.05,
    "templates": [{"weight": 1, "components": [{"offset": 0.4, "amplitude": 0.1}]}]})"));
  CHECK(fam.templates()[0].components[0].offset == 0.4);
  CHECK(fam.templates()[0].components[0].frequency == 1.0);
  CHECK(to_json(family_from_json(to_json(fam))) == to_json(fam));

  try {
    mixture_from_json(json{{"dim", 1}, {"components", {{{"weight", 1.0}, {"bumps", {{{"centre", 0.5}}}}}}}});
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    const std::string msg = e.what();
    CHECK(msg.find("mixture.components[0].bumps[0]") == 0);
    CHECK(msg.find("center") != std::string::npos);
    CHECK(msg.find("half_width") != std::string::npos);
    CHECK(msg.find("centre") != std::string::npos);
  }
}

TEST_CASE("document parsing") {
  CHECK(parse_document(R"({"a": 1})", "x")["a"] == 1);
  try {
    parse_document("{oops", "cfg.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("cfg.json") == 0);
  }
  CHECK_THROWS_AS(load_document("/nonexistent/cfg.json"), Error);
}
