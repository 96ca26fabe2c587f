#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsclust/error.hpp"
#include "tsclust/synthetic.hpp"

namespace tsclust::config {

using nlohmann::json;

// Reads keys out of one JSON object, remembering what was missing or unknown
// so a single schema error can list everything at once.
class Reader {
 public:
  Reader(const json& doc, std::string context);

  bool has(const std::string& key) const;

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) return fallback;
    return convert<T>(key);
  }

  template <class T>
  T need(const std::string& key) {
    used_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) {
      missing_.push_back(key);
      return T{};
    }
    return convert<T>(key);
  }

  // Marks a key as known and returns it (null when absent).
  const json& raw(const std::string& key);
  void note_missing(const std::string& description) { missing_.push_back(description); }
  // Throws SchemaError naming missing and unknown keys, if any.
  void finish() const;
  const std::string& context() const { return context_; }

 private:
  template <class T>
  T convert(const std::string& key) const {
    try {
      return doc_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::SchemaError, context_ + "." + key + ": wrong type");
    }
  }

  const json& doc_;
  std::string context_;
  std::set<std::string> used_;
  std::vector<std::string> missing_;
};

json to_json(const synthetic::MixtureSpec& spec);
synthetic::MixtureSpec mixture_from_json(const json& doc);

json to_json(const synthetic::FunctionFamilySpec& spec);
synthetic::FunctionFamilySpec family_from_json(const json& doc);

// "auto" or a positive number.
struct Scheduled {
  std::optional<double> value;
  bool is_auto() const { return !value.has_value(); }
};

struct PipelineConfig {
  std::optional<std::size_t> s;
  std::size_t d = 0;
  Scheduled delta;
  double delta_scale = 1.0;
  Scheduled gamma;
  std::optional<std::size_t> k;
  std::optional<double> lambda;
  std::vector<std::size_t> k_ladder;
  std::vector<double> lambda_ladder;
  std::optional<double> link_radius;
  bool clip = true;
  std::uint64_t seed = 0;
  std::size_t lattice_resolution = 0;
};

enum class PipelineMode { Cluster, Tree, Smooth };

// `cluster` needs exactly one of k / lambda, `tree` needs a k or lambda ladder,
// `smooth` needs neither.
PipelineConfig pipeline_from_json(const json& doc, PipelineMode mode);
json to_json(const PipelineConfig& cfg);

json parse_document(const std::string& text, const std::string& source);
json load_document(const std::string& path);

}  // namespace tsclust::config
