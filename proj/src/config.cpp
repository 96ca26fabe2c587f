#include "tsclust/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tsclust::config {

Reader::Reader(const json& doc, std::string context) : doc_(doc), context_(std::move(context)) {
  require(doc_.is_object(), ErrorCode::SchemaError, context_ + ": expected an object");
}

bool Reader::has(const std::string& key) const {
  return doc_.contains(key) && !doc_.at(key).is_null();
}

const json& Reader::raw(const std::string& key) {
  static const json null_value;
  used_.insert(key);
  return doc_.contains(key) ? doc_.at(key) : null_value;
}

void Reader::finish() const {
  std::vector<std::string> unknown;
  for (const auto& item : doc_.items()) {
    if (!used_.count(item.key())) unknown.push_back(item.key());
  }
  if (missing_.empty() && unknown.empty()) return;
  std::string msg = context_ + ":";
  auto list = [](const std::vector<std::string>& keys) {
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? ", " : "") + keys[i];
    return out;
  };
  if (!missing_.empty()) msg += " missing keys [" + list(missing_) + "]";
  if (!unknown.empty()) msg += std::string(missing_.empty() ? "" : ";") + " unknown keys [" + list(unknown) + "]";
  fail(ErrorCode::SchemaError, msg);
}

json to_json(const synthetic::MixtureSpec& spec) {
  json comps = json::array();
  for (const auto& c : spec.components()) {
    json bumps = json::array();
    for (const auto& b : c.bumps) {
      bumps.push_back({{"center", b.center},
                       {"half_width", b.half_width},
                       {"shape", std::string(synthetic::to_string(b.shape))}});
    }
    comps.push_back({{"weight", c.weight}, {"bumps", std::move(bumps)}});
  }
  return {{"dim", spec.dim()}, {"components", std::move(comps)}};
}

namespace {

const json& require_array(Reader& r, const std::string& key) {
  const json& v = r.raw(key);
  if (v.is_null()) {
    r.note_missing(key);
  } else if (!v.is_array()) {
    fail(ErrorCode::SchemaError, r.context() + "." + key + ": expected an array");
  }
  return v;
}

}  // namespace

synthetic::MixtureSpec mixture_from_json(const json& doc) {
  Reader r(doc, "mixture");
  const auto dim = r.need<std::size_t>("dim");
  const json& comps = require_array(r, "components");
  r.finish();
  std::vector<synthetic::MixtureComponent> components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    Reader cr(comps[i], "mixture.components[" + std::to_string(i) + "]");
    synthetic::MixtureComponent c;
    c.weight = cr.need<double>("weight");
    const json& bumps = require_array(cr, "bumps");
    cr.finish();
    for (std::size_t j = 0; j < bumps.size(); ++j) {
      Reader br(bumps[j], cr.context() + ".bumps[" + std::to_string(j) + "]");
      const auto center = br.need<double>("center");
      const auto half_width = br.need<double>("half_width");
      const auto shape = br.get<std::string>("shape", "triangular");
      br.finish();
      c.bumps.push_back({center, half_width, synthetic::parse_bump_shape(shape)});
    }
    components.push_back(std::move(c));
  }
  return synthetic::MixtureSpec(dim, std::move(components));
}

json to_json(const synthetic::FunctionFamilySpec& spec) {
  json templates = json::array();
  for (const auto& t : spec.templates()) {
    json comps = json::array();
    for (const auto& c : t.components) {
      comps.push_back({{"offset", c.offset},
                       {"slope", c.slope},
                       {"amplitude", c.amplitude},
                       {"frequency", c.frequency},
                       {"phase", c.phase},
                       {"jump_at", c.jump_at},
                       {"jump_size", c.jump_size}});
    }
    templates.push_back({{"weight", t.weight}, {"components", std::move(comps)}});
  }
  return {{"s", spec.s()},
          {"noise_bound", spec.noise_bound()},
          {"offset_jitter", spec.offset_jitter()},
          {"scale_jitter", spec.scale_jitter()},
          {"templates", std::move(templates)}};
}

synthetic::FunctionFamilySpec family_from_json(const json& doc) {
  Reader r(doc, "family");
  const auto s = r.need<std::size_t>("s");
  const auto noise = r.get<double>("noise_bound", 0.0);
  const auto offset_jitter = r.get<double>("offset_jitter", 0.0);
  const auto scale_jitter = r.get<double>("scale_jitter", 0.0);
  const json& tmpls = require_array(r, "templates");
  r.finish();
  std::vector<synthetic::FunctionTemplate> templates;
  for (std::size_t i = 0; i < tmpls.size(); ++i) {
    Reader tr(tmpls[i], "family.templates[" + std::to_string(i) + "]");
    synthetic::FunctionTemplate t;
    t.weight = tr.get<double>("weight", 1.0);
    const json& comps = require_array(tr, "components");
    tr.finish();
    for (std::size_t j = 0; j < comps.size(); ++j) {
      Reader cr(comps[j], tr.context() + ".components[" + std::to_string(j) + "]");
      synthetic::ComponentTemplate c;
      c.offset = cr.get<double>("offset", c.offset);
      c.slope = cr.get<double>("slope", c.slope);
      c.amplitude = cr.get<double>("amplitude", c.amplitude);
      c.frequency = cr.get<double>("frequency", c.frequency);
      c.phase = cr.get<double>("phase", c.phase);
      c.jump_at = cr.get<double>("jump_at", c.jump_at);
      c.jump_size = cr.get<double>("jump_size", c.jump_size);
      cr.finish();
      t.components.push_back(c);
    }
    templates.push_back(std::move(t));
  }
  return synthetic::FunctionFamilySpec(s, std::move(templates), noise, offset_jitter, scale_jitter);
}

namespace {

Scheduled read_scheduled(Reader& r, const std::string& key) {
  const json& v = r.raw(key);
  if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) return {};
  if (!v.is_number()) fail(ErrorCode::SchemaError, "config." + key + ": expected a number or \"auto\"");
  const double x = v.get<double>();
  require(x > 0.0 && std::isfinite(x), ErrorCode::InvalidArgument,
          "config." + key + ": must be positive");
  return {x};
}

json scheduled_json(const Scheduled& s) {
  return s.value ? json(*s.value) : json("auto");
}

}  // namespace

PipelineConfig pipeline_from_json(const json& doc, PipelineMode mode) {
  Reader r(doc, "config");
  PipelineConfig cfg;
  if (r.has("s")) cfg.s = r.get<std::size_t>("s", 0);
  cfg.d = r.need<std::size_t>("d");
  cfg.delta = read_scheduled(r, "delta");
  cfg.delta_scale = r.get<double>("delta_scale", 1.0);
  cfg.gamma = read_scheduled(r, "gamma");
  if (r.has("k")) cfg.k = r.get<std::size_t>("k", 0);
  if (r.has("lambda")) cfg.lambda = r.get<double>("lambda", 0.0);
  cfg.k_ladder = r.get<std::vector<std::size_t>>("k_ladder", {});
  cfg.lambda_ladder = r.get<std::vector<double>>("lambda_ladder", {});
  if (r.has("link_radius")) cfg.link_radius = r.get<double>("link_radius", 0.0);
  cfg.clip = r.get<bool>("clip", true);
  cfg.seed = r.get<std::uint64_t>("seed", 0);
  cfg.lattice_resolution = r.get<std::size_t>("lattice_resolution", 0);

  const bool have_level = cfg.k || cfg.lambda;
  const bool have_ladder = !cfg.k_ladder.empty() || !cfg.lambda_ladder.empty();
  if (mode == PipelineMode::Cluster && !have_level) r.note_missing("k|lambda");
  if (mode == PipelineMode::Tree && !have_ladder) r.note_missing("k_ladder|lambda_ladder");
  r.finish();

  require(cfg.d >= 1, ErrorCode::InvalidArgument, "config.d: must be >= 1");
  require(!cfg.s || *cfg.s >= 1, ErrorCode::InvalidArgument, "config.s: must be >= 1");
  require(!(cfg.k && cfg.lambda), ErrorCode::InvalidArgument,
          "config: k and lambda are mutually exclusive");
  require(cfg.k_ladder.empty() || cfg.lambda_ladder.empty(), ErrorCode::InvalidArgument,
          "config: k_ladder and lambda_ladder are mutually exclusive");
  require(!cfg.k || *cfg.k >= 1, ErrorCode::InvalidArgument, "config.k: must be >= 1");
  require(!cfg.lambda || (*cfg.lambda > 0.0 && std::isfinite(*cfg.lambda)),
          ErrorCode::InvalidArgument, "config.lambda: must be positive");
  for (auto k : cfg.k_ladder) {
    require(k >= 1, ErrorCode::InvalidArgument, "config.k_ladder: entries must be >= 1");
  }
  for (auto l : cfg.lambda_ladder) {
    require(l > 0.0 && std::isfinite(l), ErrorCode::InvalidArgument,
            "config.lambda_ladder: entries must be positive");
  }
  require(!cfg.link_radius || *cfg.link_radius > 0.0, ErrorCode::InvalidArgument,
          "config.link_radius: must be positive");
  require(cfg.delta_scale > 0.0 && std::isfinite(cfg.delta_scale), ErrorCode::InvalidArgument,
          "config.delta_scale: must be positive");
  return cfg;
}

json to_json(const PipelineConfig& cfg) {
  json doc;
  if (cfg.s) doc["s"] = *cfg.s;
  doc["d"] = cfg.d;
  doc["delta"] = scheduled_json(cfg.delta);
  doc["delta_scale"] = cfg.delta_scale;
  doc["gamma"] = scheduled_json(cfg.gamma);
  if (cfg.k) doc["k"] = *cfg.k;
  if (cfg.lambda) doc["lambda"] = *cfg.lambda;
  if (!cfg.k_ladder.empty()) doc["k_ladder"] = cfg.k_ladder;
  if (!cfg.lambda_ladder.empty()) doc["lambda_ladder"] = cfg.lambda_ladder;
  if (cfg.link_radius) doc["link_radius"] = *cfg.link_radius;
  doc["clip"] = cfg.clip;
  doc["seed"] = cfg.seed;
  if (cfg.lattice_resolution) doc["lattice_resolution"] = cfg.lattice_resolution;
  return doc;
}

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, source + ": " + e.what());
  }
}

json load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

}  // namespace tsclust::config
