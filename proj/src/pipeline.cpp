#include "tsclust/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>

#include "tsclust/clustering.hpp"
#include "tsclust/config.hpp"
#include "tsclust/density.hpp"
#include "tsclust/experiments.hpp"
#include "tsclust/io.hpp"
#include "tsclust/smoothing.hpp"
#include "tsclust/synthetic.hpp"

namespace tsclust::pipeline {

const OutputFile* RunOutput::find(const std::string& name) const {
  for (const auto& f : files) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

namespace {

struct Prepared {
  config::PipelineConfig cfg;
  std::size_t s = 0;
  std::size_t sd = 0;
  std::vector<std::string> ids;
  std::vector<GridSeries> grids;
  PointSet points;
  double delta = 0.0;
  json gamma_resolved = json::object();  // m -> gamma
  std::size_t empty_window_slots = 0;
};

Prepared prepare(const json& config, const std::vector<RawSeries>& input, config::PipelineMode mode,
                 bool need_points) {
  Prepared p;
  p.cfg = config::pipeline_from_json(config, mode);
  require(!input.empty(), ErrorCode::InvalidArgument, "input holds no series");
  p.s = input.front().s();
  for (const auto& y : input) {
    require(y.s() == p.s, ErrorCode::InvalidArgument,
            "series " + y.id() + " has s = " + std::to_string(y.s()) + ", expected " +
                std::to_string(p.s));
  }
  require(!p.cfg.s || *p.cfg.s == p.s, ErrorCode::InvalidArgument,
          "config.s = " + std::to_string(p.cfg.s.value_or(0)) + " but input has s = " +
              std::to_string(p.s));
  const std::size_t d = p.cfg.d;
  for (const auto& y : input) {
    require(y.m() > d, ErrorCode::Refused,
            "series " + y.id() + " has m = " + std::to_string(y.m()) + " <= d = " + std::to_string(d));
  }
  p.sd = p.s * d;
  for (const auto& y : input) {
    const double gamma = p.cfg.gamma.value ? *p.cfg.gamma.value : smoothing::gamma_schedule(y.m());
    p.gamma_resolved[std::to_string(y.m())] = gamma;
    auto est = smoothing::estimate_grid_series(y, d, {gamma, p.cfg.clip});
    p.empty_window_slots += est.empty_slots.size();
    p.ids.push_back(y.id());
    p.grids.push_back(std::move(est.grid));
  }
  if (need_points) {
    p.points = PointSet(p.sd, {});
    for (const auto& g : p.grids) p.points.push_back(g.values());
  }
  const std::size_t n = input.size();
  p.delta = p.cfg.delta.value ? *p.cfg.delta.value
                              : (n >= 3 ? density::delta_schedule(n, p.sd, p.cfg.delta_scale) : 0.0);
  require(p.delta > 0.0, ErrorCode::PreconditionViolation,
          "delta \"auto\" needs at least 3 series; give delta explicitly");
  return p;
}

json manifest(const Prepared& p, const std::string& command, std::size_t n, json extra) {
  json doc;
  doc["command"] = command;
  doc["config"] = config::to_json(p.cfg);
  doc["seed"] = p.cfg.seed;
  doc["n"] = n;
  doc["s"] = p.s;
  doc["d"] = p.cfg.d;
  doc["resolved"] = {{"delta", p.delta}, {"gamma_by_m", p.gamma_resolved}};
  doc["empty_window_slots"] = p.empty_window_slots;
  for (auto& [k, v] : extra.items()) doc["resolved"][k] = v;
  return doc;
}

double link_radius(const Prepared& p) { return p.cfg.link_radius.value_or(2.0 * p.delta); }

std::vector<std::size_t> resolve_ladder(const Prepared& p, std::size_t n) {
  std::vector<std::size_t> ks = p.cfg.k_ladder;
  for (double l : p.cfg.lambda_ladder) ks.push_back(density::min_count_for_lambda(l, n, p.delta, p.sd));
  std::sort(ks.begin(), ks.end(), std::greater<>());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

json tree_document(const Prepared& p, const clustering::ClusterTree& tree, std::size_t n) {
  // Children of cluster c at level l are the clusters at level l-1 whose parent is c.
  std::function<json(std::size_t, int)> node = [&](std::size_t level, int c) {
    const auto& lab = tree.levels[level];
    json members = json::array();
    for (auto i : lab.members(c)) members.push_back(p.ids[i]);
    json children = json::array();
    if (level > 0) {
      const auto& parents = tree.parents[level - 1];
      for (std::size_t child = 0; child < parents.size(); ++child) {
        if (parents[child] == c) children.push_back(node(level - 1, static_cast<int>(child)));
      }
    }
    return json{{"k", lab.k},
                {"lambda", density::lambda_of_k(static_cast<double>(lab.k), n, p.delta, p.sd)},
                {"cluster", c},
                {"members", std::move(members)},
                {"children", std::move(children)}};
  };
  json roots = json::array();
  json levels = json::array();
  for (const auto& lab : tree.levels) {
    levels.push_back({{"k", lab.k},
                      {"lambda", density::lambda_of_k(static_cast<double>(lab.k), n, p.delta, p.sd)},
                      {"cluster_count", lab.cluster_count}});
  }
  if (!tree.levels.empty()) {
    const std::size_t last = tree.levels.size() - 1;
    for (int c = 0; c < tree.levels[last].cluster_count; ++c) roots.push_back(node(last, c));
  }
  return {{"config", config::to_json(p.cfg)},
          {"seed", p.cfg.seed},
          {"delta", p.delta},
          {"link_radius", link_radius(p)},
          {"levels", std::move(levels)},
          {"clusters", std::move(roots)}};
}

}  // namespace

RunOutput run_cluster(const json& config, const std::vector<RawSeries>& input) {
  const Prepared p = prepare(config, input, config::PipelineMode::Cluster, true);
  const std::size_t n = input.size();
  const std::size_t k = p.cfg.k ? *p.cfg.k : density::min_count_for_lambda(*p.cfg.lambda, n, p.delta, p.sd);
  const double link = link_radius(p);
  const auto lab = clustering::dbscan_cluster(p.points, k, p.delta, link);

  RunOutput out;
  out.files.push_back({"assignments.csv", io::format_assignments_csv(p.ids, lab.assignments)});
  json extra = {{"k", k},
                {"lambda", density::lambda_of_k(static_cast<double>(k), n, p.delta, p.sd)},
                {"link_radius", link},
                {"cluster_count", lab.cluster_count}};
  if (!p.cfg.k_ladder.empty() || !p.cfg.lambda_ladder.empty()) {
    const auto ks = resolve_ladder(p, n);
    const auto tree = clustering::cluster_tree(p.points, p.delta, ks, link);
    out.files.push_back({"tree.json", dump_document(tree_document(p, tree, n))});
    extra["k_ladder"] = ks;
  }
  out.files.push_back({"manifest.json", dump_document(manifest(p, "cluster", n, extra))});
  return out;
}

RunOutput run_tree(const json& config, const std::vector<RawSeries>& input) {
  const Prepared p = prepare(config, input, config::PipelineMode::Tree, true);
  const std::size_t n = input.size();
  const auto ks = resolve_ladder(p, n);
  const auto tree = clustering::cluster_tree(p.points, p.delta, ks, link_radius(p));
  RunOutput out;
  out.files.push_back({"tree.json", dump_document(tree_document(p, tree, n))});
  out.files.push_back({"manifest.json",
                       dump_document(manifest(p, "tree", n, {{"k_ladder", ks}, {"link_radius", link_radius(p)}}))});
  return out;
}

RunOutput run_smooth(const json& config, const std::vector<RawSeries>& input) {
  json patched = config;
  // Smoothing never needs delta; keep "auto" from failing on tiny inputs.
  if (patched.is_object() && !patched.contains("delta") && input.size() < 3) patched["delta"] = 1.0;
  const Prepared p = prepare(patched, input, config::PipelineMode::Smooth, false);
  RunOutput out;
  out.files.push_back({"grid.csv", io::format_grid_csv(p.grids)});
  json doc = manifest(p, "smooth", input.size(), json::object());
  doc["resolved"].erase("delta");
  out.files.push_back({"manifest.json", dump_document(doc)});
  return out;
}

RunOutput run_synth(const json& doc) {
  config::Reader r(doc, "synth");
  const auto kind = r.need<std::string>("kind");
  const auto n = r.need<std::size_t>("n");
  const auto seed = r.get<std::uint64_t>("seed", 0);
  const json& spec_doc = r.raw("spec");
  if (spec_doc.is_null()) r.note_missing("spec");
  std::size_t m = 0, d = 0;
  if (kind == "family") {
    m = r.need<std::size_t>("m");
    d = r.need<std::size_t>("d");
  }
  r.finish();
  require(n >= 1, ErrorCode::InvalidArgument, "synth.n: must be >= 1");

  RunOutput out;
  json manifest_doc = {{"command", "synth"}, {"config", doc}, {"seed", seed}};
  if (kind == "mixture") {
    const auto spec = config::mixture_from_json(spec_doc);
    const auto sample = synthetic::sample_flat(spec, n, seed);
    std::string csv = "point_id,label";
    for (std::size_t k = 0; k < spec.dim(); ++k) csv += ",x" + std::to_string(k + 1);
    csv += '\n';
    for (std::size_t i = 0; i < n; ++i) {
      csv += synthetic::series_id(i) + ',' + std::to_string(sample.labels[i]);
      for (double v : sample.points.point(i)) csv += ',' + io::format_double(v);
      csv += '\n';
    }
    out.files.push_back({"points.csv", std::move(csv)});
    manifest_doc["spec"] = config::to_json(spec);
    manifest_doc["derived"] = {{"lambda_star", spec.lambda_star()},
                               {"lipschitz", spec.lipschitz()},
                               {"peak", spec.peak()},
                               {"margin", spec.margin()}};
  } else if (kind == "family") {
    const auto spec = config::family_from_json(spec_doc);
    const auto sample = synthetic::sample_raw_series(spec, n, m, d, seed);
    out.files.push_back({"series.csv", io::format_series_csv(sample.series)});
    std::string labels = "series_id,label\n";
    for (std::size_t i = 0; i < n; ++i) {
      labels += sample.series[i].id() + ',' + std::to_string(sample.labels[i]) + '\n';
    }
    out.files.push_back({"labels.csv", std::move(labels)});
    out.files.push_back({"truth.csv", io::format_grid_csv(sample.truth)});
    manifest_doc["spec"] = config::to_json(spec);
    manifest_doc["derived"] = {{"lipschitz", spec.lipschitz()}, {"has_jumps", spec.has_jumps()}};
  } else {
    fail(ErrorCode::InvalidArgument, "synth.kind must be \"mixture\" or \"family\"");
  }
  out.files.push_back({"manifest.json", dump_document(manifest_doc)});
  return out;
}

RunOutput run_experiment(const std::string& name, const json& config, bool include_timing) {
  const auto report = experiments::run_named(name, config);
  RunOutput out;
  out.files.push_back({"report.json", dump_document(report.to_json(include_timing))});
  for (const auto& c : report.curves) {
    std::string csv = "x,y\n";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      csv += io::format_double(c.x[i]) + ',' + io::format_double(c.y[i]) + '\n';
    }
    out.files.push_back({"curve_" + c.name + ".csv", std::move(csv)});
  }
  return out;
}

void write_outputs(const RunOutput& out, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::IoError, "cannot create directory " + dir + ": " + ec.message());
  for (const auto& f : out.files) io::write_file((std::filesystem::path(dir) / f.name).string(), f.content);
}

}  // namespace tsclust::pipeline
