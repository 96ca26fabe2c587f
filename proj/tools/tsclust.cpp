// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tsclust/tsclust.h"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailed = 1;
constexpr int kExitCheckFailed = 3;

int report_error(const std::string& code, const std::string& message, int exit_code) {
  const json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
  return exit_code;
}

int report_status(tsc_status status) {
  return report_error(tsc_status_name(status), tsc_last_error(),
                      status == TSC_INVALID_ARGUMENT ? kExitUsage : kExitFailed);
}

struct Failure {
  std::string code;
  std::string message;
};

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"io_error", "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Failure{"parse_error", path + ": " + e.what()};
  }
}

// "auto" stays a string, everything else must be a number.
json number_or_auto(const std::string& text, const std::string& flag) {
  if (text == "auto") return "auto";
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Failure{"invalid_argument", flag + ": expected a number or \"auto\", got '" + text + "'"};
}

struct PipelineFlags {
  std::string input;
  std::string out;
  std::string config;
  std::optional<std::size_t> s, d, k;
  std::optional<double> lambda, link_radius, delta_scale;
  std::optional<std::string> delta, gamma;
  std::vector<std::size_t> k_ladder;
  std::vector<double> lambda_ladder;
  std::optional<std::uint64_t> seed;
  bool no_clip = false;

  void add_to(CLI::App* cmd, bool levels) {
    cmd->add_option("--input", input, "Series CSV (series_id,time,v1,...,vs)")->required();
    cmd->add_option("--out", out, "Output directory")->required();
    cmd->add_option("--config", config, "JSON config; flags override its keys");
    cmd->add_option("--s", s, "Series dimension (checked against the input)");
    cmd->add_option("--d", d, "Grid size");
    cmd->add_option("--delta", delta, "Ball radius or \"auto\"");
    cmd->add_option("--delta-scale", delta_scale, "Multiplier for the automatic delta");
    cmd->add_option("--gamma", gamma, "Smoother bandwidth or \"auto\"");
    cmd->add_flag("--no-clip", no_clip, "Do not clip estimates into [0, 1]");
    cmd->add_option("--seed", seed, "Seed recorded in the outputs");
    if (levels) {
      cmd->add_option("--k", k, "Neighbour count for core points");
      cmd->add_option("--lambda", lambda, "Density level (converted to k)");
      cmd->add_option("--k-ladder", k_ladder, "Tree levels as neighbour counts")->delimiter(',');
      cmd->add_option("--lambda-ladder", lambda_ladder, "Tree levels as densities")->delimiter(',');
      cmd->add_option("--link-radius", link_radius, "Core linking radius (default 2 delta)");
    }
  }

  json build() const {
    json cfg = config.empty() ? json::object() : load_json(config);
    if (!cfg.is_object()) throw Failure{"schema_error", "config must be a JSON object"};
    if (s) cfg["s"] = *s;
    if (d) cfg["d"] = *d;
    if (delta) cfg["delta"] = number_or_auto(*delta, "--delta");
    if (delta_scale) cfg["delta_scale"] = *delta_scale;
    if (gamma) cfg["gamma"] = number_or_auto(*gamma, "--gamma");
    if (k) cfg["k"] = *k;
    if (lambda) cfg["lambda"] = *lambda;
    if (!k_ladder.empty()) cfg["k_ladder"] = k_ladder;
    if (!lambda_ladder.empty()) cfg["lambda_ladder"] = lambda_ladder;
    if (link_radius) cfg["link_radius"] = *link_radius;
    if (no_clip) cfg["clip"] = false;
    if (seed) cfg["seed"] = *seed;
    return cfg;
  }
};

int finish(tsc_status status, tsc_output* out, const std::string& dir) {
  if (status != TSC_OK) return report_status(status);
  const tsc_status written = tsc_output_write(out, dir.c_str());
  if (written != TSC_OK) {
    tsc_output_destroy(out);
    return report_status(written);
  }
  json summary = {{"status", "ok"}, {"out", dir}, {"files", json::array()}};
  for (std::size_t i = 0; i < tsc_output_count(out); ++i) summary["files"].push_back(tsc_output_name(out, i));
  tsc_output_destroy(out);
  std::cout << summary.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-based clustering of multivariate time series"};
  app.set_version_flag("--version", std::string(tsc_version()));
  app.require_subcommand(1);

  PipelineFlags cluster_flags, tree_flags, smooth_flags;
  auto* cluster = app.add_subcommand("cluster", "Smooth, flatten and DBSCAN-cluster series");
  cluster_flags.add_to(cluster, true);
  auto* tree = app.add_subcommand("tree", "Build the cluster tree over a k or lambda ladder");
  tree_flags.add_to(tree, true);
  auto* smooth = app.add_subcommand("smooth", "Estimate every series on the grid 1/d, ..., 1");
  smooth_flags.add_to(smooth, false);

  std::string synth_config, synth_out;
  auto* synth = app.add_subcommand("synth", "Generate fixture data from a mixture or family spec");
  synth->add_option("--config", synth_config, "JSON: {kind, spec, n, [m, d], seed}")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();

  std::string exp_name, exp_config, exp_out;
  std::vector<std::string> exp_sets;
  std::optional<std::uint64_t> exp_seed;
  bool exp_list = false, exp_timing = false, exp_strict = false, exp_defaults = false;
  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment from the registry");
  experiment->add_option("name", exp_name, "Experiment name");
  experiment->add_option("--config", exp_config, "JSON config layered over the pinned defaults");
  experiment->add_option("--set", exp_sets, "key=JSON override, repeatable");
  experiment->add_option("--seed", exp_seed, "Seed override");
  experiment->add_option("--out", exp_out, "Output directory");
  experiment->add_flag("--list", exp_list, "List experiments and exit");
  experiment->add_flag("--defaults", exp_defaults, "Print the pinned default config and exit");
  experiment->add_flag("--timing", exp_timing, "Record wall-clock time in report.json");
  experiment->add_flag("--strict", exp_strict, "Exit 3 when the report does not pass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("invalid_argument", e.what(), kExitUsage);
  }

  try {
    tsc_output* out = nullptr;
    if (*cluster) {
      const std::string cfg = cluster_flags.build().dump();
      const tsc_status st = tsc_run_cluster(cfg.c_str(), cluster_flags.input.c_str(), &out);
      return finish(st, out, cluster_flags.out);
    }
    if (*tree) {
      const std::string cfg = tree_flags.build().dump();
      const tsc_status st = tsc_run_tree(cfg.c_str(), tree_flags.input.c_str(), &out);
      return finish(st, out, tree_flags.out);
    }
    if (*smooth) {
      const std::string cfg = smooth_flags.build().dump();
      const tsc_status st = tsc_run_smooth(cfg.c_str(), smooth_flags.input.c_str(), &out);
      return finish(st, out, smooth_flags.out);
    }
    if (*synth) {
      const std::string cfg = load_json(synth_config).dump();
      const tsc_status st = tsc_run_synth(cfg.c_str(), &out);
      return finish(st, out, synth_out);
    }
    if (exp_list) {
      json list = json::array();
      for (std::size_t i = 0; i < tsc_experiment_count(); ++i) {
        list.push_back({{"name", tsc_experiment_name(i)}, {"description", tsc_experiment_description(i)}});
      }
      std::cout << list.dump(2) << '\n';
      return 0;
    }
    if (exp_name.empty()) return report_error("invalid_argument", "experiment: a name is required", kExitUsage);
    if (exp_defaults) {
      const tsc_status st = tsc_experiment_default_config(exp_name.c_str(), &out);
      if (st != TSC_OK) return report_status(st);
      std::cout << tsc_output_content(out, 0, nullptr);
      tsc_output_destroy(out);
      return 0;
    }
    if (exp_out.empty()) return report_error("invalid_argument", "experiment: --out is required", kExitUsage);
    json cfg = exp_config.empty() ? json::object() : load_json(exp_config);
    if (!cfg.is_object()) throw Failure{"schema_error", "config must be a JSON object"};
    for (const auto& kv : exp_sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw Failure{"invalid_argument", "--set expects key=JSON, got '" + kv + "'"};
      try {
        cfg[kv.substr(0, eq)] = json::parse(kv.substr(eq + 1));
      } catch (const json::parse_error&) {
        cfg[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
    }
    if (exp_seed) cfg["seed"] = *exp_seed;
    const std::string text = cfg.dump();
    const tsc_status st = tsc_run_experiment(exp_name.c_str(), text.c_str(), exp_timing ? 1 : 0, &out);
    if (st != TSC_OK) return report_status(st);
    bool passed = false;
    for (std::size_t i = 0; i < tsc_output_count(out); ++i) {
      if (std::string(tsc_output_name(out, i)) == "report.json") {
        passed = json::parse(tsc_output_content(out, i, nullptr)).value("pass", false);
      }
    }
    const int code = finish(TSC_OK, out, exp_out);
    if (code != 0) return code;
    return exp_strict && !passed ? kExitCheckFailed : 0;
  } catch (const Failure& f) {
    return report_error(f.code, f.message, f.code == "invalid_argument" ? kExitUsage : kExitFailed);
  }
}
