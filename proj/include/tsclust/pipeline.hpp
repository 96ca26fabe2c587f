#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tsclust/series.hpp"

namespace tsclust::pipeline {

using nlohmann::json;

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunOutput {
  std::vector<OutputFile> files;
  const OutputFile* find(const std::string& name) const;
};

// assignments.csv, manifest.json, and tree.json when a ladder is configured.
RunOutput run_cluster(const json& config, const std::vector<RawSeries>& input);
// tree.json and manifest.json.
RunOutput run_tree(const json& config, const std::vector<RawSeries>& input);
// grid.csv (estimated series on 1/d, ..., 1) and manifest.json.
RunOutput run_smooth(const json& config, const std::vector<RawSeries>& input);
// {"kind": "mixture" | "family", ...}: generated fixture files and manifest.json.
RunOutput run_synth(const json& config);
// report.json and one curve_<name>.csv (x,y) per curve.
RunOutput run_experiment(const std::string& name, const json& config, bool include_timing);

// Creates the directory if needed and writes every file into it.
void write_outputs(const RunOutput& out, const std::string& dir);

std::string dump_document(const json& doc);

}  // namespace tsclust::pipeline
