#include "tsclust/tsclust.h"

#include <new>
#include <string>

#include "tsclust/config.hpp"
#include "tsclust/density.hpp"
#include "tsclust/clustering.hpp"
#include "tsclust/error.hpp"
#include "tsclust/experiments.hpp"
#include "tsclust/geometry.hpp"
#include "tsclust/io.hpp"
#include "tsclust/pipeline.hpp"

struct tsc_kde {
  tsclust::density::KdeModel model;
};

struct tsc_output {
  tsclust::pipeline::RunOutput files;
};

namespace {

thread_local std::string last_error;

tsc_status to_status(tsclust::ErrorCode code) {
  using tsclust::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TSC_INVALID_ARGUMENT;
    case ErrorCode::PreconditionViolation: return TSC_PRECONDITION_VIOLATION;
    case ErrorCode::ParseError: return TSC_PARSE_ERROR;
    case ErrorCode::SchemaError: return TSC_SCHEMA_ERROR;
    case ErrorCode::IoError: return TSC_IO_ERROR;
    case ErrorCode::UnknownName: return TSC_UNKNOWN_NAME;
    case ErrorCode::Overflow: return TSC_OVERFLOW;
    case ErrorCode::Refused: return TSC_REFUSED;
  }
  return TSC_INTERNAL_ERROR;
}

template <class Fn>
tsc_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return TSC_OK;
  } catch (const tsclust::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return TSC_INTERNAL_ERROR;
}

void need(const void* p, const char* what) {
  tsclust::require(p != nullptr, tsclust::ErrorCode::InvalidArgument,
                   std::string(what) + " must not be null");
}

nlohmann::json parse_config(const char* text) {
  if (text == nullptr || *text == '\0') return nlohmann::json::object();
  return tsclust::config::parse_document(text, "config");
}

tsclust::PointSet copy_points(const double* points, size_t n, size_t dim) {
  need(points, "points");
  tsclust::require(n >= 1 && dim >= 1, tsclust::ErrorCode::InvalidArgument,
                   "need n >= 1 and dim >= 1");
  return tsclust::PointSet(dim, std::vector<double>(points, points + n * dim));
}

template <class Run>
tsc_status run_document(tsc_output** out, Run&& run) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new tsc_output{run()};
  });
}

}  // namespace

extern "C" {

const char* tsc_status_name(tsc_status status) {
  switch (status) {
    case TSC_OK: return "ok";
    case TSC_INVALID_ARGUMENT: return "invalid_argument";
    case TSC_PRECONDITION_VIOLATION: return "precondition_violation";
    case TSC_PARSE_ERROR: return "parse_error";
    case TSC_SCHEMA_ERROR: return "schema_error";
    case TSC_IO_ERROR: return "io_error";
    case TSC_UNKNOWN_NAME: return "unknown_name";
    case TSC_OVERFLOW: return "overflow";
    case TSC_REFUSED: return "refused";
    case TSC_INTERNAL_ERROR: return "internal_error";
  }
  return "internal_error";
}

const char* tsc_last_error(void) { return last_error.c_str(); }

const char* tsc_version(void) { return "0.1.0"; }

tsc_status tsc_ball_volume(int dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tsclust::geometry::ball_volume(dim);
  });
}

tsc_status tsc_reg_inc_beta(double x, double a, double b, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tsclust::geometry::reg_inc_beta(x, a, b);
  });
}

tsc_status tsc_ball_sym_diff_volume(double dist, double delta, int dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tsclust::geometry::ball_sym_diff_volume(dist, delta, dim);
  });
}

tsc_status tsc_ball_sym_diff_bound(double eps, double delta, int dim, double* out,
                                   int* outside_regime) {
  return guard([&] {
    need(out, "out");
    const auto b = tsclust::geometry::ball_sym_diff_bound(eps, delta, dim);
    *out = b.value;
    if (outside_regime) *outside_regime = b.outside_regime ? 1 : 0;
  });
}

tsc_status tsc_kde_create(const double* points, size_t n, size_t dim, double delta, tsc_kde** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new tsc_kde{tsclust::density::KdeModel(copy_points(points, n, dim), delta)};
  });
}

void tsc_kde_destroy(tsc_kde* kde) { delete kde; }

tsc_status tsc_kde_eval(const tsc_kde* kde, const double* x, double* out) {
  return guard([&] {
    need(kde, "kde");
    need(x, "x");
    need(out, "out");
    *out = kde->model.eval({x, kde->model.dim()});
  });
}

tsc_status tsc_kde_count(const tsc_kde* kde, const double* x, size_t* out) {
  return guard([&] {
    need(kde, "kde");
    need(x, "x");
    need(out, "out");
    *out = kde->model.count({x, kde->model.dim()});
  });
}

tsc_status tsc_kde_level_set_member(const tsc_kde* kde, double lambda, const double* x, int* out) {
  return guard([&] {
    need(kde, "kde");
    need(x, "x");
    need(out, "out");
    *out = kde->model.level_set_member(lambda, {x, kde->model.dim()}) ? 1 : 0;
  });
}

tsc_status tsc_lambda_of_k(double k, size_t n, double delta, size_t dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tsclust::density::lambda_of_k(k, n, delta, dim);
  });
}

tsc_status tsc_delta_schedule(size_t n, size_t dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = tsclust::density::delta_schedule(n, dim);
  });
}

tsc_status tsc_dbscan(const double* points, size_t n, size_t dim, size_t k, double delta,
                      double link_radius, int* labels, int* cluster_count) {
  return guard([&] {
    need(labels, "labels");
    const auto pts = copy_points(points, n, dim);
    std::optional<double> link;
    if (link_radius > 0.0) link = link_radius;
    const auto lab = tsclust::clustering::dbscan_cluster(pts, k, delta, link);
    for (size_t i = 0; i < n; ++i) labels[i] = lab.assignments[i];
    if (cluster_count) *cluster_count = lab.cluster_count;
  });
}

tsc_status tsc_run_cluster(const char* config_json, const char* input_csv_path, tsc_output** out) {
  return run_document(out, [&] {
    need(input_csv_path, "input_csv_path");
    const auto cfg = parse_config(config_json);
    return tsclust::pipeline::run_cluster(cfg, tsclust::io::ingest_series_csv(input_csv_path));
  });
}

tsc_status tsc_run_tree(const char* config_json, const char* input_csv_path, tsc_output** out) {
  return run_document(out, [&] {
    need(input_csv_path, "input_csv_path");
    const auto cfg = parse_config(config_json);
    return tsclust::pipeline::run_tree(cfg, tsclust::io::ingest_series_csv(input_csv_path));
  });
}

tsc_status tsc_run_smooth(const char* config_json, const char* input_csv_path, tsc_output** out) {
  return run_document(out, [&] {
    need(input_csv_path, "input_csv_path");
    const auto cfg = parse_config(config_json);
    return tsclust::pipeline::run_smooth(cfg, tsclust::io::ingest_series_csv(input_csv_path));
  });
}

tsc_status tsc_run_synth(const char* config_json, tsc_output** out) {
  return run_document(out, [&] { return tsclust::pipeline::run_synth(parse_config(config_json)); });
}

tsc_status tsc_run_experiment(const char* name, const char* config_json, int include_timing,
                              tsc_output** out) {
  return run_document(out, [&] {
    need(name, "name");
    return tsclust::pipeline::run_experiment(name, parse_config(config_json), include_timing != 0);
  });
}

size_t tsc_output_count(const tsc_output* out) { return out ? out->files.files.size() : 0; }

const char* tsc_output_name(const tsc_output* out, size_t i) {
  if (!out || i >= out->files.files.size()) return nullptr;
  return out->files.files[i].name.c_str();
}

const char* tsc_output_content(const tsc_output* out, size_t i, size_t* length) {
  if (!out || i >= out->files.files.size()) {
    if (length) *length = 0;
    return nullptr;
  }
  const auto& f = out->files.files[i];
  if (length) *length = f.content.size();
  return f.content.c_str();
}

tsc_status tsc_output_write(const tsc_output* out, const char* dir) {
  return guard([&] {
    need(out, "out");
    need(dir, "dir");
    tsclust::pipeline::write_outputs(out->files, dir);
  });
}

void tsc_output_destroy(tsc_output* out) { delete out; }

size_t tsc_experiment_count(void) { return tsclust::experiments::registry().size(); }

const char* tsc_experiment_name(size_t i) {
  const auto& r = tsclust::experiments::registry();
  return i < r.size() ? r[i].name.c_str() : nullptr;
}

const char* tsc_experiment_description(size_t i) {
  const auto& r = tsclust::experiments::registry();
  return i < r.size() ? r[i].description.c_str() : nullptr;
}

tsc_status tsc_experiment_default_config(const char* name, tsc_output** out) {
  return run_document(out, [&] {
    need(name, "name");
    const auto& e = tsclust::experiments::find_experiment(name);
    tsclust::pipeline::RunOutput doc;
    doc.files.push_back({"config.json", tsclust::pipeline::dump_document(e.default_config())});
    return doc;
  });
}

}  // extern "C"
