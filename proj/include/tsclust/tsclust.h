/* C interface to the tsclust library. All functions return a tsc_status;
 * on failure tsc_last_error() holds a message for the calling thread. */
#ifndef TSCLUST_H
#define TSCLUST_H

#include <stddef.h>

#if defined(TSC_BUILDING_LIBRARY)
#define TSC_API __attribute__((visibility("default")))
#else
#define TSC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsc_status {
  TSC_OK = 0,
  TSC_INVALID_ARGUMENT = 1,
  TSC_PRECONDITION_VIOLATION = 2,
  TSC_PARSE_ERROR = 3,
  TSC_SCHEMA_ERROR = 4,
  TSC_IO_ERROR = 5,
  TSC_UNKNOWN_NAME = 6,
  TSC_OVERFLOW = 7,
  TSC_REFUSED = 8,
  TSC_INTERNAL_ERROR = 99
} tsc_status;

/* snake_case name of a status, e.g. "parse_error". */
TSC_API const char* tsc_status_name(tsc_status status);
TSC_API const char* tsc_last_error(void);
TSC_API const char* tsc_version(void);

/* Geometry */
TSC_API tsc_status tsc_ball_volume(int dim, double* out);
TSC_API tsc_status tsc_reg_inc_beta(double x, double a, double b, double* out);
TSC_API tsc_status tsc_ball_sym_diff_volume(double dist, double delta, int dim, double* out);
/* outside_regime is set to 1 when eps > delta (the bound is then not claimed). */
TSC_API tsc_status tsc_ball_sym_diff_bound(double eps, double delta, int dim, double* out,
                                           int* outside_regime);

/* Spherical-kernel density estimate. Points are row-major, n x dim. */
typedef struct tsc_kde tsc_kde;
TSC_API tsc_status tsc_kde_create(const double* points, size_t n, size_t dim, double delta,
                                  tsc_kde** out);
TSC_API void tsc_kde_destroy(tsc_kde* kde);
TSC_API tsc_status tsc_kde_eval(const tsc_kde* kde, const double* x, double* out);
TSC_API tsc_status tsc_kde_count(const tsc_kde* kde, const double* x, size_t* out);
TSC_API tsc_status tsc_kde_level_set_member(const tsc_kde* kde, double lambda, const double* x,
                                            int* out);
TSC_API tsc_status tsc_lambda_of_k(double k, size_t n, double delta, size_t dim, double* out);
TSC_API tsc_status tsc_delta_schedule(size_t n, size_t dim, double* out);

/* DBSCAN over row-major points. link_radius <= 0 selects 2 delta. labels
 * receives n cluster ids, -1 for noise. */
TSC_API tsc_status tsc_dbscan(const double* points, size_t n, size_t dim, size_t k, double delta,
                              double link_radius, int* labels, int* cluster_count);

/* Document-level runs. Each produces a set of named output files. */
typedef struct tsc_output tsc_output;
TSC_API tsc_status tsc_run_cluster(const char* config_json, const char* input_csv_path,
                                   tsc_output** out);
TSC_API tsc_status tsc_run_tree(const char* config_json, const char* input_csv_path,
                                tsc_output** out);
TSC_API tsc_status tsc_run_smooth(const char* config_json, const char* input_csv_path,
                                  tsc_output** out);
TSC_API tsc_status tsc_run_synth(const char* config_json, tsc_output** out);
/* config_json may be NULL or "{}" for the pinned defaults. */
TSC_API tsc_status tsc_run_experiment(const char* name, const char* config_json,
                                      int include_timing, tsc_output** out);

TSC_API size_t tsc_output_count(const tsc_output* out);
TSC_API const char* tsc_output_name(const tsc_output* out, size_t i);
TSC_API const char* tsc_output_content(const tsc_output* out, size_t i, size_t* length);
TSC_API tsc_status tsc_output_write(const tsc_output* out, const char* dir);
TSC_API void tsc_output_destroy(tsc_output* out);

/* Experiment registry */
TSC_API size_t tsc_experiment_count(void);
TSC_API const char* tsc_experiment_name(size_t i);
TSC_API const char* tsc_experiment_description(size_t i);
/* Pinned default configuration as a JSON document (one output file, "config.json"). */
TSC_API tsc_status tsc_experiment_default_config(const char* name, tsc_output** out);

#ifdef __cplusplus
}
#endif

#endif
