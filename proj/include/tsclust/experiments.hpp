#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsclust/report.hpp"
#include "tsclust/synthetic.hpp"

namespace tsclust::experiments {

synthetic::MixtureSpec default_rate_mixture();
synthetic::MixtureSpec default_separated_mixture();
synthetic::FunctionFamilySpec default_smoothing_family(double noise_bound);
synthetic::FunctionFamilySpec default_step_family();
synthetic::FunctionFamilySpec default_crossing_pair();

// Geometric ladder base * ratio^i, rounded to integers.
std::vector<std::size_t> geometric_ladder(std::size_t base, double ratio, std::size_t rungs);
bool is_geometric(const std::vector<std::size_t>& ladder, double rel_tol = 1e-2);

struct KdeRateConfig {
  synthetic::MixtureSpec spec = default_rate_mixture();
  std::vector<std::size_t> n_ladder = geometric_ladder(256, 2.0, 7);
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t lattice_resolution = 200;
  std::size_t mc_points = 4096;  // evaluation points when sd > 2
  double delta_scale = 1.0;
  double band_lo = 0.3;  // slope band, as multiples of 1/(2+sd)
  double band_hi = 2.0;
  std::size_t max_inversions = 1;

  static KdeRateConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
ExperimentReport kde_rate_experiment(const KdeRateConfig& cfg);

struct SandwichConfig {
  synthetic::MixtureSpec spec = default_rate_mixture();
  std::size_t n = 4096;
  double lambda = 0.0;  // 0 selects the midpoint of (lambda*, peak)
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t lattice_resolution = 200;
  double delta_scale = 1.0;
  // eps fixed a priori as c_prime (log n / n)^{1/(2+sd)}; 0 skips that check.
  // The default is calibrate_c_prime() under the default calibration settings.
  double c_prime = 6.4946659301729461;
  std::uint64_t calibration_seed = 7;
  std::size_t calibration_trials = 100;
  double calibration_quantile = 0.95;
  double min_apriori_frequency = 0.9;

  static SandwichConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
// Quantile of (realized sup error / rate) over calibration trials.
double calibrate_c_prime(const SandwichConfig& cfg);
ExperimentReport sandwich_experiment(const SandwichConfig& cfg);

struct HartiganConfig {
  synthetic::MixtureSpec spec = default_separated_mixture();
  std::vector<std::size_t> n_ladder = geometric_ladder(256, 2.0, 4);
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double delta_scale = 0.5;
  // Tree levels are k(lambda) for lambda = factor * lambda*, plus k = 1.
  std::vector<double> lambda_factors = {2.0, 1.0, 0.5, 0.25};
  double min_frequency = 0.95;
  double margin_factor = 4.0;  // margin >= margin_factor * delta at the largest rung
  std::size_t max_inversions = 1;

  static HartiganConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
ExperimentReport hartigan_experiment(const HartiganConfig& cfg);

struct SmoothingRateConfig {
  synthetic::FunctionFamilySpec family = default_smoothing_family(0.1);
  std::vector<std::size_t> m_ladder = geometric_ladder(128, 2.0, 8);
  std::size_t d = 5;
  std::size_t n = 50;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  double band_lo = 0.3;  // slope band, as multiples of 1/3
  double band_hi = 2.0;

  static SmoothingRateConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
// Noisy families are judged on the slope, noiseless ones on the bias bound.
ExperimentReport smoothing_rate_experiment(const SmoothingRateConfig& cfg);

struct NoisyKdeGapConfig {
  synthetic::FunctionFamilySpec family = default_step_family();
  std::size_t n = 1000;
  std::vector<std::size_t> m_ladder = geometric_ladder(64, 2.0, 9);
  std::size_t d = 2;
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  std::size_t lattice_resolution = 100;
  std::size_t mc_points = 4096;
  double delta_scale = 1.0;
  double final_fraction = 0.05;  // largest-rung gap must drop below this times |p|_inf
  double markov_tau = 1.0;
  double z_prime = 0.0;  // 0 uses 2^{sd} sd |p|_inf with |p|_inf estimated
  std::size_t recount_stride = 7;
  std::size_t max_inversions = 1;

  static NoisyKdeGapConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
ExperimentReport noisy_kde_gap_experiment(const NoisyKdeGapConfig& cfg);

struct SymDiffConfig {
  std::vector<int> dims = {1, 2, 3, 4};
  std::size_t pairs = 10000;
  std::size_t mc_budget = 1000000;
  std::uint64_t seed = 1;
  double delta_lo = 0.1;
  double delta_hi = 2.0;
  double max_z = 4.0;

  static SymDiffConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
struct SymDiffMc {
  double value;
  double std_error;
};
// Hit-or-miss estimate of |B(0, delta) xor B(dist e_1, delta)| over the bounding box.
SymDiffMc sym_diff_monte_carlo(double dist, double delta, int dim, std::size_t budget,
                               std::uint64_t seed);
ExperimentReport sym_diff_mc_experiment(const SymDiffConfig& cfg);

struct GridResolutionConfig {
  synthetic::FunctionFamilySpec family = default_crossing_pair();
  std::size_t d1 = 5;
  std::size_t d2 = 20;
  std::size_t n = 40;
  std::size_t m = 5000;
  double gamma = 0.001;  // <= 0 selects the gamma schedule
  double delta = 0.1;
  std::size_t k = 3;
  std::uint64_t seed = 1;
  bool require_coincident = true;
  std::size_t expected_d1 = 1;
  std::size_t expected_d2 = 2;

  static GridResolutionConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
// Largest gap between two templates' values on the grid 1/d, ..., 1.
double template_grid_gap(const synthetic::FunctionTemplate& a, const synthetic::FunctionTemplate& b,
                         std::size_t d);
ExperimentReport grid_resolution_experiment(const GridResolutionConfig& cfg);

// (ln n / n)^{1/(2 + s d)}, with d allowed to be real.
double rate_fn(double n, double s, double d);

struct CompensatingDifferential {
  double closed_form;  // 0.74 (n / ln n)^{2 + 2s/(2+sd)} - n
  double numeric;      // root of r_{n+D}^{d+1} = r_n^d
};
CompensatingDifferential compensating_differential(double n, double s, double d);

struct DimensionalityConfig {
  std::vector<double> ratio_n = {1e3, 1e4, 1e5, 1e6};
  std::vector<double> ratio_s = {1.0};
  std::vector<double> ratio_d = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> derivative_n = {1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> derivative_s = {1.0, 2.0};
  std::vector<double> derivative_d = {1.0, 2.0, 3.0, 4.0};
  double ratio_lo = 0.2;
  double ratio_hi = 5.0;
  double backsub_tol = 1e-9;
  double derivative_step = 1e-4;

  static DimensionalityConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};
ExperimentReport dimensionality_experiment(const DimensionalityConfig& cfg);

// Name -> runner. Configs are JSON objects; missing keys take the pinned defaults.
struct ExperimentEntry {
  std::string name;
  std::string description;
  std::function<nlohmann::json()> default_config;
  std::function<ExperimentReport(const nlohmann::json&)> run;
};
const std::vector<ExperimentEntry>& registry();
std::vector<std::string> experiment_names();
// Throws UnknownName listing the available experiments.
const ExperimentEntry& find_experiment(const std::string& name);
ExperimentReport run_named(const std::string& name, const nlohmann::json& config);

}  // namespace tsclust::experiments
