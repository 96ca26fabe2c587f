#include <cmath>

#include "experiments_common.hpp"

namespace tsclust::experiments {

using nlohmann::json;

namespace {

synthetic::MixtureComponent triangle(double weight, double center, double half_width) {
  return {weight, {{center, half_width, synthetic::BumpShape::Triangular}}};
}

}  // namespace

synthetic::MixtureSpec default_rate_mixture() {
  return synthetic::MixtureSpec(1, {triangle(0.5, 0.25, 0.2), triangle(0.5, 0.75, 0.2)});
}

synthetic::MixtureSpec default_separated_mixture() {
  return synthetic::MixtureSpec(1, {triangle(0.5, 0.175, 0.155), triangle(0.5, 0.825, 0.155)});
}

synthetic::FunctionFamilySpec default_smoothing_family(double noise_bound) {
  synthetic::ComponentTemplate a;
  a.offset = 0.35;
  a.amplitude = 0.1;
  a.frequency = 1.0;
  synthetic::ComponentTemplate b;
  b.offset = 0.7;
  b.slope = -0.1;
  b.amplitude = 0.08;
  b.frequency = 2.0;
  b.phase = 0.25;
  return synthetic::FunctionFamilySpec(1, {{0.5, {a}}, {0.5, {b}}}, noise_bound, 0.05, 0.1);
}

synthetic::FunctionFamilySpec default_step_family() {
  synthetic::ComponentTemplate a;
  a.offset = 0.3;
  a.jump_at = 0.75;
  a.jump_size = 0.3;
  synthetic::ComponentTemplate b;
  b.offset = 0.7;
  b.jump_at = 0.75;
  b.jump_size = -0.3;
  return synthetic::FunctionFamilySpec(1, {{0.5, {a}}, {0.5, {b}}}, 0.1, 0.08, 0.2);
}

synthetic::FunctionFamilySpec default_crossing_pair() {
  // 0.5 +- 0.3 sin(10 pi t): equal at multiples of 1/5, 0.6 apart at odd multiples of 1/20.
  synthetic::ComponentTemplate a;
  a.offset = 0.5;
  a.amplitude = 0.3;
  a.frequency = 5.0;
  synthetic::ComponentTemplate b = a;
  b.phase = 0.5;
  return synthetic::FunctionFamilySpec(1, {{0.5, {a}}, {0.5, {b}}}, 0.01, 0.01, 0.0);
}

std::vector<std::size_t> geometric_ladder(std::size_t base, double ratio, std::size_t rungs) {
  require(base >= 1 && ratio > 1.0, ErrorCode::InvalidArgument,
          "geometric_ladder: needs base >= 1 and ratio > 1");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rungs; ++i) {
    out.push_back(static_cast<std::size_t>(
        std::llround(static_cast<double>(base) * std::pow(ratio, static_cast<double>(i)))));
  }
  return out;
}

bool is_geometric(const std::vector<std::size_t>& ladder, double rel_tol) {
  for (auto v : ladder) {
    if (v == 0) return false;
  }
  if (ladder.size() < 2) return true;
  const double r0 = static_cast<double>(ladder[1]) / static_cast<double>(ladder[0]);
  if (!(r0 > 1.0)) return false;
  for (std::size_t i = 2; i < ladder.size(); ++i) {
    const double r = static_cast<double>(ladder[i]) / static_cast<double>(ladder[i - 1]);
    if (std::fabs(r - r0) > rel_tol * r0) return false;
  }
  return true;
}

namespace detail {

void slope_check(ExperimentReport& report, const SlopeFit& fit, double exponent, double band_lo,
                 double band_hi) {
  if (!fit.defined) {
    report.flags.push_back("insufficient_data");
    report.add_check("slope", false,
                     "slope undefined: " + std::to_string(fit.points) + " usable rungs, need 5");
    return;
  }
  const double lo = band_lo * exponent;
  const double hi = band_hi * exponent;
  report.add_check("slope", fit.slope >= lo && fit.slope <= hi,
                   "slope " + fmt(fit.slope) + " in [" + fmt(lo) + ", " + fmt(hi) +
                       "] around " + fmt(exponent));
}

}  // namespace detail

namespace {

template <class Config, class Runner>
ExperimentEntry make_entry(std::string name, std::string description, Config defaults,
                           Runner runner) {
  return {name, std::move(description), [defaults] { return defaults.to_json(); },
          [defaults, runner](const json& doc) {
            // Layer the given keys over the pinned defaults.
            json merged = defaults.to_json();
            if (!doc.is_null()) {
              require(doc.is_object(), ErrorCode::SchemaError, "experiment config must be an object");
              merged.merge_patch(doc);
            }
            return runner(Config::from_json(merged));
          }};
}

std::vector<ExperimentEntry> build_registry() {
  std::vector<ExperimentEntry> out;
  out.push_back(make_entry("kde_rate", "sup-norm KDE error against the (log n / n) rate",
                           KdeRateConfig{}, kde_rate_experiment));
  out.push_back(make_entry("sandwich", "level-set inclusions under the realized sup error",
                           SandwichConfig{}, sandwich_experiment));
  out.push_back(make_entry("hartigan", "separation frequency of two population clusters",
                           HartiganConfig{}, hartigan_experiment));
  out.push_back(make_entry("smoothing_rate", "noisy series: smoothing error against (log m / m)",
                           SmoothingRateConfig{}, smoothing_rate_experiment));
  SmoothingRateConfig bias;
  bias.family = default_smoothing_family(0.0);
  bias.trials = 3;
  out.push_back(make_entry("smoothing_bias", "noiseless series: error within l_f gamma",
                           bias, smoothing_rate_experiment));
  out.push_back(make_entry("noisy_kde_gap", "KDE from estimated series against KDE from true grids",
                           NoisyKdeGapConfig{}, noisy_kde_gap_experiment));
  out.push_back(make_entry("sym_diff_mc", "ball symmetric difference: formula, bound and Monte Carlo",
                           SymDiffConfig{}, sym_diff_mc_experiment));
  out.push_back(make_entry("grid_resolution", "cluster counts for a template pair at two grid sizes",
                           GridResolutionConfig{}, grid_resolution_experiment));
  out.push_back(make_entry("dimensionality", "rate curse of dimensionality and compensating sample size",
                           DimensionalityConfig{}, dimensionality_experiment));
  return out;
}

}  // namespace

const std::vector<ExperimentEntry>& registry() {
  static const std::vector<ExperimentEntry> entries = build_registry();
  return entries;
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

const ExperimentEntry& find_experiment(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  std::string list;
  for (const auto& n : experiment_names()) list += (list.empty() ? "" : ", ") + n;
  fail(ErrorCode::UnknownName, "unknown experiment '" + name + "'; available: " + list);
}

ExperimentReport run_named(const std::string& name, const json& config) {
  return find_experiment(name).run(config);
}

}  // namespace tsclust::experiments
