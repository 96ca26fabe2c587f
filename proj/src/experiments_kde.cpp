#include <algorithm>
#include <cmath>

#include "experiments_common.hpp"
#include "tsclust/clustering.hpp"
#include "tsclust/density.hpp"
#include "tsclust/random.hpp"

namespace tsclust::experiments {

using detail::fmt;
using nlohmann::json;

namespace {

double rate(std::size_t n, std::size_t sd) {
  const double nn = static_cast<double>(n);
  return std::pow(std::log(nn) / nn, 1.0 / (2.0 + static_cast<double>(sd)));
}

}  // namespace

// ---------------------------------------------------------------- kde_rate

KdeRateConfig KdeRateConfig::from_json(const json& doc) {
  KdeRateConfig cfg;
  config::Reader r(doc, "kde_rate");
  if (r.has("spec")) cfg.spec = config::mixture_from_json(r.raw("spec"));
  cfg.n_ladder = r.get("n_ladder", cfg.n_ladder);
  cfg.trials = r.get("trials", cfg.trials);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.lattice_resolution = r.get("lattice_resolution", cfg.lattice_resolution);
  cfg.mc_points = r.get("mc_points", cfg.mc_points);
  cfg.delta_scale = r.get("delta_scale", cfg.delta_scale);
  cfg.band_lo = r.get("band_lo", cfg.band_lo);
  cfg.band_hi = r.get("band_hi", cfg.band_hi);
  cfg.max_inversions = r.get("max_inversions", cfg.max_inversions);
  r.finish();
  return cfg;
}

json KdeRateConfig::to_json() const {
  return {{"spec", config::to_json(spec)},
          {"n_ladder", n_ladder},
          {"trials", trials},
          {"seed", seed},
          {"lattice_resolution", lattice_resolution},
          {"mc_points", mc_points},
          {"delta_scale", delta_scale},
          {"band_lo", band_lo},
          {"band_hi", band_hi},
          {"max_inversions", max_inversions}};
}

ExperimentReport kde_rate_experiment(const KdeRateConfig& cfg) {
  detail::Stopwatch clock;
  detail::require_ladder(cfg.n_ladder, "kde_rate");
  require(cfg.trials >= 1, ErrorCode::InvalidArgument, "kde_rate: trials must be >= 1");
  const std::size_t sd = cfg.spec.dim();
  ExperimentReport report;
  report.name = "kde_rate";
  report.config = cfg.to_json();
  report.seed = cfg.seed;

  const PointSet eval = density::evaluation_set(sd, cfg.lattice_resolution, cfg.mc_points,
                                                derive_seed(cfg.seed, 0xE7A1));
  const density::DensityFn truth = [&](std::span<const double> x) {
    return synthetic::true_density(cfg.spec, x);
  };

  std::vector<double> xs;
  std::vector<double> medians;
  for (std::size_t rung = 0; rung < cfg.n_ladder.size(); ++rung) {
    const std::size_t n = cfg.n_ladder[rung];
    const double delta = density::delta_schedule(n, sd, cfg.delta_scale);
    auto errors = run_trials(cfg.trials, [&](std::size_t t) {
      auto sample = synthetic::sample_flat(cfg.spec, n, derive_seed(cfg.seed, rung + 1, t));
      const density::KdeModel kde(std::move(sample.points), delta);
      return density::sup_norm_error([&](std::span<const double> x) { return kde.eval(x); },
                                     truth, eval);
    });
    const double med = median(errors);
    report.rungs.push_back({static_cast<double>(n), errors, med, {{"delta", delta}}});
    const double nn = static_cast<double>(n);
    xs.push_back(std::log(nn) / nn);
    medians.push_back(med);
  }

  const SlopeFit fit = fit_loglog(xs, medians);
  report.fit = fit;
  detail::slope_check(report, fit, 1.0 / (2.0 + static_cast<double>(sd)), cfg.band_lo,
                      cfg.band_hi);
  const std::size_t inversions = count_increases(medians);
  report.add_check("monotone", inversions <= cfg.max_inversions,
                   std::to_string(inversions) + " inversions (limit " +
                       std::to_string(cfg.max_inversions) + ")");
  report.summary["inversions"] = inversions;
  report.summary["theoretical_slope"] = 1.0 / (2.0 + static_cast<double>(sd));

  Curve curve{"error", "log((log n)/n)", "log(median sup error)", {}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    curve.x.push_back(std::log(xs[i]));
    curve.y.push_back(std::log(medians[i]));
  }
  report.curves.push_back(std::move(curve));
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------- sandwich

SandwichConfig SandwichConfig::from_json(const json& doc) {
  SandwichConfig cfg;
  config::Reader r(doc, "sandwich");
  if (r.has("spec")) cfg.spec = config::mixture_from_json(r.raw("spec"));
  cfg.n = r.get("n", cfg.n);
  cfg.lambda = r.get("lambda", cfg.lambda);
  cfg.trials = r.get("trials", cfg.trials);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.lattice_resolution = r.get("lattice_resolution", cfg.lattice_resolution);
  cfg.delta_scale = r.get("delta_scale", cfg.delta_scale);
  cfg.c_prime = r.get("c_prime", cfg.c_prime);
  cfg.calibration_seed = r.get("calibration_seed", cfg.calibration_seed);
  cfg.calibration_trials = r.get("calibration_trials", cfg.calibration_trials);
  cfg.calibration_quantile = r.get("calibration_quantile", cfg.calibration_quantile);
  cfg.min_apriori_frequency = r.get("min_apriori_frequency", cfg.min_apriori_frequency);
  r.finish();
  return cfg;
}

json SandwichConfig::to_json() const {
  return {{"spec", config::to_json(spec)},
          {"n", n},
          {"lambda", lambda},
          {"trials", trials},
          {"seed", seed},
          {"lattice_resolution", lattice_resolution},
          {"delta_scale", delta_scale},
          {"c_prime", c_prime},
          {"calibration_seed", calibration_seed},
          {"calibration_trials", calibration_trials},
          {"calibration_quantile", calibration_quantile},
          {"min_apriori_frequency", min_apriori_frequency}};
}

namespace {

double resolve_lambda(const SandwichConfig& cfg) {
  const double lo = cfg.spec.lambda_star();
  const double hi = cfg.spec.peak();
  const double lambda = cfg.lambda > 0.0 ? cfg.lambda : 0.5 * (lo + hi);
  require(lambda > lo && lambda < hi, ErrorCode::PreconditionViolation,
          "sandwich: lambda must lie strictly between lambda* (" + fmt(lo) + ") and the peak (" +
              fmt(hi) + ")");
  return lambda;
}

struct SandwichTrial {
  double eps_lattice = 0.0;  // realized sup error over the lattice
  double eps_ball = 0.0;     // over lattice and sample points
  bool set_measured = true;
  bool ball_measured = true;
  bool set_apriori = true;
  bool apriori_covered = true;  // realized error <= a-priori eps
};

struct LatticeValues {
  std::vector<double> truth;
  std::vector<double> estimate;
};

// Set form: {p >= lambda + eps} within {p_hat >= lambda} within {p >= lambda - eps}.
bool set_inclusions(const LatticeValues& v, double lambda, double eps) {
  for (std::size_t i = 0; i < v.truth.size(); ++i) {
    const bool in_hat = v.estimate[i] >= lambda;
    if (v.truth[i] >= lambda + eps && !in_hat) return false;
    if (in_hat && v.truth[i] < lambda - eps) return false;
  }
  return true;
}

SandwichTrial sandwich_trial(const SandwichConfig& cfg, const PointSet& lattice, double lambda,
                             double eps_apriori, std::uint64_t seed) {
  const std::size_t sd = cfg.spec.dim();
  const double delta = density::delta_schedule(cfg.n, sd, cfg.delta_scale);
  auto sample = synthetic::sample_flat(cfg.spec, cfg.n, seed);
  const density::KdeModel kde(std::move(sample.points), delta);

  LatticeValues v;
  SandwichTrial out;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto x = lattice.point(i);
    v.truth.push_back(synthetic::true_density(cfg.spec, x));
    v.estimate.push_back(kde.eval(x));
    out.eps_lattice = std::max(out.eps_lattice, std::fabs(v.estimate.back() - v.truth.back()));
  }
  out.eps_ball = out.eps_lattice;
  for (std::size_t i = 0; i < kde.size(); ++i) {
    const auto x = kde.points().point(i);
    out.eps_ball = std::max(out.eps_ball,
                            std::fabs(kde.sample_density(i) - synthetic::true_density(cfg.spec, x)));
  }
  out.set_measured = set_inclusions(v, lambda, out.eps_lattice);
  if (eps_apriori > 0.0) {
    out.set_apriori = set_inclusions(v, lambda, eps_apriori);
    out.apriori_covered = out.eps_lattice <= eps_apriori;
  }

  // Ball-union form needs the Lipschitz slack l_p delta on top of the error.
  const double slack = out.eps_ball + cfg.spec.lipschitz() * delta;
  for (std::size_t i = 0; i < lattice.size() && out.ball_measured; ++i) {
    const bool member = kde.level_set_member(lambda, lattice.point(i));
    if (v.truth[i] >= lambda + slack && !member) out.ball_measured = false;
    if (member && v.truth[i] < lambda - slack) out.ball_measured = false;
  }
  return out;
}

}  // namespace

double calibrate_c_prime(const SandwichConfig& cfg) {
  const PointSet lattice = density::unit_lattice(cfg.spec.dim(), cfg.lattice_resolution);
  const double lambda = resolve_lambda(cfg);
  const double r = rate(cfg.n, cfg.spec.dim());
  auto ratios = run_trials(cfg.calibration_trials, [&](std::size_t t) {
    return sandwich_trial(cfg, lattice, lambda, 0.0, derive_seed(cfg.calibration_seed, 1, t))
               .eps_lattice /
           r;
  });
  return quantile(ratios, cfg.calibration_quantile);
}

ExperimentReport sandwich_experiment(const SandwichConfig& cfg) {
  detail::Stopwatch clock;
  require(cfg.trials >= 1, ErrorCode::InvalidArgument, "sandwich: trials must be >= 1");
  const std::size_t sd = cfg.spec.dim();
  const double lambda = resolve_lambda(cfg);
  const PointSet lattice = density::unit_lattice(sd, cfg.lattice_resolution);
  const double eps_apriori = cfg.c_prime * rate(cfg.n, sd);

  ExperimentReport report;
  report.name = "sandwich";
  report.config = cfg.to_json();
  report.seed = cfg.seed;

  auto trials = run_trials(cfg.trials, [&](std::size_t t) {
    return sandwich_trial(cfg, lattice, lambda, eps_apriori, derive_seed(cfg.seed, 1, t));
  });

  std::vector<double> eps_values;
  std::size_t set_ok = 0, ball_ok = 0, apriori_ok = 0, covered = 0;
  double max_eps = 0.0;
  for (const auto& t : trials) {
    eps_values.push_back(t.eps_lattice);
    set_ok += t.set_measured;
    ball_ok += t.ball_measured;
    apriori_ok += t.set_apriori;
    covered += t.apriori_covered;
    max_eps = std::max(max_eps, t.eps_lattice);
  }
  const double count = static_cast<double>(trials.size());
  const double set_freq = static_cast<double>(set_ok) / count;
  const double ball_freq = static_cast<double>(ball_ok) / count;
  Rung rung{static_cast<double>(cfg.n), eps_values, set_freq, {}};
  rung.extra["delta"] = density::delta_schedule(cfg.n, sd, cfg.delta_scale);
  rung.extra["ball_union_frequency"] = ball_freq;
  report.rungs.push_back(std::move(rung));

  report.add_check("inclusion_measured_eps", set_freq == 1.0,
                   "frequency " + fmt(set_freq) + " over " + std::to_string(trials.size()) +
                       " trials");
  report.add_check("inclusion_ball_union", ball_freq == 1.0,
                   "frequency " + fmt(ball_freq) + " with slack eps + l_p delta");
  if (cfg.c_prime > 0.0) {
    const double freq = static_cast<double>(apriori_ok) / count;
    report.add_check("inclusion_apriori_eps", freq >= cfg.min_apriori_frequency,
                     "frequency " + fmt(freq) + " with eps = " + fmt(eps_apriori));
    report.summary["apriori_frequency"] = freq;
    report.summary["apriori_coverage"] = static_cast<double>(covered) / count;
    report.summary["eps_apriori"] = eps_apriori;
  }
  if (lambda - max_eps <= 0.0) report.flags.push_back("lower_inclusion_trivial");
  report.summary["lambda"] = lambda;
  report.summary["inclusion_frequency"] = set_freq;
  report.summary["median_eps"] = median(eps_values);
  report.summary["max_eps"] = max_eps;
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------- hartigan

HartiganConfig HartiganConfig::from_json(const json& doc) {
  HartiganConfig cfg;
  config::Reader r(doc, "hartigan");
  if (r.has("spec")) cfg.spec = config::mixture_from_json(r.raw("spec"));
  cfg.n_ladder = r.get("n_ladder", cfg.n_ladder);
  cfg.trials = r.get("trials", cfg.trials);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.delta_scale = r.get("delta_scale", cfg.delta_scale);
  cfg.lambda_factors = r.get("lambda_factors", cfg.lambda_factors);
  cfg.min_frequency = r.get("min_frequency", cfg.min_frequency);
  cfg.margin_factor = r.get("margin_factor", cfg.margin_factor);
  cfg.max_inversions = r.get("max_inversions", cfg.max_inversions);
  r.finish();
  return cfg;
}

json HartiganConfig::to_json() const {
  return {{"spec", config::to_json(spec)},
          {"n_ladder", n_ladder},
          {"trials", trials},
          {"seed", seed},
          {"delta_scale", delta_scale},
          {"lambda_factors", lambda_factors},
          {"min_frequency", min_frequency},
          {"margin_factor", margin_factor},
          {"max_inversions", max_inversions}};
}

namespace {

std::vector<std::size_t> tree_levels(const HartiganConfig& cfg, std::size_t n, double delta) {
  std::vector<std::size_t> ks{1};
  for (double f : cfg.lambda_factors) {
    ks.push_back(density::min_count_for_lambda(f * cfg.spec.lambda_star(), n, delta,
                                               cfg.spec.dim()));
  }
  std::sort(ks.begin(), ks.end(), std::greater<>());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

}  // namespace

ExperimentReport hartigan_experiment(const HartiganConfig& cfg) {
  detail::Stopwatch clock;
  detail::require_ladder(cfg.n_ladder, "hartigan");
  require(cfg.trials >= 1, ErrorCode::InvalidArgument, "hartigan: trials must be >= 1");
  const std::size_t sd = cfg.spec.dim();
  const bool single = cfg.spec.size() == 1;

  ExperimentReport report;
  report.name = "hartigan";
  report.config = cfg.to_json();
  report.seed = cfg.seed;
  if (single) report.flags.push_back("single_component_a_equals_a_prime");

  std::vector<double> freqs;
  for (std::size_t rung = 0; rung < cfg.n_ladder.size(); ++rung) {
    const std::size_t n = cfg.n_ladder[rung];
    const double delta = density::delta_schedule(n, sd, cfg.delta_scale);
    const auto ks = tree_levels(cfg, n, delta);
    auto outcomes = run_trials(cfg.trials, [&](std::size_t t) {
      const auto sample = synthetic::sample_flat(cfg.spec, n, derive_seed(cfg.seed, rung + 1, t));
      std::vector<std::size_t> a, a_prime;
      const auto& c0 = cfg.spec.component(0);
      const auto& c1 = cfg.spec.component(single ? 0 : 1);
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = sample.points.point(i);
        if (c0.in_inner_core(x)) a.push_back(i);
        if (c1.in_inner_core(x)) a_prime.push_back(i);
      }
      if (a.empty() || a_prime.empty()) return 0.0;
      const auto tree = clustering::cluster_tree(sample.points, delta, ks);
      return clustering::hartigan_disjoint(tree, a, a_prime) ? 1.0 : 0.0;
    });
    double hits = 0.0;
    for (double o : outcomes) hits += o;
    const double freq = hits / static_cast<double>(outcomes.size());
    freqs.push_back(freq);
    report.rungs.push_back({static_cast<double>(n), outcomes, freq, {{"delta", delta}, {"ks", ks}}});
  }

  const double last_delta = density::delta_schedule(cfg.n_ladder.back(), sd, cfg.delta_scale);
  const double margin = cfg.spec.margin();
  report.add_check("margin_condition", single || margin >= cfg.margin_factor * last_delta,
                   "margin " + fmt(margin) + " vs " + fmt(cfg.margin_factor) + " delta = " +
                       fmt(cfg.margin_factor * last_delta));
  report.add_check("final_frequency", freqs.back() >= cfg.min_frequency,
                   "frequency " + fmt(freqs.back()) + " at n = " +
                       std::to_string(cfg.n_ladder.back()));
  const std::size_t inversions = count_decreases(freqs);
  report.add_check("nondecreasing", inversions <= cfg.max_inversions,
                   std::to_string(inversions) + " inversions");
  report.summary["frequencies"] = freqs;
  report.summary["lambda_star"] = cfg.spec.lambda_star();
  report.summary["margin"] = margin;

  Curve curve{"separation", "n", "separation frequency", {}, {}};
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    curve.x.push_back(static_cast<double>(cfg.n_ladder[i]));
    curve.y.push_back(freqs[i]);
  }
  report.curves.push_back(std::move(curve));
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

}  // namespace tsclust::experiments
