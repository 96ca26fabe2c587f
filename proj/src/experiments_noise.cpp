#include <algorithm>
#include <cmath>

#include "experiments_common.hpp"
#include "tsclust/density.hpp"
#include "tsclust/random.hpp"
#include "tsclust/smoothing.hpp"

namespace tsclust::experiments {

using detail::fmt;
using nlohmann::json;

namespace {

void require_rungs_above_d(const std::vector<std::size_t>& ladder, std::size_t d,
                           const std::string& what) {
  for (auto m : ladder) {
    require(m > d, ErrorCode::PreconditionViolation,
            what + ": rung m = " + std::to_string(m) + " must exceed d = " + std::to_string(d));
  }
}

struct Estimated {
  PointSet truth;
  PointSet estimate;
  double sup_error = 0.0;  // max_i |x_i - x_hat_i|_inf
};

Estimated estimate_sample(const synthetic::FunctionFamilySpec& family, std::size_t n,
                          std::size_t m, std::size_t d, double gamma, std::uint64_t seed) {
  const auto raw = synthetic::sample_raw_series(family, n, m, d, seed);
  const std::size_t sd = family.s() * d;
  Estimated out{PointSet(sd, {}), PointSet(sd, {}), 0.0};
  const smoothing::SmootherConfig cfg{gamma, true};
  for (std::size_t i = 0; i < raw.series.size(); ++i) {
    const auto est = smoothing::estimate_grid_series(raw.series[i], d, cfg);
    out.truth.push_back(raw.truth[i].values());
    out.estimate.push_back(est.grid.values());
    out.sup_error = std::max(out.sup_error, sup_distance(raw.truth[i].values(), est.grid.values()));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- smoothing_rate

SmoothingRateConfig SmoothingRateConfig::from_json(const json& doc) {
  SmoothingRateConfig cfg;
  config::Reader r(doc, "smoothing_rate");
  if (r.has("family")) cfg.family = config::family_from_json(r.raw("family"));
  cfg.m_ladder = r.get("m_ladder", cfg.m_ladder);
  cfg.d = r.get("d", cfg.d);
  cfg.n = r.get("n", cfg.n);
  cfg.trials = r.get("trials", cfg.trials);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.band_lo = r.get("band_lo", cfg.band_lo);
  cfg.band_hi = r.get("band_hi", cfg.band_hi);
  r.finish();
  return cfg;
}

json SmoothingRateConfig::to_json() const {
  return {{"family", config::to_json(family)},
          {"m_ladder", m_ladder},
          {"d", d},
          {"n", n},
          {"trials", trials},
          {"seed", seed},
          {"band_lo", band_lo},
          {"band_hi", band_hi}};
}

ExperimentReport smoothing_rate_experiment(const SmoothingRateConfig& cfg) {
  detail::Stopwatch clock;
  detail::require_ladder(cfg.m_ladder, "smoothing_rate");
  require_rungs_above_d(cfg.m_ladder, cfg.d, "smoothing_rate");
  require(cfg.trials >= 1 && cfg.n >= 1, ErrorCode::InvalidArgument,
          "smoothing_rate: trials and n must be >= 1");
  cfg.family.check_grid(cfg.d);
  const bool noiseless = cfg.family.noise_bound() == 0.0;
  const double lf = cfg.family.lipschitz();

  ExperimentReport report;
  report.name = "smoothing_rate";
  report.config = cfg.to_json();
  report.seed = cfg.seed;

  std::vector<double> xs;
  std::vector<double> medians;
  std::size_t bias_violations = 0;
  double worst_bias_ratio = 0.0;
  for (std::size_t rung = 0; rung < cfg.m_ladder.size(); ++rung) {
    const std::size_t m = cfg.m_ladder[rung];
    const double gamma = smoothing::gamma_schedule(m);
    auto errors = run_trials(cfg.trials, [&](std::size_t t) {
      return estimate_sample(cfg.family, cfg.n, m, cfg.d, gamma, derive_seed(cfg.seed, rung + 1, t))
          .sup_error;
    });
    const double bound = lf * gamma;
    for (double e : errors) {
      if (e > bound) ++bias_violations;
      worst_bias_ratio = std::max(worst_bias_ratio, e / bound);
    }
    const double med = median(errors);
    report.rungs.push_back(
        {static_cast<double>(m), errors, med, {{"gamma", gamma}, {"bias_bound", bound}}});
    const double mm = static_cast<double>(m);
    xs.push_back(std::log(mm) / mm);
    medians.push_back(med);
  }

  const SlopeFit fit = fit_loglog(xs, medians);
  report.fit = fit;
  if (noiseless) {
    if (cfg.family.has_jumps()) {
      report.flags.push_back("bias_bound_needs_lipschitz_family");
      report.add_check("bias_bound", false, "family has jumps; l_f gamma does not apply");
    } else {
      report.add_check("bias_bound", bias_violations == 0,
                       std::to_string(bias_violations) + " trials above l_f gamma; worst ratio " +
                           fmt(worst_bias_ratio));
    }
  } else {
    detail::slope_check(report, fit, 1.0 / 3.0, cfg.band_lo, cfg.band_hi);
  }
  report.summary["noiseless"] = noiseless;
  report.summary["lipschitz"] = lf;
  report.summary["worst_bias_ratio"] = worst_bias_ratio;
  report.summary["inversions"] = count_increases(medians);

  Curve curve{"error", "log((log m)/m)", "log(median sup_i |x_i - x_hat_i|)", {}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    curve.x.push_back(std::log(xs[i]));
    curve.y.push_back(std::log(medians[i]));
  }
  report.curves.push_back(std::move(curve));
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------- noisy_kde_gap

NoisyKdeGapConfig NoisyKdeGapConfig::from_json(const json& doc) {
  NoisyKdeGapConfig cfg;
  config::Reader r(doc, "noisy_kde_gap");
  if (r.has("family")) cfg.family = config::family_from_json(r.raw("family"));
  cfg.n = r.get("n", cfg.n);
  cfg.m_ladder = r.get("m_ladder", cfg.m_ladder);
  cfg.d = r.get("d", cfg.d);
  cfg.trials = r.get("trials", cfg.trials);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.lattice_resolution = r.get("lattice_resolution", cfg.lattice_resolution);
  cfg.mc_points = r.get("mc_points", cfg.mc_points);
  cfg.delta_scale = r.get("delta_scale", cfg.delta_scale);
  cfg.final_fraction = r.get("final_fraction", cfg.final_fraction);
  cfg.markov_tau = r.get("markov_tau", cfg.markov_tau);
  cfg.z_prime = r.get("z_prime", cfg.z_prime);
  cfg.recount_stride = r.get("recount_stride", cfg.recount_stride);
  cfg.max_inversions = r.get("max_inversions", cfg.max_inversions);
  r.finish();
  return cfg;
}

json NoisyKdeGapConfig::to_json() const {
  return {{"family", config::to_json(family)},
          {"n", n},
          {"m_ladder", m_ladder},
          {"d", d},
          {"trials", trials},
          {"seed", seed},
          {"lattice_resolution", lattice_resolution},
          {"mc_points", mc_points},
          {"delta_scale", delta_scale},
          {"final_fraction", final_fraction},
          {"markov_tau", markov_tau},
          {"z_prime", z_prime},
          {"recount_stride", recount_stride},
          {"max_inversions", max_inversions}};
}

namespace {

struct GapTrial {
  double gap = 0.0;
  double sup_error = 0.0;
  double peak = 0.0;  // max of the noiseless KDE, standing in for |p|_inf
  std::size_t recount_violations = 0;
};

GapTrial gap_trial(const NoisyKdeGapConfig& cfg, const PointSet& queries, std::size_t m,
                   double gamma, double delta, std::uint64_t seed) {
  auto sample = estimate_sample(cfg.family, cfg.n, m, cfg.d, gamma, seed);
  GapTrial out;
  out.sup_error = sample.sup_error;
  const density::KdeModel exact(std::move(sample.truth), delta);
  const density::KdeModel noisy(std::move(sample.estimate), delta);
  out.peak = exact.max_sample_density();
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto x = queries.point(q);
    const std::size_t c_exact = exact.count(x);
    const std::size_t c_noisy = noisy.count(x);
    out.peak = std::max(out.peak, static_cast<double>(c_exact) / exact.normalizer());
    out.gap = std::max(out.gap, std::fabs(static_cast<double>(c_noisy) / noisy.normalizer() -
                                          static_cast<double>(c_exact) / exact.normalizer()));
    if (q % cfg.recount_stride != 0) continue;
    // Direct recount: the count difference is the net number of membership flips.
    std::size_t in_exact = 0, in_noisy = 0, flips = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const bool a = in_closed_ball(squared_distance(x, exact.points().point(i)), delta);
      const bool b = in_closed_ball(squared_distance(x, noisy.points().point(i)), delta);
      in_exact += a;
      in_noisy += b;
      flips += a != b;
    }
    const std::size_t diff = c_noisy > c_exact ? c_noisy - c_exact : c_exact - c_noisy;
    if (in_exact != c_exact || in_noisy != c_noisy || diff > flips) ++out.recount_violations;
  }
  return out;
}

}  // namespace

ExperimentReport noisy_kde_gap_experiment(const NoisyKdeGapConfig& cfg) {
  detail::Stopwatch clock;
  detail::require_ladder(cfg.m_ladder, "noisy_kde_gap");
  require_rungs_above_d(cfg.m_ladder, cfg.d, "noisy_kde_gap");
  require(cfg.trials >= 1 && cfg.n >= 1 && cfg.recount_stride >= 1, ErrorCode::InvalidArgument,
          "noisy_kde_gap: trials, n and recount_stride must be >= 1");
  require(cfg.markov_tau > 0.0 && cfg.markov_tau <= 1.0, ErrorCode::InvalidArgument,
          "noisy_kde_gap: markov_tau must lie in (0, 1]");
  cfg.family.check_grid(cfg.d);
  const std::size_t sd = cfg.family.s() * cfg.d;
  const double delta = density::delta_schedule(cfg.n, sd, cfg.delta_scale);
  const PointSet queries = density::evaluation_set(sd, cfg.lattice_resolution, cfg.mc_points,
                                                   derive_seed(cfg.seed, 0xE7A1));

  ExperimentReport report;
  report.name = "noisy_kde_gap";
  report.config = cfg.to_json();
  report.seed = cfg.seed;

  std::vector<double> medians;
  std::vector<double> peaks;
  std::size_t recount_violations = 0;
  std::size_t bound_violations = 0;
  double worst_bound_ratio = 0.0;
  const double sd_real = static_cast<double>(sd);
  for (std::size_t rung = 0; rung < cfg.m_ladder.size(); ++rung) {
    const std::size_t m = cfg.m_ladder[rung];
    const double gamma = smoothing::gamma_schedule(m);
    // The same series (and noise stream) at every rung, observed more densely.
    auto trials = run_trials(cfg.trials, [&](std::size_t t) {
      return gap_trial(cfg, queries, m, gamma, delta, derive_seed(cfg.seed, 1, t));
    });
    std::vector<double> gaps;
    std::vector<double> sup_errors;
    for (const auto& t : trials) {
      gaps.push_back(t.gap);
      sup_errors.push_back(t.sup_error);
      peaks.push_back(t.peak);
      recount_violations += t.recount_violations;
      const double z = cfg.z_prime > 0.0 ? cfg.z_prime : std::pow(2.0, sd_real) * sd_real * t.peak;
      // Sup-norm error converted to the Euclidean perturbation the bound is stated in.
      const double eps = std::sqrt(sd_real) * t.sup_error;
      const double bound = z * eps / (delta * cfg.markov_tau);
      if (t.gap > bound) ++bound_violations;
      if (bound > 0.0) worst_bound_ratio = std::max(worst_bound_ratio, t.gap / bound);
      else if (t.gap > 0.0) worst_bound_ratio = INFINITY;
    }
    const double med = median(gaps);
    medians.push_back(med);
    report.rungs.push_back({static_cast<double>(m), gaps, med,
                            {{"gamma", gamma}, {"median_sup_error", median(sup_errors)}}});
  }

  const double peak = median(peaks);
  const std::size_t inversions = count_increases(medians);
  report.add_check("nonincreasing", inversions <= cfg.max_inversions,
                   std::to_string(inversions) + " inversions");
  report.add_check("final_gap", medians.back() < cfg.final_fraction * peak,
                   "gap " + fmt(medians.back()) + " vs " + fmt(cfg.final_fraction) +
                       " |p|_inf = " + fmt(cfg.final_fraction * peak));
  report.add_check("perturbation_bound", bound_violations == 0,
                   std::to_string(bound_violations) + " trials above z' eps / (delta tau); worst ratio " +
                       fmt(worst_bound_ratio));
  report.add_check("recount", recount_violations == 0,
                   std::to_string(recount_violations) + " recount mismatches");
  report.summary["delta"] = delta;
  report.summary["peak_estimate"] = peak;
  report.summary["worst_bound_ratio"] = worst_bound_ratio;

  Curve curve{"gap", "m", "median max-lattice gap", {}, {}};
  for (std::size_t i = 0; i < medians.size(); ++i) {
    curve.x.push_back(static_cast<double>(cfg.m_ladder[i]));
    curve.y.push_back(medians[i]);
  }
  report.curves.push_back(std::move(curve));
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

}  // namespace tsclust::experiments
