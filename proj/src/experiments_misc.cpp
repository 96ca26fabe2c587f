#include <algorithm>
#include <cmath>

#include "experiments_common.hpp"
#include "tsclust/clustering.hpp"
#include "tsclust/geometry.hpp"
#include "tsclust/random.hpp"
#include "tsclust/smoothing.hpp"

namespace tsclust::experiments {

using detail::fmt;
using nlohmann::json;

// ---------------------------------------------------------------- sym_diff_mc

SymDiffConfig SymDiffConfig::from_json(const json& doc) {
  SymDiffConfig cfg;
  config::Reader r(doc, "sym_diff_mc");
  cfg.dims = r.get("dims", cfg.dims);
  cfg.pairs = r.get("pairs", cfg.pairs);
  cfg.mc_budget = r.get("mc_budget", cfg.mc_budget);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.delta_lo = r.get("delta_lo", cfg.delta_lo);
  cfg.delta_hi = r.get("delta_hi", cfg.delta_hi);
  cfg.max_z = r.get("max_z", cfg.max_z);
  r.finish();
  return cfg;
}

json SymDiffConfig::to_json() const {
  return {{"dims", dims},
          {"pairs", pairs},
          {"mc_budget", mc_budget},
          {"seed", seed},
          {"delta_lo", delta_lo},
          {"delta_hi", delta_hi},
          {"max_z", max_z}};
}

SymDiffMc sym_diff_monte_carlo(double dist, double delta, int dim, std::size_t budget,
                               std::uint64_t seed) {
  require(dim >= 1 && delta > 0.0 && dist >= 0.0 && budget >= 1, ErrorCode::InvalidArgument,
          "sym_diff_monte_carlo: bad arguments");
  Rng rng(seed);
  const double r2 = delta * delta;
  const double len0 = dist + 2.0 * delta;
  const double side = 2.0 * delta;
  // Two 32-bit uniforms per engine call; the resolution is far below the MC error.
  std::uint64_t word = 0;
  bool have_low = false;
  auto uniform32 = [&] {
    if (have_low) {
      have_low = false;
      return (static_cast<double>(word & 0xFFFFFFFFu) + 0.5) * 0x1.0p-32;
    }
    word = rng.next_u64();
    have_low = true;
    return (static_cast<double>(word >> 32) + 0.5) * 0x1.0p-32;
  };
  std::size_t hits = 0;
  for (std::size_t i = 0; i < budget; ++i) {
    const double x0 = -delta + len0 * uniform32();
    double rest = 0.0;
    for (int k = 1; k < dim; ++k) {
      const double y = -delta + side * uniform32();
      rest += y * y;
    }
    const bool in_a = x0 * x0 + rest <= r2;
    const bool in_b = (x0 - dist) * (x0 - dist) + rest <= r2;
    hits += in_a != in_b;
  }
  const double box = len0 * std::pow(side, dim - 1);
  const double p = static_cast<double>(hits) / static_cast<double>(budget);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(budget))};
}

ExperimentReport sym_diff_mc_experiment(const SymDiffConfig& cfg) {
  detail::Stopwatch clock;
  require(!cfg.dims.empty(), ErrorCode::InvalidArgument, "sym_diff_mc: dims is empty");
  for (int d : cfg.dims) {
    require(d >= 1 && d <= 6, ErrorCode::PreconditionViolation, "sym_diff_mc: dims must lie in 1..6");
  }
  require(cfg.delta_lo > 0.0 && cfg.delta_hi >= cfg.delta_lo, ErrorCode::InvalidArgument,
          "sym_diff_mc: bad delta range");

  ExperimentReport report;
  report.name = "sym_diff_mc";
  report.config = cfg.to_json();
  report.seed = cfg.seed;

  struct PairResult {
    int dim;
    double z;
    bool bound_ok;
  };
  auto results = run_trials(cfg.pairs, [&](std::size_t i) {
    Rng rng(cfg.seed, 1, i);
    const int dim = cfg.dims[rng.index(cfg.dims.size())];
    const double delta = rng.uniform(cfg.delta_lo, cfg.delta_hi);
    const double dist = rng.uniform(0.0, delta);
    const double exact = geometry::ball_sym_diff_volume(dist, delta, dim);
    const auto bound = geometry::ball_sym_diff_bound(dist, delta, dim);
    const auto mc = sym_diff_monte_carlo(dist, delta, dim, cfg.mc_budget, derive_seed(cfg.seed, 2, i));
    // Binomial standard error under the exact value.
    const double box = (dist + 2.0 * delta) * std::pow(2.0 * delta, dim - 1);
    const double p = std::clamp(exact / box, 0.0, 1.0);
    const double se = box * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.mc_budget));
    double z = 0.0;
    if (se > 0.0) z = (mc.value - exact) / se;
    else if (mc.value != exact) z = INFINITY;
    return PairResult{dim, z, exact <= bound.value};
  });

  double max_abs_z = 0.0;
  std::size_t violations = 0;
  std::size_t over = 0;
  std::vector<double> zs;
  for (const auto& r : results) {
    zs.push_back(r.z);
    max_abs_z = std::max(max_abs_z, std::fabs(r.z));
    violations += !r.bound_ok;
    over += std::fabs(r.z) > cfg.max_z;
  }
  for (int d : cfg.dims) {
    std::vector<double> per_dim;
    for (const auto& r : results) {
      if (r.dim == d) per_dim.push_back(r.z);
    }
    double m = 0.0;
    for (double z : per_dim) m = std::max(m, std::fabs(z));
    report.rungs.push_back({static_cast<double>(d), per_dim, m, {}});
  }

  // Dimension one: exact and bound coincide at dist = eps = delta.
  std::size_t dim1_mismatch = 0;
  for (double delta : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double exact = geometry::ball_sym_diff_volume(delta, delta, 1);
    const double bound = geometry::ball_sym_diff_bound(delta, delta, 1).value;
    dim1_mismatch += exact != bound || exact != 2.0 * delta;
  }

  report.add_check("mc_agreement", max_abs_z <= cfg.max_z,
                   "max |z| = " + fmt(max_abs_z) + " over " + std::to_string(results.size()) +
                       " pairs; " + std::to_string(over) + " above " + fmt(cfg.max_z));
  report.add_check("bound", violations == 0, std::to_string(violations) + " bound violations");
  report.add_check("dim1_equality", dim1_mismatch == 0,
                   std::to_string(dim1_mismatch) + " mismatches at dist = delta");
  report.summary["max_abs_z"] = max_abs_z;
  report.summary["pairs_above_max_z"] = over;
  report.summary["bound_violations"] = violations;
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------- grid_resolution

GridResolutionConfig GridResolutionConfig::from_json(const json& doc) {
  GridResolutionConfig cfg;
  config::Reader r(doc, "grid_resolution");
  if (r.has("family")) cfg.family = config::family_from_json(r.raw("family"));
  cfg.d1 = r.get("d1", cfg.d1);
  cfg.d2 = r.get("d2", cfg.d2);
  cfg.n = r.get("n", cfg.n);
  cfg.m = r.get("m", cfg.m);
  cfg.gamma = r.get("gamma", cfg.gamma);
  cfg.delta = r.get("delta", cfg.delta);
  cfg.k = r.get("k", cfg.k);
  cfg.seed = r.get("seed", cfg.seed);
  cfg.require_coincident = r.get("require_coincident", cfg.require_coincident);
  cfg.expected_d1 = r.get("expected_d1", cfg.expected_d1);
  cfg.expected_d2 = r.get("expected_d2", cfg.expected_d2);
  r.finish();
  return cfg;
}

json GridResolutionConfig::to_json() const {
  return {{"family", config::to_json(family)},
          {"d1", d1},
          {"d2", d2},
          {"n", n},
          {"m", m},
          {"gamma", gamma},
          {"delta", delta},
          {"k", k},
          {"seed", seed},
          {"require_coincident", require_coincident},
          {"expected_d1", expected_d1},
          {"expected_d2", expected_d2}};
}

double template_grid_gap(const synthetic::FunctionTemplate& a, const synthetic::FunctionTemplate& b,
                         std::size_t d) {
  require(a.components.size() == b.components.size(), ErrorCode::InvalidArgument,
          "template_grid_gap: templates differ in s");
  double gap = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = GridSeries::slot_time(j, d);
    for (std::size_t k = 0; k < a.components.size(); ++k) {
      gap = std::max(gap, std::fabs(a.components[k].value(t) - b.components[k].value(t)));
    }
  }
  return gap;
}

namespace {

constexpr double kCoincidenceTol = 1e-9;

clustering::Labeling cluster_at(const GridResolutionConfig& cfg, std::size_t d, double gamma) {
  const auto raw = synthetic::sample_raw_series(cfg.family, cfg.n, cfg.m, d, cfg.seed);
  PointSet points(cfg.family.s() * d, {});
  for (const auto& s : raw.series) {
    points.push_back(smoothing::estimate_grid_series(s, d, {gamma, true}).grid.values());
  }
  return clustering::dbscan_cluster(points, cfg.k, cfg.delta);
}

}  // namespace

ExperimentReport grid_resolution_experiment(const GridResolutionConfig& cfg) {
  detail::Stopwatch clock;
  require(cfg.family.templates().size() == 2, ErrorCode::InvalidArgument,
          "grid_resolution: family must hold exactly two templates");
  require(cfg.d2 > cfg.d1 && cfg.d1 >= 1, ErrorCode::PreconditionViolation,
          "grid_resolution: requires 1 <= d1 < d2");
  require(cfg.m > cfg.d2, ErrorCode::PreconditionViolation, "grid_resolution: requires m > d2");
  const auto& a = cfg.family.templates()[0];
  const auto& b = cfg.family.templates()[1];
  const double gap1 = template_grid_gap(a, b, cfg.d1);
  const double gap2 = template_grid_gap(a, b, cfg.d2);
  if (cfg.require_coincident) {
    require(gap1 <= kCoincidenceTol, ErrorCode::InvalidArgument,
            "grid_resolution: templates differ by " + fmt(gap1) + " on the coarse grid");
  }
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : smoothing::gamma_schedule(cfg.m);

  ExperimentReport report;
  report.name = "grid_resolution";
  report.config = cfg.to_json();
  report.seed = cfg.seed;
  if (gap1 > kCoincidenceTol) report.flags.push_back("separated_on_coarse_grid");
  if (gap2 <= kCoincidenceTol) report.flags.push_back("identical_on_fine_grid");

  const auto coarse = cluster_at(cfg, cfg.d1, gamma);
  const auto fine = cluster_at(cfg, cfg.d2, gamma);
  for (const auto* lab : {&coarse, &fine}) {
    std::vector<double> ids(lab->assignments.begin(), lab->assignments.end());
    report.rungs.push_back({static_cast<double>(lab == &coarse ? cfg.d1 : cfg.d2), ids,
                            static_cast<double>(lab->cluster_count), {}});
  }
  const auto c1 = static_cast<std::size_t>(coarse.cluster_count);
  const auto c2 = static_cast<std::size_t>(fine.cluster_count);
  report.add_check("coarse_count", c1 == cfg.expected_d1,
                   std::to_string(c1) + " clusters at d = " + std::to_string(cfg.d1));
  report.add_check("fine_count", c2 == cfg.expected_d2,
                   std::to_string(c2) + " clusters at d = " + std::to_string(cfg.d2));
  report.summary["counts"] = {c1, c2};
  report.summary["template_gap"] = {gap1, gap2};
  report.summary["gamma"] = gamma;
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------- dimensionality arithmetic

double rate_fn(double n, double s, double d) {
  require(n >= 3.0 && s > 0.0 && d > 0.0, ErrorCode::InvalidArgument, "rate_fn: requires n >= 3, s, d > 0");
  return std::pow(std::log(n) / n, 1.0 / (2.0 + s * d));
}

CompensatingDifferential compensating_differential(double n, double s, double d) {
  require(n >= 3.0 && s > 0.0 && d > 0.0, ErrorCode::InvalidArgument,
          "compensating_differential: requires n >= 3, s, d > 0");
  CompensatingDifferential out;
  out.closed_form = 0.74 * std::pow(n / std::log(n), 2.0 + 2.0 * s / (2.0 + s * d)) - n;

  // Work in u = ln N, where ln((ln N)/N) = ln u - u decreases for u > 1.
  const double target = std::log(std::log(n) / n) / (2.0 + s * d);
  const double denom = 2.0 + s * (d + 1.0);
  auto h = [&](double u) { return (std::log(u) - u) / denom - target; };
  double lo = std::log(n);
  double hi = std::min(709.0, 64.0 * std::log(n));
  if (h(hi) > 0.0) {
    fail(ErrorCode::Overflow, "compensating_differential: no root below N = exp(" + fmt(hi) + ")");
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  out.numeric = std::exp(0.5 * (lo + hi)) - n;
  return out;
}

DimensionalityConfig DimensionalityConfig::from_json(const json& doc) {
  DimensionalityConfig cfg;
  config::Reader r(doc, "dimensionality");
  cfg.ratio_n = r.get("ratio_n", cfg.ratio_n);
  cfg.ratio_s = r.get("ratio_s", cfg.ratio_s);
  cfg.ratio_d = r.get("ratio_d", cfg.ratio_d);
  cfg.derivative_n = r.get("derivative_n", cfg.derivative_n);
  cfg.derivative_s = r.get("derivative_s", cfg.derivative_s);
  cfg.derivative_d = r.get("derivative_d", cfg.derivative_d);
  cfg.ratio_lo = r.get("ratio_lo", cfg.ratio_lo);
  cfg.ratio_hi = r.get("ratio_hi", cfg.ratio_hi);
  cfg.backsub_tol = r.get("backsub_tol", cfg.backsub_tol);
  cfg.derivative_step = r.get("derivative_step", cfg.derivative_step);
  r.finish();
  return cfg;
}

json DimensionalityConfig::to_json() const {
  return {{"ratio_n", ratio_n},
          {"ratio_s", ratio_s},
          {"ratio_d", ratio_d},
          {"derivative_n", derivative_n},
          {"derivative_s", derivative_s},
          {"derivative_d", derivative_d},
          {"ratio_lo", ratio_lo},
          {"ratio_hi", ratio_hi},
          {"backsub_tol", backsub_tol},
          {"derivative_step", derivative_step}};
}

ExperimentReport dimensionality_experiment(const DimensionalityConfig& cfg) {
  detail::Stopwatch clock;
  ExperimentReport report;
  report.name = "dimensionality";
  report.config = cfg.to_json();

  double worst_backsub = 0.0;
  double ratio_min = INFINITY;
  double ratio_max = 0.0;
  std::size_t out_of_band = 0;
  json table = json::array();
  for (double s : cfg.ratio_s) {
    for (double d : cfg.ratio_d) {
      Curve curve{"ratio_s" + fmt(s) + "_d" + fmt(d), "log10 n", "log10(closed / numeric)", {}, {}};
      std::vector<double> ratios;
      for (double n : cfg.ratio_n) {
        const auto cd = compensating_differential(n, s, d);
        const double r0 = rate_fn(n, s, d);
        const double back = std::fabs(rate_fn(n + cd.numeric, s, d + 1.0) - r0) / r0;
        worst_backsub = std::max(worst_backsub, back);
        const double ratio = cd.closed_form / cd.numeric;
        ratios.push_back(ratio);
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
        out_of_band += !(ratio >= cfg.ratio_lo && ratio <= cfg.ratio_hi);
        table.push_back({{"n", n}, {"s", s}, {"d", d}, {"closed_form", cd.closed_form},
                         {"numeric", cd.numeric}, {"ratio", ratio}, {"backsub_rel_error", back}});
        curve.x.push_back(std::log10(n));
        curve.y.push_back(std::log10(ratio));
      }
      report.rungs.push_back({d, ratios, median(ratios), {{"s", s}}});
      report.curves.push_back(std::move(curve));
    }
  }

  std::size_t nonpositive = 0;
  const double h = cfg.derivative_step;
  for (double n : cfg.derivative_n) {
    for (double s : cfg.derivative_s) {
      for (double d : cfg.derivative_d) {
        const double deriv = (rate_fn(n, s, d + h) - rate_fn(n, s, d - h)) / (2.0 * h);
        nonpositive += !(deriv > 0.0);
      }
    }
  }

  report.add_check("backsubstitution", worst_backsub <= cfg.backsub_tol,
                   "worst relative residual " + fmt(worst_backsub));
  report.add_check("closed_form_ratio", out_of_band == 0,
                   std::to_string(out_of_band) + " grid points outside [" + fmt(cfg.ratio_lo) + ", " +
                       fmt(cfg.ratio_hi) + "]; ratio range [" + fmt(ratio_min) + ", " +
                       fmt(ratio_max) + "]");
  report.add_check("rate_increases_with_d", nonpositive == 0,
                   std::to_string(nonpositive) + " grid points with dr/dd <= 0");
  report.summary["table"] = std::move(table);
  report.summary["ratio_min"] = ratio_min;
  report.summary["ratio_max"] = ratio_max;
  report.finalize();
  report.wall_clock_seconds = clock.seconds();
  return report;
}

}  // namespace tsclust::experiments
