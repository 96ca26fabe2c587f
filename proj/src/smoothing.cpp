#include "tsclust/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsclust/error.hpp"

namespace tsclust::smoothing {

void SmootherConfig::validate() const {
  require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::InvalidArgument,
          "SmootherConfig: gamma must be positive");
}

double kernel_le(double u) {
  if (u < -1.0 || u > 0.0) return 0.0;
  return 2.0 - 2.0 * u * u;
}

double kernel_epanechnikov(double u) {
  if (u < -1.0 || u > 1.0) return 0.0;
  return 0.75 * (1.0 - u * u);
}

Weights nw_weights(double t, std::span<const double> times, double gamma) {
  require(gamma > 0.0, ErrorCode::InvalidArgument, "nw_weights: gamma must be positive");
  Weights out;
  out.w.assign(times.size(), 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    out.w[j] = kernel_le((times[j] - t) / gamma);
    total += out.w[j];
  }
  if (total == 0.0) {
    out.empty_window = true;
    return out;
  }
  for (double& w : out.w) w /= total;
  return out;
}

namespace {

template <class Kernel>
PointEstimate windowed_average(const RawSeries& y, double t, double gamma, double lo, double hi,
                               Kernel kernel, bool clip) {
  const auto times = y.times();
  // Slightly widened search bounds; samples outside the kernel support get
  // exactly zero weight either way.
  const double slack = 1e-12 * gamma;
  const auto first = std::lower_bound(times.begin(), times.end(), lo - slack);
  const auto last = std::upper_bound(times.begin(), times.end(), hi + slack);

  PointEstimate out;
  out.value.assign(y.s(), 0.0);
  double total = 0.0;
  std::size_t ref = 0;
  bool have_ref = false;
  for (auto it = first; it != last; ++it) {
    const double k = kernel((*it - t) / gamma);
    total += k;
    if (k > 0.0) {
      ref = static_cast<std::size_t>(it - times.begin());
      have_ref = true;
    }
  }
  if (!have_ref || total == 0.0) {
    out.empty_window = true;
    return out;
  }
  // Average the offsets from a reference observation so that equal
  // observations reproduce their common value exactly.
  const auto ref_value = y.value(ref);
  for (auto it = first; it != last; ++it) {
    const double k = kernel((*it - t) / gamma);
    if (k == 0.0) continue;
    const double w = k / total;
    const auto v = y.value(static_cast<std::size_t>(it - times.begin()));
    for (std::size_t c = 0; c < y.s(); ++c) out.value[c] += w * (v[c] - ref_value[c]);
  }
  for (std::size_t c = 0; c < y.s(); ++c) {
    out.value[c] += ref_value[c];
    if (clip) out.value[c] = std::clamp(out.value[c], 0.0, 1.0);
  }
  return out;
}

}  // namespace

PointEstimate smooth_at(const RawSeries& y, double t, const SmootherConfig& cfg) {
  cfg.validate();
  return windowed_average(y, t, cfg.gamma, t - cfg.gamma, t, kernel_le, cfg.clip);
}

PointEstimate smooth_at_symmetric(const RawSeries& y, double t, double gamma) {
  require(gamma > 0.0, ErrorCode::InvalidArgument, "smooth_at_symmetric: gamma must be positive");
  return windowed_average(y, t, gamma, t - gamma, t + gamma, kernel_epanechnikov, false);
}

GridEstimate estimate_grid_series(const RawSeries& y, std::size_t d, const SmootherConfig& cfg) {
  require(d >= 1, ErrorCode::InvalidArgument, "estimate_grid_series: d must be >= 1");
  require(y.m() > d, ErrorCode::PreconditionViolation,
          "estimate_grid_series: series '" + y.id() + "' has m = " + std::to_string(y.m()) +
              " <= d = " + std::to_string(d));
  // GridSeries coordinates live in [0, 1], so the grid estimate always clips.
  SmootherConfig clipped = cfg;
  clipped.clip = true;
  std::vector<double> values;
  values.reserve(y.s() * d);
  std::vector<std::size_t> empty;
  for (std::size_t j = 0; j < d; ++j) {
    auto est = smooth_at(y, GridSeries::slot_time(j, d), clipped);
    if (est.empty_window) empty.push_back(j);
    values.insert(values.end(), est.value.begin(), est.value.end());
  }
  return {GridSeries(y.id(), y.s(), d, std::move(values)), std::move(empty)};
}

double gamma_schedule(std::size_t m) {
  require(m >= 2, ErrorCode::InvalidArgument, "gamma_schedule: m must be >= 2");
  const double md = static_cast<double>(m);
  return std::max(std::cbrt(std::log(md) / md), 2.0 / md);
}

double gamma_power_schedule(std::size_t m, double alpha) {
  require(m >= 2, ErrorCode::InvalidArgument, "gamma_power_schedule: m must be >= 2");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument,
          "gamma_power_schedule: alpha must lie in (0, 1)");
  const double md = static_cast<double>(m);
  return std::max(std::pow(md, -alpha), 2.0 / md);
}

}  // namespace tsclust::smoothing
