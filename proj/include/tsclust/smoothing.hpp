#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsclust/series.hpp"

namespace tsclust::smoothing {

struct SmootherConfig {
  double gamma;
  bool clip = true;

  void validate() const;
};

// Left-side Epanechnikov kernel: 2 - 2u^2 on [-1, 0], zero elsewhere.
double kernel_le(double u);
// Symmetric Epanechnikov kernel 0.75 (1 - u^2) on [-1, 1]. Reference only.
double kernel_epanechnikov(double u);

struct Weights {
  std::vector<double> w;
  // No sample in [t - gamma, t] carries kernel mass; w is all zero (0/0 := 0).
  bool empty_window = false;
};

// Nadaraya-Watson weights at t. The kernel is evaluated at (t_j - t)/gamma so
// only samples in the closed window [t - gamma, t] receive mass.
Weights nw_weights(double t, std::span<const double> times, double gamma);

struct PointEstimate {
  std::vector<double> value;
  bool empty_window = false;
};

// Weighted average of the observations in the left window at t.
PointEstimate smooth_at(const RawSeries& y, double t, const SmootherConfig& cfg);

// Same estimator with the symmetric kernel over [t - gamma, t + gamma]. Not
// used by the pipeline; kept to compare jump behavior.
PointEstimate smooth_at_symmetric(const RawSeries& y, double t, double gamma);

struct GridEstimate {
  GridSeries grid;
  // Slots (0-based) whose window was empty.
  std::vector<std::size_t> empty_slots;
};

// Requires y.m() > d.
GridEstimate estimate_grid_series(const RawSeries& y, std::size_t d, const SmootherConfig& cfg);

// (ln m / m)^{1/3}, floored at 2/m.
double gamma_schedule(std::size_t m);
// m^{-alpha} for alpha in (0, 1), floored at 2/m.
double gamma_power_schedule(std::size_t m, double alpha);

}  // namespace tsclust::smoothing
