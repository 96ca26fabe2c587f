// Reference implementations used only by tests. They share no code with the
// library beyond the PointSet container.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "tsclust/spatial_index.hpp"

namespace oracle {

// I_x(a, b) for integer a, b >= 1 as a binomial tail.
inline double binomial_beta(double x, int a, int b) {
  const int n = a + b - 1;
  double sum = 0.0;
  for (int j = a; j <= n; ++j) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    sum += std::exp(log_c) * std::pow(x, j) * std::pow(1.0 - x, n - j);
  }
  return sum;
}

inline double unit_ball_volume(int d) {
  // v_d = 2 pi / d * v_{d-2}
  if (d == 0) return 1.0;
  if (d == 1) return 2.0;
  return 2.0 * std::numbers::pi / d * unit_ball_volume(d - 2);
}

// Volume of B(0, r) intersect B(dist e_1, r): two caps, each
// v_{d-1} r^d int_0^{theta0} sin^d(theta) d theta with cos(theta0) = dist / 2r.
inline double lens_volume(double dist, double r, int d) {
  if (dist >= 2.0 * r) return 0.0;
  const double theta0 = std::acos(dist / (2.0 * r));
  const int steps = 4000;
  const double h = theta0 / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::sin(i * h), d);
  }
  const double integral = s * h / 3.0;
  return 2.0 * unit_ball_volume(d - 1) * std::pow(r, d) * integral;
}

inline double sym_diff_quadrature(double dist, double r, int d) {
  return 2.0 * (unit_ball_volume(d) * std::pow(r, d) - lens_volume(dist, r, d));
}

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Core points by direct counting, components by breadth-first search over
// core pairs within link. Labels follow the smallest member index; -1 is noise.
inline std::vector<int> dbscan(const tsclust::PointSet& pts, std::size_t k, double delta, double link) {
  const std::size_t n = pts.size();
  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += dist2(pts.point(i), pts.point(j)) <= delta * delta;
    core[i] = c >= k;
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!core[s] || label[s] != -1) continue;
    std::vector<std::size_t> queue{s};
    label[s] = next;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t i = queue[q];
      for (std::size_t j = 0; j < n; ++j) {
        if (core[j] && label[j] == -1 && dist2(pts.point(i), pts.point(j)) <= link * link) {
          label[j] = next;
          queue.push_back(j);
        }
      }
    }
    ++next;
  }
  return label;
}

// Relabels clusters by first appearance so equal partitions compare equal.
inline std::vector<int> canonical(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  for (int l : labels) {
    if (l < 0) {
      out.push_back(-1);
      continue;
    }
    auto it = remap.try_emplace(l, static_cast<int>(remap.size())).first;
    out.push_back(it->second);
  }
  return out;
}

inline tsclust::PointSet random_points(std::mt19937_64& gen, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> data(n * dim);
  for (auto& v : data) v = u(gen);
  return tsclust::PointSet(dim, std::move(data));
}

// Points around a few random centres so clusters, noise and ties all occur.
inline tsclust::PointSet blob_points(std::mt19937_64& gen, std::size_t n, std::size_t dim,
                                     std::size_t blobs, double spread) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> centres(blobs * dim);
  for (auto& c : centres) c = u(gen);
  std::vector<double> data(n * dim);
  std::uniform_int_distribution<std::size_t> pick(0, blobs - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = pick(gen);
    for (std::size_t k = 0; k < dim; ++k) {
      data[i * dim + k] = std::clamp(centres[b * dim + k] + spread * (u(gen) - 0.5), 0.0, 1.0);
    }
  }
  return tsclust::PointSet(dim, std::move(data));
}

}  // namespace oracle
