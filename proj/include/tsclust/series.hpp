#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tsclust {

// One noisy multivariate time sample: m observations of an s-dimensional path.
// Values are stored observation-major (m rows of width s) and may leave [0, 1].
class RawSeries {
 public:
  RawSeries(std::string id, std::size_t s, std::vector<double> times, std::vector<double> values);

  // Observation times j/m, j = 1..m.
  static RawSeries uniform(std::string id, std::size_t s, std::vector<double> values);

  const std::string& id() const { return id_; }
  std::size_t s() const { return s_; }
  std::size_t m() const { return times_.size(); }
  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> value(std::size_t j) const {
    return std::span<const double>(values_).subspan(j * s_, s_);
  }

 private:
  std::string id_;
  std::size_t s_;
  std::vector<double> times_;
  std::vector<double> values_;
};

// A series evaluated at t = 1/d, ..., 1 with every coordinate in [0, 1].
// Storage is time-major: block j holds the s components at t = (j+1)/d.
class GridSeries {
 public:
  GridSeries(std::string id, std::size_t s, std::size_t d, std::vector<double> values);

  const std::string& id() const { return id_; }
  std::size_t s() const { return s_; }
  std::size_t d() const { return d_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> at_slot(std::size_t j) const {
    return std::span<const double>(values_).subspan(j * s_, s_);
  }
  static double slot_time(std::size_t j, std::size_t d) {
    return static_cast<double>(j + 1) / static_cast<double>(d);
  }

  bool operator==(const GridSeries&) const = default;

 private:
  std::string id_;
  std::size_t s_;
  std::size_t d_;
  std::vector<double> values_;
};

// A flattened series: a point of [0, 1]^{sd}.
class FlatPoint {
 public:
  FlatPoint(std::vector<double> coords, std::string source_id);

  std::span<const double> coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  const std::string& source_id() const { return source_id_; }

 private:
  std::vector<double> coords_;
  std::string source_id_;
};

FlatPoint flatten(const GridSeries& g);
GridSeries unflatten(const FlatPoint& p, std::size_t s, std::size_t d);

// A path t -> R^s that can be evaluated anywhere on (0, 1].
using PathFn = std::function<std::vector<double>(double)>;

// max over t in {1/d, ..., 1} of |f(t) - g(t)|_2
double grid_sup_distance(const PathFn& f, const PathFn& g, std::size_t d);

// max |a_i - b_i|
double sup_distance(std::span<const double> a, std::span<const double> b);

}  // namespace tsclust
