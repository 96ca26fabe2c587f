#include "tsclust/series.hpp"

#include <algorithm>
#include <cmath>

#include "tsclust/error.hpp"

namespace tsclust {

RawSeries::RawSeries(std::string id, std::size_t s, std::vector<double> times,
                     std::vector<double> values)
    : id_(std::move(id)), s_(s), times_(std::move(times)), values_(std::move(values)) {
  require(s_ >= 1, ErrorCode::InvalidArgument, "RawSeries '" + id_ + "': s must be >= 1");
  require(!times_.empty(), ErrorCode::InvalidArgument, "RawSeries '" + id_ + "': no observations");
  require(values_.size() == times_.size() * s_, ErrorCode::InvalidArgument,
          "RawSeries '" + id_ + "': values must hold m rows of width s");
  for (std::size_t j = 0; j < times_.size(); ++j) {
    const double t = times_[j];
    if (!(t > 0.0 && t <= 1.0)) {
      fail(ErrorCode::InvalidArgument,
           "RawSeries '" + id_ + "': time " + std::to_string(t) + " outside (0, 1]");
    }
    if (j > 0 && !(times_[j - 1] < t)) {
      fail(ErrorCode::InvalidArgument, "RawSeries '" + id_ + "': times must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "RawSeries '" + id_ + "': non-finite value");
  }
}

RawSeries RawSeries::uniform(std::string id, std::size_t s, std::vector<double> values) {
  require(s >= 1 && values.size() % s == 0 && !values.empty(), ErrorCode::InvalidArgument,
          "RawSeries::uniform: values must hold m rows of width s");
  const std::size_t m = values.size() / s;
  std::vector<double> times(m);
  for (std::size_t j = 0; j < m; ++j) {
    times[j] = static_cast<double>(j + 1) / static_cast<double>(m);
  }
  return RawSeries(std::move(id), s, std::move(times), std::move(values));
}

GridSeries::GridSeries(std::string id, std::size_t s, std::size_t d, std::vector<double> values)
    : id_(std::move(id)), s_(s), d_(d), values_(std::move(values)) {
  require(s_ >= 1 && d_ >= 1, ErrorCode::InvalidArgument,
          "GridSeries '" + id_ + "': s and d must be >= 1");
  require(values_.size() == s_ * d_, ErrorCode::InvalidArgument,
          "GridSeries '" + id_ + "': expected s*d values");
  for (double v : values_) {
    require(v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument,
            "GridSeries '" + id_ + "': coordinate outside [0, 1]");
  }
}

FlatPoint::FlatPoint(std::vector<double> coords, std::string source_id)
    : coords_(std::move(coords)), source_id_(std::move(source_id)) {
  require(!coords_.empty(), ErrorCode::InvalidArgument, "FlatPoint: empty coordinates");
  for (double v : coords_) {
    require(v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument,
            "FlatPoint '" + source_id_ + "': coordinate outside [0, 1]");
  }
}

FlatPoint flatten(const GridSeries& g) {
  return FlatPoint(std::vector<double>(g.values().begin(), g.values().end()), g.id());
}

GridSeries unflatten(const FlatPoint& p, std::size_t s, std::size_t d) {
  require(p.dim() == s * d, ErrorCode::InvalidArgument, "unflatten: length is not s*d");
  return GridSeries(p.source_id(), s, d, std::vector<double>(p.coords().begin(), p.coords().end()));
}

double grid_sup_distance(const PathFn& f, const PathFn& g, std::size_t d) {
  require(d >= 1, ErrorCode::InvalidArgument, "grid_sup_distance: d must be >= 1");
  double best = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = GridSeries::slot_time(j, d);
    const auto a = f(t);
    const auto b = g(t);
    require(a.size() == b.size(), ErrorCode::InvalidArgument,
            "grid_sup_distance: paths disagree on dimension");
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
    best = std::max(best, std::sqrt(sq));
  }
  return best;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "sup_distance: length mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::fabs(a[i] - b[i]));
  return best;
}

}  // namespace tsclust
