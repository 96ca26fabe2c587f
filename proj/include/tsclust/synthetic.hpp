#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsclust/series.hpp"
#include "tsclust/spatial_index.hpp"

namespace tsclust::synthetic {

enum class BumpShape {
  Triangular,  // (1/h)(1 - |z|)
  Quadratic,   // (3/4h)(1 - z^2)
  Uniform,     // 1/(2h); not Lipschitz, used for exactness checks only
};

std::string_view to_string(BumpShape shape);
BumpShape parse_bump_shape(std::string_view name);

// One-dimensional density supported on [center - half_width, center + half_width].
struct CoordinateBump {
  double center;
  double half_width;
  BumpShape shape;

  double density(double x) const;
  double peak() const;
  double lipschitz() const;
  double inverse_cdf(double u) const;
};

struct MixtureComponent {
  double weight;
  std::vector<CoordinateBump> bumps;  // one per coordinate

  double density(std::span<const double> x) const;
  double peak() const;
  double lipschitz() const;
  // Support box S_i and the inner core (half the half-width around the center).
  bool in_support(std::span<const double> x) const;
  bool in_inner_core(std::span<const double> x) const;
  double inner_core_min_density() const;
};

// Product-form mixture on [0, 1]^dim with pairwise disjoint support boxes.
class MixtureSpec {
 public:
  MixtureSpec(std::size_t dim, std::vector<MixtureComponent> components);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return components_.size(); }
  const std::vector<MixtureComponent>& components() const { return components_; }
  const MixtureComponent& component(std::size_t i) const { return components_.at(i); }

  // Clustering level: half the smallest weighted density on any inner core.
  double lambda_star() const { return lambda_star_; }
  // sum_i pi_i l_{p_i}
  double lipschitz() const { return lipschitz_; }
  // max_x p(x)
  double peak() const { return peak_; }
  // Smallest Euclidean distance between two support boxes (+inf for C = 1).
  double margin() const { return margin_; }

 private:
  std::size_t dim_;
  std::vector<MixtureComponent> components_;
  double lambda_star_ = 0.0;
  double lipschitz_ = 0.0;
  double peak_ = 0.0;
  double margin_ = 0.0;
};

double true_density(const MixtureSpec& spec, std::span<const double> x);

struct FlatSample {
  PointSet points;
  std::vector<int> labels;
};

FlatSample sample_flat(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);

// f(t) = offset + slope t + amplitude sin(2 pi (frequency t + phase))
//        + jump_size 1{t >= jump_at}
struct ComponentTemplate {
  double offset = 0.5;
  double slope = 0.0;
  double amplitude = 0.0;
  double frequency = 1.0;
  double phase = 0.0;
  double jump_at = 2.0;  // > 1 means no jump
  double jump_size = 0.0;

  double value(double t) const;
  double lipschitz() const;
  bool has_jump() const { return jump_size != 0.0 && jump_at > 0.0 && jump_at <= 1.0; }
};

struct FunctionTemplate {
  double weight = 1.0;
  std::vector<ComponentTemplate> components;  // size s
};

// Per-cluster templates with bounded uniform noise. Each series draws its own
// offset shift in [-offset_jitter, offset_jitter] and scales the slope,
// amplitude and jump by a factor in [1 - scale_jitter, 1 + scale_jitter].
class FunctionFamilySpec {
 public:
  FunctionFamilySpec(std::size_t s, std::vector<FunctionTemplate> templates, double noise_bound,
                     double offset_jitter = 0.0, double scale_jitter = 0.0);

  std::size_t s() const { return s_; }
  const std::vector<FunctionTemplate>& templates() const { return templates_; }
  double noise_bound() const { return noise_bound_; }
  double offset_jitter() const { return offset_jitter_; }
  double scale_jitter() const { return scale_jitter_; }
  // Largest Lipschitz constant any jittered template can have, per component.
  double lipschitz() const;
  bool has_jumps() const;
  // Throws unless every jump lies strictly between points of the grid 1/d, ..., 1.
  void check_grid(std::size_t d) const;

 private:
  std::size_t s_;
  std::vector<FunctionTemplate> templates_;
  double noise_bound_;
  double offset_jitter_;
  double scale_jitter_;
};

struct SeriesInstance {
  std::vector<ComponentTemplate> components;

  std::vector<double> value(double t) const;
};

struct RawSample {
  std::vector<RawSeries> series;
  std::vector<int> labels;
  std::vector<GridSeries> truth;      // noiseless values at t = 1/d, ..., 1
  std::vector<SeriesInstance> paths;  // the jittered functions themselves
};

RawSample sample_raw_series(const FunctionFamilySpec& spec, std::size_t n, std::size_t m,
                            std::size_t d, std::uint64_t seed);

std::string series_id(std::size_t i);

}  // namespace tsclust::synthetic
