#include "tsclust/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsclust/error.hpp"
#include "tsclust/geometry.hpp"
#include "tsclust/random.hpp"

namespace tsclust::density {

double normalizer(std::size_t n, double delta, std::size_t sd) {
  require(n >= 1, ErrorCode::InvalidArgument, "normalizer: n must be >= 1");
  require(delta > 0.0, ErrorCode::InvalidArgument, "normalizer: delta must be positive");
  return static_cast<double>(n) * geometry::ball_measure(static_cast<int>(sd), delta);
}

KdeModel::KdeModel(PointSet points, double delta)
    : points_(std::move(points)),
      delta_(delta),
      normalizer_(0.0),
      index_(points_) {
  require(!points_.empty(), ErrorCode::InvalidArgument, "KdeModel: needs at least one point");
  require(delta_ > 0.0 && std::isfinite(delta_), ErrorCode::InvalidArgument,
          "KdeModel: delta must be positive");
  normalizer_ = density::normalizer(points_.size(), delta_, points_.dim());
  sample_counts_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sample_counts_[i] = index_.count_within(points_.point(i), delta_);
  }
}

void KdeModel::check_query(std::span<const double> x) const {
  require(x.size() == points_.dim(), ErrorCode::InvalidArgument,
          "KdeModel: query has dimension " + std::to_string(x.size()) + ", expected " +
              std::to_string(points_.dim()));
}

std::size_t KdeModel::count(std::span<const double> x) const {
  check_query(x);
  return index_.count_within(x, delta_);
}

std::size_t KdeModel::count_bruteforce(std::span<const double> x) const {
  check_query(x);
  std::size_t c = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (in_closed_ball(squared_distance(x, points_.point(i)), delta_)) ++c;
  }
  return c;
}

double KdeModel::eval(std::span<const double> x) const {
  return static_cast<double>(count(x)) / normalizer_;
}

double KdeModel::eval_bruteforce(std::span<const double> x) const {
  return static_cast<double>(count_bruteforce(x)) / normalizer_;
}

double KdeModel::sample_density(std::size_t i) const {
  return static_cast<double>(sample_counts_.at(i)) / normalizer_;
}

double KdeModel::max_sample_density() const {
  const auto it = std::max_element(sample_counts_.begin(), sample_counts_.end());
  return static_cast<double>(*it) / normalizer_;
}

bool KdeModel::level_set_member(double lambda, std::span<const double> x) const {
  check_query(x);
  bool found = false;
  index_.for_each_within(x, delta_, [&](std::size_t i) {
    if (static_cast<double>(sample_counts_[i]) / normalizer_ >= lambda) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

bool KdeModel::superlevel_member(double lambda, std::span<const double> x) const {
  return eval(x) >= lambda;
}

double delta_schedule(std::size_t n, std::size_t sd, double z) {
  require(n >= 2, ErrorCode::InvalidArgument, "delta_schedule: n must be >= 2");
  require(sd >= 1, ErrorCode::InvalidArgument, "delta_schedule: sd must be >= 1");
  require(z > 0.0, ErrorCode::InvalidArgument, "delta_schedule: z must be positive");
  const double nd = static_cast<double>(n);
  return z * std::pow(std::log(nd) / nd, 1.0 / (2.0 + static_cast<double>(sd)));
}

double lambda_of_k(double k, std::size_t n, double delta, std::size_t sd) {
  return k / normalizer(n, delta, sd);
}

double k_of_lambda(double lambda, std::size_t n, double delta, std::size_t sd) {
  return lambda * normalizer(n, delta, sd);
}

std::size_t min_count_for_lambda(double lambda, std::size_t n, double delta, std::size_t sd) {
  require(lambda >= 0.0, ErrorCode::InvalidArgument, "min_count_for_lambda: lambda must be >= 0");
  const double norm = normalizer(n, delta, sd);
  double guess = std::ceil(lambda * norm);
  if (guess < 0.0) guess = 0.0;
  auto k = static_cast<std::size_t>(guess);
  while (k > 0 && static_cast<double>(k - 1) / norm >= lambda) --k;
  while (static_cast<double>(k) / norm < lambda) ++k;
  return std::max<std::size_t>(k, 1);
}

McEstimate mollified_density(const synthetic::MixtureSpec& spec, double delta,
                             std::span<const double> x, std::size_t mc_budget,
                             std::uint64_t seed) {
  require(x.size() == spec.dim(), ErrorCode::InvalidArgument,
          "mollified_density: dimension mismatch");
  require(delta > 0.0, ErrorCode::InvalidArgument, "mollified_density: delta must be positive");
  require(mc_budget >= 1000, ErrorCode::InvalidArgument,
          "mollified_density: mc_budget must be >= 1000");
  Rng rng(seed);
  std::vector<double> weights;
  for (const auto& c : spec.components()) weights.push_back(c.weight);
  std::vector<double> draw(spec.dim());
  std::size_t hits = 0;
  for (std::size_t b = 0; b < mc_budget; ++b) {
    const auto& comp = spec.component(rng.categorical(weights));
    for (std::size_t j = 0; j < spec.dim(); ++j) draw[j] = comp.bumps[j].inverse_cdf(rng.uniform());
    if (in_closed_ball(squared_distance(draw, x), delta)) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(mc_budget);
  const double measure = geometry::ball_measure(static_cast<int>(spec.dim()), delta);
  const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(mc_budget));
  return {frac / measure, se / measure};
}

double sup_norm_error(const DensityFn& estimate, const DensityFn& truth,
                      const PointSet& eval_points) {
  require(!eval_points.empty(), ErrorCode::InvalidArgument,
          "sup_norm_error: evaluation set is empty");
  double best = 0.0;
  for (std::size_t i = 0; i < eval_points.size(); ++i) {
    const auto x = eval_points.point(i);
    best = std::max(best, std::fabs(estimate(x) - truth(x)));
  }
  return best;
}

PointSet unit_lattice(std::size_t sd, std::size_t resolution) {
  require(sd >= 1 && resolution >= 1, ErrorCode::InvalidArgument,
          "unit_lattice: sd and resolution must be >= 1");
  std::size_t total = 1;
  for (std::size_t j = 0; j < sd; ++j) {
    require(total <= 50'000'000 / resolution, ErrorCode::InvalidArgument,
            "unit_lattice: lattice too large");
    total *= resolution;
  }
  std::vector<double> data(total * sd);
  std::vector<std::size_t> digit(sd, 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < sd; ++j) {
      data[i * sd + j] = (static_cast<double>(digit[j]) + 0.5) / static_cast<double>(resolution);
    }
    for (std::size_t j = sd; j-- > 0;) {
      if (++digit[j] < resolution) break;
      digit[j] = 0;
    }
  }
  return PointSet(sd, std::move(data));
}

PointSet evaluation_set(std::size_t sd, std::size_t resolution, std::size_t mc_points,
                        std::uint64_t seed) {
  if (sd <= 2) return unit_lattice(sd, resolution);
  Rng rng(seed, 0x6576616cu);
  std::vector<double> data(mc_points * sd);
  for (double& v : data) v = rng.uniform();
  return PointSet(sd, std::move(data));
}

}  // namespace tsclust::density
