#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tsclust/spatial_index.hpp"
#include "tsclust/synthetic.hpp"

namespace tsclust::density {

// n * delta^sd * v_sd. Every density value and every lambda(k) conversion
// divides by this one number, so core-point and level-set tests agree exactly.
double normalizer(std::size_t n, double delta, std::size_t sd);

// Spherical-kernel density estimate over closed delta-balls.
class KdeModel {
 public:
  KdeModel(PointSet points, double delta);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.dim(); }
  double delta() const { return delta_; }
  const PointSet& points() const { return points_; }
  const KdTree& index() const { return index_; }
  double normalizer() const { return normalizer_; }

  // |{i : |x - x_i| <= delta}|
  std::size_t count(std::span<const double> x) const;
  std::size_t count_bruteforce(std::span<const double> x) const;
  double eval(std::span<const double> x) const;
  double eval_bruteforce(std::span<const double> x) const;

  // Neighbor counts and density values at the sample points themselves.
  std::span<const std::size_t> sample_counts() const { return sample_counts_; }
  double sample_density(std::size_t i) const;
  double max_sample_density() const;

  // Ball-union level set: some sample with density >= lambda lies within delta of x.
  bool level_set_member(double lambda, std::span<const double> x) const;
  // Superlevel set {p_hat >= lambda} evaluated pointwise.
  bool superlevel_member(double lambda, std::span<const double> x) const;

 private:
  void check_query(std::span<const double> x) const;

  PointSet points_;
  double delta_;
  double normalizer_;
  KdTree index_;
  std::vector<std::size_t> sample_counts_;
};

// z (ln n / n)^{1/(2+sd)}
double delta_schedule(std::size_t n, std::size_t sd, double z = 1.0);

// lambda(k) = k / (n delta^sd v_sd) and its inverse.
double lambda_of_k(double k, std::size_t n, double delta, std::size_t sd);
double k_of_lambda(double lambda, std::size_t n, double delta, std::size_t sd);
// Smallest integer k whose core test count >= k matches p_hat >= lambda.
std::size_t min_count_for_lambda(double lambda, std::size_t n, double delta, std::size_t sd);

struct McEstimate {
  double value;
  double std_error;
};

// P(B(x, delta)) / (delta^sd v_sd) by sampling the mixture.
McEstimate mollified_density(const synthetic::MixtureSpec& spec, double delta,
                             std::span<const double> x, std::size_t mc_budget,
                             std::uint64_t seed);

using DensityFn = std::function<double(std::span<const double>)>;

double sup_norm_error(const DensityFn& estimate, const DensityFn& truth,
                      const PointSet& eval_points);

// Cell-centre lattice (i + 1/2)/resolution over [0, 1]^sd.
PointSet unit_lattice(std::size_t sd, std::size_t resolution);
// Lattice for sd <= 2, otherwise `mc_points` uniform points in [0, 1]^sd.
PointSet evaluation_set(std::size_t sd, std::size_t resolution, std::size_t mc_points,
                        std::uint64_t seed);

}  // namespace tsclust::density
