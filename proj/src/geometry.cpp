#include "tsclust/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tsclust/error.hpp"

namespace tsclust::geometry {

namespace {

constexpr int kLogSpaceDim = 20;

void check_dim(int dim, const char* who) {
  require(dim >= 1, ErrorCode::InvalidArgument,
          std::string(who) + ": dimension must be >= 1, got " + std::to_string(dim));
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// log of x^a (1-x)^b / B(a, b)
double log_front_factor(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
}

}  // namespace

BallSpec::BallSpec(int d, double r) : dim(d), radius(r) {
  check_dim(dim, "BallSpec");
  require(radius > 0.0 && std::isfinite(radius), ErrorCode::InvalidArgument,
          "BallSpec: radius must be positive");
}

double BallSpec::volume() const { return ball_measure(dim, radius); }

double log_ball_volume(int dim) {
  check_dim(dim, "log_ball_volume");
  const double half = 0.5 * dim;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

double ball_volume(int dim) {
  check_dim(dim, "ball_volume");
  if (dim == 1) return 2.0;
  if (dim == 2) return std::numbers::pi;
  if (dim <= kLogSpaceDim) {
    const double half = 0.5 * dim;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
  }
  return std::exp(log_ball_volume(dim));
}

double log_ball_measure(int dim, double radius) {
  require(radius > 0.0, ErrorCode::InvalidArgument, "log_ball_measure: radius must be positive");
  return dim * std::log(radius) + log_ball_volume(dim);
}

double ball_measure(int dim, double radius) {
  check_dim(dim, "ball_measure");
  require(radius > 0.0, ErrorCode::InvalidArgument, "ball_measure: radius must be positive");
  if (dim <= kLogSpaceDim) return std::pow(radius, dim) * ball_volume(dim);
  return std::exp(log_ball_measure(dim, radius));
}

namespace detail {

bool inc_beta_continued_fraction(double x, double a, double b, double& value) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) {
      value = std::exp(log_front_factor(x, a, b)) * h / a;
      return true;
    }
  }
  return false;
}

double inc_beta_series(double x, double a, double b) {
  // B_x(a, b) = x^a sum_n (1-b)_n x^n / (n! (a + n))
  double term = 1.0;
  double sum = 1.0 / a;
  for (int n = 0; n < 100000; ++n) {
    term *= x * (n + 1.0 - b) / (n + 1.0);
    const double contrib = term / (a + n + 1.0);
    sum += contrib;
    if (std::fabs(contrib) <= 1e-17 * std::fabs(sum)) break;
  }
  return std::exp(a * std::log(x) - log_beta(a, b)) * sum;
}

double sym_diff_by_beta(double dist, double delta, int dim) {
  const double full = 2.0 * ball_measure(dim, delta);
  if (dist >= 2.0 * delta) return full;
  if (dist == 0.0) return 0.0;
  const double ratio = dist / (2.0 * delta);
  // 1 - I_{1-r^2}((d+1)/2, 1/2) == I_{r^2}(1/2, (d+1)/2)
  return full * reg_inc_beta(ratio * ratio, 0.5, 0.5 * (dim + 1));
}

}  // namespace detail

double reg_inc_beta(double x, double a, double b) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          "reg_inc_beta: x must lie in [0, 1]");
  require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
          ErrorCode::InvalidArgument, "reg_inc_beta: a and b must be positive");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const bool direct = x < (a + 1.0) / (a + b + 2.0);
  const double xx = direct ? x : 1.0 - x;
  const double aa = direct ? a : b;
  const double bb = direct ? b : a;

  double value = 0.0;
  if (!detail::inc_beta_continued_fraction(xx, aa, bb, value)) {
    // Fall back to the series on whichever side has the smaller argument.
    value = xx <= 0.5 ? detail::inc_beta_series(xx, aa, bb)
                      : 1.0 - detail::inc_beta_series(1.0 - xx, bb, aa);
  }
  value = std::clamp(value, 0.0, 1.0);
  return direct ? value : 1.0 - value;
}

double ball_sym_diff_volume(double dist, double delta, int dim) {
  check_dim(dim, "ball_sym_diff_volume");
  require(dist >= 0.0 && !std::isnan(dist), ErrorCode::InvalidArgument,
          "ball_sym_diff_volume: dist must be nonnegative");
  require(delta > 0.0 && std::isfinite(delta), ErrorCode::InvalidArgument,
          "ball_sym_diff_volume: delta must be positive");
  if (dist == 0.0) return 0.0;
  if (dim == 1) return 2.0 * std::min(dist, 2.0 * delta);
  return detail::sym_diff_by_beta(dist, delta, dim);
}

SymDiffBound ball_sym_diff_bound(double eps, double delta, int dim) {
  check_dim(dim, "ball_sym_diff_bound");
  require(eps >= 0.0 && !std::isnan(eps), ErrorCode::InvalidArgument,
          "ball_sym_diff_bound: eps must be nonnegative");
  require(delta > 0.0 && std::isfinite(delta), ErrorCode::InvalidArgument,
          "ball_sym_diff_bound: delta must be positive");
  double value;
  if (dim <= kLogSpaceDim) {
    value = std::ldexp(std::pow(delta, dim - 1) * eps, dim);
  } else {
    value = eps == 0.0 ? 0.0
                       : std::exp(dim * std::numbers::ln2 + (dim - 1) * std::log(delta) +
                                  std::log(eps));
  }
  return {value, eps > delta};
}

}  // namespace tsclust::geometry
