#pragma once

#include <cmath>
#include <numbers>

namespace tsclust::geometry {

// Closed Euclidean ball in `dim` dimensions.
struct BallSpec {
  int dim;
  double radius;

  BallSpec(int dim, double radius);
  double volume() const;
};

// Volume of the unit ball, pi^{d/2} / Gamma(d/2 + 1).
double ball_volume(int dim);
double log_ball_volume(int dim);

// radius^dim * v_dim, computed in log space for dim > 20.
double ball_measure(int dim, double radius);
double log_ball_measure(int dim, double radius);

// Regularized incomplete beta function I_x(a, b).
double reg_inc_beta(double x, double a, double b);

// Volume of B(p, delta) symmetric-difference B(q, delta) for |p - q| = dist.
double ball_sym_diff_volume(double dist, double delta, int dim);

struct SymDiffBound {
  double value;
  // eps > delta: the linear bound no longer describes the overlap regime.
  bool outside_regime;
};

// Linear bound 2^dim delta^{dim-1} eps on the symmetric difference.
SymDiffBound ball_sym_diff_bound(double eps, double delta, int dim);

namespace detail {
// Lentz continued fraction for I_x(a, b); returns false if it did not converge.
bool inc_beta_continued_fraction(double x, double a, double b, double& value);
// Power series in x, accurate for x <= 1/2.
double inc_beta_series(double x, double a, double b);
// The symmetric difference evaluated through the incomplete beta route for
// every dimension, including dim 1.
double sym_diff_by_beta(double dist, double delta, int dim);
}  // namespace detail

}  // namespace tsclust::geometry
