#pragma once

// Empirical Hilbert geometry over a fixed design.
//
// A function h is represented by its values (h(x_1), ..., h(x_n)) on the
// design. The inner product is <u, v> = (1/n) sum_i u_i v_i and the
// least-squares criterion is stored as gamma(h) = ||y - h||^2. The usual
// contrast -2<y, h> + ||h||^2 differs from it by the constant ||y||^2, so every
// argmin and every difference of criteria is unchanged.

#include <Eigen/Dense>

#include "dyadic_lasso/random.hpp"

namespace dyadic_lasso {

using SampleVector = Eigen::VectorXd;
using Coefficients = Eigen::VectorXd;

/// Fixed design points x_1..x_n in R^d, stored one point per row.
class Design {
 public:
  explicit Design(Eigen::MatrixXd points);

  /// n equispaced points (i - 0.5) / n in (0, 1).
  static Design grid(int n);
  /// n points drawn uniformly in [0, 1]^d.
  static Design uniform(int n, int d, RandomStream& rng);
  /// Identity design of the Gaussian sequence model: n = p abstract points.
  static Design sequence(int p);

  int n() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }

 private:
  Eigen::MatrixXd points_;
};

/// Noise level of the general framework; sigma / sqrt(n) in regression mode.
class NoiseLevel {
 public:
  explicit NoiseLevel(double eps);
  static NoiseLevel from_regression(double sigma, int n);
  double eps() const { return eps_; }

 private:
  double eps_;
};

double empirical_inner(const SampleVector& u, const SampleVector& v, const Design& design);
double empirical_norm(const SampleVector& u, const Design& design);
double gamma_emp(const SampleVector& y, const SampleVector& h, const Design& design);

// Design-free variants used by the solver hot loops; n is u.size().
double empirical_inner(const SampleVector& u, const SampleVector& v);
double empirical_sq_norm(const SampleVector& u);

/// y_i = f(x_i) + sigma * xi_i with xi_i standard Gaussian draws from rng.
SampleVector sample_regression(const SampleVector& f_on_design, double sigma,
                               const Design& design, RandomStream& rng);

/// First p noisy coefficients y_j = theta*_j + eps * xi_j (theta*_j = 0 past its
/// length). eps = 0 is accepted and returns an exact copy.
Coefficients sample_sequence_model(const Coefficients& theta_star, double eps, int p,
                                   RandomStream& rng);

}  // namespace dyadic_lasso
