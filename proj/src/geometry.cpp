#include "dyadic_lasso/geometry.hpp"

#include <cmath>
#include <string>

#include "dyadic_lasso/errors.hpp"

namespace dyadic_lasso {

namespace {

void check_length(const SampleVector& u, int n, const char* what) {
  if (u.size() != n) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(u.size()) +
                         " does not match design size " + std::to_string(n));
  }
}

}  // namespace

Design::Design(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw ParameterError("design needs n >= 1 points of dimension d >= 1");
  }
}

Design Design::grid(int n) {
  if (n < 1) throw ParameterError("design size must be >= 1");
  Eigen::MatrixXd pts(n, 1);
  for (int i = 0; i < n; ++i) pts(i, 0) = (i + 0.5) / n;
  return Design(std::move(pts));
}

Design Design::uniform(int n, int d, RandomStream& rng) {
  if (n < 1 || d < 1) throw ParameterError("design needs n >= 1 and d >= 1");
  Eigen::MatrixXd pts(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) pts(i, k) = rng.uniform();
  return Design(std::move(pts));
}

Design Design::sequence(int p) {
  if (p < 1) throw ParameterError("sequence model needs p >= 1");
  Eigen::MatrixXd pts(p, 1);
  for (int i = 0; i < p; ++i) pts(i, 0) = i + 1;
  return Design(std::move(pts));
}

NoiseLevel::NoiseLevel(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("noise level eps must be > 0");
}

NoiseLevel NoiseLevel::from_regression(double sigma, int n) {
  if (n < 1) throw ParameterError("sample size must be >= 1");
  return NoiseLevel(sigma / std::sqrt(static_cast<double>(n)));
}

double empirical_inner(const SampleVector& u, const SampleVector& v) {
  if (u.size() != v.size() || u.size() == 0) {
    throw DimensionError("empirical_inner: vectors of length " + std::to_string(u.size()) +
                         " and " + std::to_string(v.size()));
  }
  return u.dot(v) / static_cast<double>(u.size());
}

double empirical_sq_norm(const SampleVector& u) {
  if (u.size() == 0) throw DimensionError("empirical norm of an empty vector");
  return u.squaredNorm() / static_cast<double>(u.size());
}

double empirical_inner(const SampleVector& u, const SampleVector& v, const Design& design) {
  check_length(u, design.n(), "empirical_inner");
  check_length(v, design.n(), "empirical_inner");
  return u.dot(v) / design.n();
}

double empirical_norm(const SampleVector& u, const Design& design) {
  check_length(u, design.n(), "empirical_norm");
  return std::sqrt(u.squaredNorm() / design.n());
}

double gamma_emp(const SampleVector& y, const SampleVector& h, const Design& design) {
  check_length(y, design.n(), "gamma_emp");
  check_length(h, design.n(), "gamma_emp");
  return (y - h).squaredNorm() / design.n();
}

SampleVector sample_regression(const SampleVector& f_on_design, double sigma,
                               const Design& design, RandomStream& rng) {
  check_length(f_on_design, design.n(), "sample_regression");
  if (!(sigma >= 0.0)) throw ParameterError("sample_regression: sigma must be >= 0");
  SampleVector y = f_on_design;
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
  return y;
}

Coefficients sample_sequence_model(const Coefficients& theta_star, double eps, int p,
                                   RandomStream& rng) {
  if (p < 1) throw ParameterError("sample_sequence_model: p must be >= 1");
  if (!(eps >= 0.0)) throw ParameterError("sample_sequence_model: eps must be >= 0");
  Coefficients y = Coefficients::Zero(p);
  const Eigen::Index shared = std::min<Eigen::Index>(p, theta_star.size());
  y.head(shared) = theta_star.head(shared);
  for (int j = 0; j < p; ++j) y[j] += eps * rng.normal();
  return y;
}

}  // namespace dyadic_lasso
