#include "dyadic_lasso/solver.hpp"

#include <algorithm>
#include <cmath>

namespace dyadic_lasso {

namespace {

double soft(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double kkt_from_correlations(const Coefficients& theta, const Eigen::VectorXd& corr2,
                             double lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double g = corr2[j];
    double v;
    if (theta[j] > 0.0) {
      v = std::abs(g - lambda);
    } else if (theta[j] < 0.0) {
      v = std::abs(g + lambda);
    } else {
      v = std::max(0.0, std::abs(g) - lambda);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

struct CdState {
  const Eigen::MatrixXd& x;
  const Eigen::VectorXd& col_sq;  // ||phi_j||^2_emp
  double inv_n;
  double lambda;
  Coefficients theta;
  SampleVector residual;

  double objective() const {
    return residual.squaredNorm() * inv_n + lambda * theta.lpNorm<1>();
  }

  // One coordinate update; returns |change|.
  double update(Eigen::Index j) {
    const double old = theta[j];
    const double z = x.col(j).dot(residual) * inv_n + col_sq[j] * old;
    const double next = soft(z, 0.5 * lambda) / col_sq[j];
    const double delta = next - old;
    if (delta != 0.0) {
      residual.noalias() -= delta * x.col(j);
      theta[j] = next;
    }
    return std::abs(delta);
  }

  Eigen::VectorXd correlations2() const {
    return 2.0 * inv_n * (x.transpose() * residual);
  }
};

}  // namespace

Coefficients soft_threshold_fit(const Coefficients& y_coeffs, double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("soft_threshold_fit: lambda must be >= 0");
  Coefficients out(y_coeffs.size());
  for (Eigen::Index j = 0; j < y_coeffs.size(); ++j) out[j] = soft(y_coeffs[j], 0.5 * lambda);
  return out;
}

double kkt_residual(const Dictionary& dictionary, const SampleVector& y, const LassoFit& fit) {
  if (fit.theta.size() != dictionary.p() || y.size() != dictionary.n()) {
    throw DimensionError("kkt_residual: fit or data does not match the dictionary");
  }
  const SampleVector r = y - dictionary.columns() * fit.theta;
  const Eigen::VectorXd corr2 = 2.0 / dictionary.n() * (dictionary.columns().transpose() * r);
  return kkt_from_correlations(fit.theta, corr2, fit.lambda);
}

LassoFit lasso_cd(const Dictionary& dictionary, const SampleVector& y, double lambda,
                  const SolverOptions& options) {
  if (y.size() != dictionary.n()) {
    throw DimensionError("lasso_cd: y has length " + std::to_string(y.size()) +
                         ", design has n = " + std::to_string(dictionary.n()));
  }
  if (!(lambda >= 0.0)) throw ParameterError("lasso_cd: lambda must be >= 0");
  if (!(options.tol > 0.0)) throw ParameterError("lasso_cd: tol must be > 0");
  if (options.max_iter < 1) throw ParameterError("lasso_cd: max_iter must be >= 1");

  const Eigen::MatrixXd& x = dictionary.columns();
  const double inv_n = 1.0 / dictionary.n();
  const Eigen::VectorXd col_sq = x.colwise().squaredNorm().transpose() * inv_n;
  for (Eigen::Index j = 0; j < col_sq.size(); ++j) {
    if (!(col_sq[j] > 0.0)) {
      throw DegenerateDictionaryError(static_cast<std::size_t>(j),
                                      "lasso_cd: column " + std::to_string(j) + " is zero");
    }
    if (col_sq[j] > 1.0 + 1e-12) {
      throw ParameterError("lasso_cd: column " + std::to_string(j) +
                           " has empirical norm above 1; normalize the dictionary");
    }
  }

  CdState s{x, col_sq, inv_n, lambda, Coefficients::Zero(dictionary.p()), y};
  // Zero is optimal once lambda dominates every correlation; the relative slack
  // absorbs rounding differences between equivalent correlation formulas.
  if (s.correlations2().cwiseAbs().maxCoeff() <= lambda * (1.0 + 1e-12)) {
    LassoFit zero;
    zero.theta = s.theta;
    zero.lambda = lambda;
    zero.fitted = SampleVector::Zero(dictionary.n());
    zero.objective = s.objective();
    zero.kkt_violation = kkt_from_correlations(zero.theta, s.correlations2(), lambda);
    if (options.objective_trace) options.objective_trace->push_back(zero.objective);
    return zero;
  }
  if (options.warm_start) {
    const Coefficients& w = *options.warm_start;
    const Eigen::Index m = std::min<Eigen::Index>(w.size(), s.theta.size());
    s.theta.head(m) = w.head(m);
    s.residual = y - x * s.theta;
  }

  const int p = dictionary.p();
  // Inner active-set sweeps stop once no coordinate moves by more than this.
  const double move_tol = options.tol * 1e-2;
  int iterations = 0;
  double kkt = 0.0;

  auto record = [&] {
    if (options.objective_trace) options.objective_trace->push_back(s.objective());
  };

  while (true) {
    // Full sweep over every coordinate.
    for (int j = 0; j < p; ++j) s.update(j);
    ++iterations;
    record();

    // Resynchronize the residual to limit drift from incremental updates.
    s.residual = y - x * s.theta;
    kkt = kkt_from_correlations(s.theta, s.correlations2(), lambda);
    if (kkt <= options.tol) break;
    if (iterations >= options.max_iter) break;

    std::vector<int> active;
    for (int j = 0; j < p; ++j)
      if (s.theta[j] != 0.0) active.push_back(j);

    while (!active.empty() && iterations < options.max_iter) {
      double biggest = 0.0;
      for (int j : active) biggest = std::max(biggest, s.update(j));
      ++iterations;
      record();
      if (biggest <= move_tol) break;
    }
    if (iterations >= options.max_iter) {
      s.residual = y - x * s.theta;
      kkt = kkt_from_correlations(s.theta, s.correlations2(), lambda);
      break;
    }
  }

  LassoFit fit;
  fit.theta = std::move(s.theta);
  fit.lambda = lambda;
  fit.fitted = x * fit.theta;
  fit.objective = (y - fit.fitted).squaredNorm() * inv_n + lambda * fit.theta.lpNorm<1>();
  fit.iterations = iterations;
  fit.kkt_violation = kkt;
  if (kkt > options.tol) {
    throw NonConvergenceError(std::move(fit), "lasso_cd: no convergence after " +
                                                  std::to_string(iterations) +
                                                  " sweeps, kkt violation " + std::to_string(kkt));
  }
  return fit;
}

KFunctional k_functional_orthonormal(const Coefficients& f_coeffs, double delta, double tol) {
  if (!(delta >= 0.0)) throw ParameterError("k_functional_orthonormal: delta must be >= 0");
  const Eigen::ArrayXd mag = f_coeffs.array().abs();
  const double top = f_coeffs.size() ? mag.maxCoeff() : 0.0;

  auto value_at = [&](double tau) {
    const double resid = std::sqrt(mag.min(tau).square().sum());
    const double l1 = (mag - tau).max(0.0).sum();
    return resid + delta * l1;
  };

  if (delta == 0.0 || top == 0.0) {
    return {value_at(0.0), f_coeffs};
  }

  // psi(tau) = sum_j min(f_j^2 / tau^2, 1) is nonincreasing; the objective
  // along the soft-threshold path decreases while psi(tau) >= delta^-2.
  const double target = 1.0 / (delta * delta);
  auto decreasing = [&](double tau) {
    return (mag.square() / (tau * tau)).min(1.0).sum() >= target;
  };

  double tau;
  if (decreasing(top)) {
    tau = top;
  } else {
    double lo = 0.0;
    double hi = top;
    while (hi - lo > tol * std::max(1.0, top)) {
      const double mid = 0.5 * (lo + hi);
      if (mid > 0.0 && decreasing(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (mid == lo && mid == hi) break;
    }
    tau = lo;
  }

  KFunctional out;
  out.theta = soft_threshold_fit(f_coeffs, 2.0 * tau);
  out.value = value_at(tau);
  return out;
}

}  // namespace dyadic_lasso
