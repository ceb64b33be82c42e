#pragma once

// l1-penalized empirical least squares
//
//   F(theta) = ||y - Phi theta||^2 + lambda ||theta||_1,
//
// with the empirical norm ||u||^2 = (1/n) sum u_i^2. Optimality is certified
// by the subgradient condition on 2 <phi_j, y - Phi theta>: equal to
// lambda sign(theta_j) on the support, at most lambda in absolute value off it.

#include <optional>
#include <vector>

#include "dyadic_lasso/dictionaries.hpp"
#include "dyadic_lasso/errors.hpp"

namespace dyadic_lasso {

struct LassoFit {
  Coefficients theta;
  double lambda = 0.0;
  double objective = 0.0;
  double kkt_violation = 0.0;
  int iterations = 0;
  SampleVector fitted;

  double l1_norm() const { return theta.lpNorm<1>(); }
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 100000;
  /// Initial iterate; zero-padded when shorter than the dictionary.
  std::optional<Coefficients> warm_start;
  /// When set, receives F after every coordinate sweep.
  std::vector<double>* objective_trace = nullptr;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(LassoFit best, const std::string& what)
      : Error(what), best_(std::move(best)) {}
  const LassoFit& best() const { return best_; }
  double kkt_violation() const { return best_.kkt_violation; }

 private:
  LassoFit best_;
};

/// Cyclic coordinate descent with active-set sweeps. Columns must be nonzero
/// with empirical norm at most 1; normalized dictionaries always qualify.
LassoFit lasso_cd(const Dictionary& dictionary, const SampleVector& y, double lambda,
                  const SolverOptions& options = {});

/// Largest signed-subgradient violation of fit.theta; 0 at an exact optimum.
double kkt_residual(const Dictionary& dictionary, const SampleVector& y, const LassoFit& fit);

/// sign(y_j) max(|y_j| - lambda / 2, 0): the minimizer in an orthonormal basis.
Coefficients soft_threshold_fit(const Coefficients& y_coeffs, double lambda);

struct KFunctional {
  double value = 0.0;
  Coefficients theta;
};

/// K(f, delta) = inf_theta ||f - theta|| + delta ||theta||_1 for coefficients
/// in an orthonormal basis. The minimizer is a soft threshold of f at level
/// tau = delta * ||f - theta||; tau is located by bisection.
KFunctional k_functional_orthonormal(const Coefficients& f_coeffs, double delta,
                                     double tol = 1e-12);

}  // namespace dyadic_lasso
