#pragma once

// Regularization schedules and the selected Lasso.
//
// The selected Lasso fits a Lasso on each dyadic truncation D_p, p in
// {1, 2, 4, ...}, with lambda_p = 4 eps (sqrt(ln p) + 1), and keeps the level
// minimizing
//
//   gamma(f_p) + lambda_p ||theta_p||_1 + pen(p),   pen(p) = 5 eps^2 ln p.
//
// Ties go to the smallest p.

#include <vector>

#include "dyadic_lasso/solver.hpp"

namespace dyadic_lasso {

double lambda_p(int p, double eps);
double pen_p(int p, double eps);
/// Smallest admissible lambda for the Heaviside ridge dictionary:
/// (28 sigma / sqrt(n)) (sqrt((d + 1) ln(n + 1)) + 4).
double lambda_nn(int n, int d, double sigma);

struct LevelRecord {
  int p = 0;
  double lambda = 0.0;
  double pen = 0.0;
  LassoFit fit;
  double gamma = 0.0;
  double criterion = 0.0;
};

struct SelectionTrace {
  DyadicLevels levels;
  std::vector<LevelRecord> per_level;
  int p_hat = 0;
  std::size_t chosen = 0;  // index into per_level

  const LassoFit& chosen_fit() const { return per_level.at(chosen).fit; }
  const LevelRecord& chosen_level() const { return per_level.at(chosen); }
};

struct SelectionOptions {
  SolverOptions solver;
  /// Multiplies every lambda_p; 1 gives the schedule above.
  double lambda_multiplier = 1.0;
  /// Multiplies every pen(p); 0 disables the l0 part.
  double pen_multiplier = 1.0;
  /// Reuse the previous level's solution, padded with zeros.
  bool warm_start = true;
  /// Fit levels on this many threads (independent cold starts when > 1).
  int threads = 1;
};

/// Index of the minimal criterion, smallest p on ties.
std::size_t argmin_level(const std::vector<LevelRecord>& per_level);

/// Solver failures are rethrown as NonConvergenceError naming the level.
SelectionTrace selected_lasso(const Dictionary& dictionary, const SampleVector& y, double eps,
                              int p_max, const SelectionOptions& options = {});

/// Same procedure in the Gaussian sequence model, where each level's Lasso is
/// the soft threshold of the first p observed coefficients. y_coeffs holds the
/// p_max observed coefficients and gamma is the squared distance to all of
/// them. Fits store coefficients in `fitted` (length p_max).
SelectionTrace selected_soft_threshold(const Coefficients& y_coeffs, double eps, int p_max,
                                       double lambda_multiplier = 1.0,
                                       double pen_multiplier = 1.0);

}  // namespace dyadic_lasso
