#pragma once

// Deterministic Lasso oracles, sequence-space norms and synthetic targets.
//
// In an orthonormal basis a target is its coefficient sequence theta*. The
// membership diagnostics are
//   Besov    sup_J J^{2r} sum_{j >= J} theta_j^2 <= R^2
//   strong   sum_j |theta_j|^q <= R^q
//   weak     sup_k k^{1/q} |theta|_(k) <= R
// and each norm below returns the smallest admissible R.

#include <string>

#include "dyadic_lasso/solver.hpp"

namespace dyadic_lasso {

enum class TargetKind { power_law, sparse, hypercube, custom };

struct Certificates {
  double weak_lq = 0.0;
  double strong_lq = 0.0;
  double besov = 0.0;
};

struct TargetSpec {
  TargetKind kind = TargetKind::custom;
  double q = 0.0;
  double r = 0.0;
  double R = 0.0;
  Coefficients coefficients;
  Certificates certificates;
  /// Non-empty when the parameters leave the regime the construction targets.
  std::string regime_warning;
  // Hypercube geometry (kind == hypercube only).
  int cube_p = 0;
  int cube_d = 0;
  double cube_m = 0.0;
};

struct DeterministicLasso {
  double value = 0.0;  // L_D(f, lambda)
  LassoFit fit;
};

/// L_D(f, lambda) = min ||f - Phi theta||^2 + lambda ||theta||_1 for noiseless f.
DeterministicLasso deterministic_lasso(const Dictionary& dictionary, const SampleVector& f_on_design,
                                       double lambda, const SolverOptions& options = {});

struct SandwichResult {
  double lower = 0.0;
  double value = 0.0;  // L
  double upper = 0.0;
  bool holds = false;
};

/// Checks  1/2 inf_delta (K^2 + lambda^2 / (2 delta^2)) <= L <= inf_delta (K^2 + lambda^2 / (4 delta^2))
/// for coefficients in an orthonormal basis. Infima are taken on a geometric
/// delta grid (ratio 2^{1/4}) widened until the minimum is interior, refined by
/// golden-section search, and compared with the delta -> infinity limit.
SandwichResult k_sandwich_check(const Coefficients& f_coeffs, double lambda, double tol = 1e-4,
                                double delta_min = 0x1p-10, double delta_max = 0x1p10);

double besov_norm(const Coefficients& theta, double r);
double strong_lq_norm(const Coefficients& theta, double q);
double weak_lq_norm(const Coefficients& theta, double q);
Certificates certify(const Coefficients& theta, double q, double r);

/// theta*_j = c j^{-1/q}, j = 1..length, with c chosen so that the larger of
/// the weak-lq and Besov certificates equals R.
TargetSpec make_power_law_target(double q, double r, double R, int length);

/// u = 1/r - q (1 + 1/(2r)); positive exactly when r < 1/q - 1/2.
double u_param(double q, double r);

/// Random vertex of the hypercube Theta(p, d, M) with
/// M = eps sqrt(u ln(R / eps)), p = 2^J, d = 2^K,
/// J = floor((2 - q) / (2r) log2(R / M)), K = floor(q log2(R / M)).
TargetSpec hypercube_target(double q, double r, double R, double eps, RandomStream& rng);

/// max(R^q lambda^{2-q}, (R p^{-r})^{2q/(2-q)} lambda^{4(1-q)/(2-q)}), without
/// its q-dependent constant.
double interp_rate_bound(int p, double lambda, double R, double q, double r);

}  // namespace dyadic_lasso
