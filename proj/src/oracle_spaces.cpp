#include "dyadic_lasso/oracle_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

namespace dyadic_lasso {

DeterministicLasso deterministic_lasso(const Dictionary& dictionary, const SampleVector& f_on_design,
                                       double lambda, const SolverOptions& options) {
  DeterministicLasso out;
  out.fit = lasso_cd(dictionary, f_on_design, lambda, options);
  out.value = out.fit.objective;
  return out;
}

namespace {

// inf over delta > 0 of g(delta) = K(delta)^2 + c / delta^2. Past `saturation`
// K is constant, so g decreases towards `limit_at_infinity` there.
double infimum_over_delta(const std::function<double(double)>& g, double limit_at_infinity,
                          double saturation, double delta_min, double delta_max) {
  const double ratio = std::pow(2.0, 0.25);
  constexpr double kSmallest = 0x1p-200;
  constexpr double kLargest = 0x1p200;

  while (true) {
    std::vector<double> grid;
    for (double d = delta_min; d <= delta_max * (1 + 1e-12); d *= ratio) grid.push_back(d);
    std::vector<double> vals(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) vals[k] = g(grid[k]);
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());

    if (best == 0) {
      if (delta_min <= kSmallest) {
        std::ostringstream msg;
        msg << "k_sandwich_check: grid widened to delta = " << delta_min
            << " without bracketing the infimum";
        throw DiagnosticError(msg.str());
      }
      delta_min /= 1024.0;
      continue;
    }
    if (best + 1 == grid.size()) {
      if (delta_max >= saturation) return std::min(vals[best], limit_at_infinity);
      if (delta_max >= kLargest) {
        std::ostringstream msg;
        msg << "k_sandwich_check: grid widened to delta = " << delta_max
            << " without bracketing the infimum";
        throw DiagnosticError(msg.str());
      }
      delta_max *= 1024.0;
      continue;
    }

    // Golden-section refinement in log(delta) on the bracketing cells.
    double a = std::log(grid[best - 1]);
    double b = std::log(grid[best + 1]);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double gc = g(std::exp(c));
    double gd = g(std::exp(d));
    for (int it = 0; it < 80; ++it) {
      if (gc < gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - phi * (b - a);
        gc = g(std::exp(c));
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + phi * (b - a);
        gd = g(std::exp(d));
      }
    }
    return std::min({vals[best], gc, gd, limit_at_infinity});
  }
}

}  // namespace

SandwichResult k_sandwich_check(const Coefficients& f_coeffs, double lambda, double tol,
                                double delta_min, double delta_max) {
  if (!(lambda > 0.0)) throw ParameterError("k_sandwich_check: lambda must be > 0");
  if (!(delta_min > 0.0) || !(delta_max > delta_min)) {
    throw ParameterError("k_sandwich_check: need 0 < delta_min < delta_max");
  }
  SandwichResult res;
  const int p = static_cast<int>(f_coeffs.size());
  const Dictionary basis = make_orthonormal_sequence(p);
  const SampleVector f = basis.synthesize(f_coeffs);
  SolverOptions so;
  so.tol = 1e-12;
  res.value = deterministic_lasso(basis, f, lambda, so).value;

  const double f_sq = f_coeffs.squaredNorm();
  if (f_sq == 0.0) {
    // K vanishes identically and both infima are the delta -> infinity limit 0.
    res.lower = res.upper = 0.0;
    res.holds = res.value <= tol;
    return res;
  }
  const double lam2 = lambda * lambda;
  auto k2 = [&](double delta) {
    const double k = k_functional_orthonormal(f_coeffs, delta).value;
    return k * k;
  };
  // For delta >= max|f_j| / ||f|| the K-functional equals ||f||.
  const double saturation = f_coeffs.cwiseAbs().maxCoeff() / std::sqrt(f_sq);
  res.lower = 0.5 * infimum_over_delta([&](double d) { return k2(d) + lam2 / (2.0 * d * d); },
                                       f_sq, saturation, delta_min, delta_max);
  res.upper = infimum_over_delta([&](double d) { return k2(d) + lam2 / (4.0 * d * d); }, f_sq,
                                 saturation, delta_min, delta_max);
  res.holds = res.lower <= res.value + tol && res.value <= res.upper + tol;
  return res;
}

double besov_norm(const Coefficients& theta, double r) {
  if (!(r > 0.0)) throw ParameterError("besov_norm: r must be > 0");
  double tail = 0.0;
  double best = 0.0;
  for (Eigen::Index j = theta.size(); j >= 1; --j) {
    tail += theta[j - 1] * theta[j - 1];
    best = std::max(best, std::pow(static_cast<double>(j), 2.0 * r) * tail);
  }
  return std::sqrt(best);
}

double strong_lq_norm(const Coefficients& theta, double q) {
  if (!(q > 0.0)) throw ParameterError("strong_lq_norm: q must be > 0");
  return std::pow(theta.array().abs().pow(q).sum(), 1.0 / q);
}

double weak_lq_norm(const Coefficients& theta, double q) {
  if (!(q > 0.0)) throw ParameterError("weak_lq_norm: q must be > 0");
  std::vector<double> mag(theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) mag[j] = std::abs(theta[j]);
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    best = std::max(best, std::pow(static_cast<double>(k + 1), 1.0 / q) * mag[k]);
  }
  return best;
}

Certificates certify(const Coefficients& theta, double q, double r) {
  return {weak_lq_norm(theta, q), strong_lq_norm(theta, q), besov_norm(theta, r)};
}

TargetSpec make_power_law_target(double q, double r, double R, int length) {
  if (!(q > 1.0 && q < 2.0)) {
    throw ParameterError("make_power_law_target: q = " + std::to_string(q) +
                         " must lie in (1, 2)");
  }
  if (!(r > 0.0)) throw ParameterError("make_power_law_target: r must be > 0");
  if (!(R > 0.0)) throw ParameterError("make_power_law_target: R must be > 0");
  if (length < 1) throw ParameterError("make_power_law_target: length must be >= 1");

  Coefficients base(length);
  for (int j = 0; j < length; ++j) base[j] = std::pow(j + 1.0, -1.0 / q);
  const double scale = std::max(weak_lq_norm(base, q), besov_norm(base, r));

  TargetSpec spec;
  spec.kind = TargetKind::power_law;
  spec.q = q;
  spec.r = r;
  spec.R = R;
  spec.coefficients = base * (R / scale);
  spec.certificates = certify(spec.coefficients, q, r);
  if (!(r < 1.0 / q - 0.5)) {
    std::ostringstream msg;
    msg << "r = " << r << " is not below 1/q - 1/2 = " << (1.0 / q - 0.5)
        << "; the target is outside the minimax regime";
    spec.regime_warning = msg.str();
  }
  return spec;
}

double u_param(double q, double r) {
  if (!(r > 0.0) || !(q > 0.0)) throw ParameterError("u_param: q and r must be > 0");
  return 1.0 / r - q * (1.0 + 1.0 / (2.0 * r));
}

TargetSpec hypercube_target(double q, double r, double R, double eps, RandomStream& rng) {
  if (!(q > 1.0 && q < 2.0)) {
    throw ParameterError("hypercube_target: q = " + std::to_string(q) + " must lie in (1, 2)");
  }
  if (!(r > 0.0) || !(R > 0.0) || !(eps > 0.0)) {
    throw ParameterError("hypercube_target: r, R and eps must be > 0");
  }
  const double u = u_param(q, r);
  if (!(u > 0.0)) {
    std::ostringstream msg;
    msg << "hypercube_target: u = " << u << " <= 0 (requires r < 1/q - 1/2 = "
        << (1.0 / q - 0.5) << ")";
    throw RegimeError(msg.str());
  }
  const double snr = R / eps;
  const double e2 = std::exp(2.0);
  if (snr < std::max(e2, u * u)) {
    std::ostringstream msg;
    msg << "hypercube_target: R/eps = " << snr << " < max(e^2, u^2) = " << std::max(e2, u * u);
    throw RegimeError(msg.str());
  }

  const double m = eps * std::sqrt(u * std::log(snr));
  const double lr = std::log2(R / m);
  const int big_j = static_cast<int>(std::floor((2.0 - q) / (2.0 * r) * lr));
  const int big_k = static_cast<int>(std::floor(q * lr));
  if (big_j > 24) {
    throw RegimeError("hypercube_target: cube dimension 2^" + std::to_string(big_j) +
                      " is too large; increase eps or r");
  }
  const int p = 1 << big_j;
  const int d = 1 << big_k;
  if (d > p) throw RegimeError("hypercube_target: d = 2^K exceeds p = 2^J");

  // Partial Fisher-Yates draw of d support indices among the first p.
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 0; k < d; ++k) {
    const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(p - k)));
    std::swap(idx[k], idx[pick]);
  }

  TargetSpec spec;
  spec.kind = TargetKind::hypercube;
  spec.q = q;
  spec.r = r;
  spec.R = R;
  spec.coefficients = Coefficients::Zero(p);
  for (int k = 0; k < d; ++k) spec.coefficients[idx[k]] = m;
  spec.certificates = certify(spec.coefficients, q, r);
  spec.cube_p = p;
  spec.cube_d = d;
  spec.cube_m = m;
  return spec;
}

double interp_rate_bound(int p, double lambda, double R, double q, double r) {
  if (!(q > 1.0 && q < 2.0)) throw ParameterError("interp_rate_bound: q must lie in (1, 2)");
  if (p < 1 || !(lambda > 0.0) || !(R >= 0.0) || !(r > 0.0)) {
    throw ParameterError("interp_rate_bound: need p >= 1, lambda > 0, R >= 0, r > 0");
  }
  const double first = std::pow(R, q) * std::pow(lambda, 2.0 - q);
  const double second = std::pow(R * std::pow(static_cast<double>(p), -r), 2.0 * q / (2.0 - q)) *
                        std::pow(lambda, 4.0 * (1.0 - q) / (2.0 - q));
  return std::max(first, second);
}

}  // namespace dyadic_lasso
