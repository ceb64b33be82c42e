#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dyadic_lasso/oracle_spaces.hpp"
#include "test_util.hpp"

namespace dl = dyadic_lasso;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Quadratic-time Besov oracle: sqrt(max_J J^{2r} sum_{j >= J} theta_j^2).
double besov_double_loop(const Eigen::VectorXd& theta, double r) {
  double best = 0.0;
  for (Eigen::Index J = 1; J <= theta.size(); ++J) {
    double tail = 0.0;
    for (Eigen::Index j = J; j <= theta.size(); ++j) tail += theta[j - 1] * theta[j - 1];
    best = std::max(best, std::pow(static_cast<double>(J), 2 * r) * tail);
  }
  return std::sqrt(best);
}

// Weak-lq via the level-set form sup_eta eta^q #{|theta_j| > eta}, at eta just below each magnitude.
double weak_by_level_sets(const Eigen::VectorXd& theta, double q) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double eta = std::abs(theta[i]);
    if (eta == 0.0) continue;
    const double count = static_cast<double>((theta.array().abs() >= eta).count());
    best = std::max(best, std::pow(eta, q) * count);
  }
  return std::pow(best, 1.0 / q);
}

}  // namespace

TEST(DeterministicLasso, ZeroLambdaInSpan) {
  dl::RandomStream rng(1);
  const dl::Dictionary d = dl::make_haar_grid(16);
  Eigen::VectorXd c(16);
  for (int j = 0; j < 16; ++j) c[j] = rng.normal();
  const dl::DeterministicLasso L = dl::deterministic_lasso(d, d.synthesize(c), 0.0, {.tol = 1e-12});
  EXPECT_NEAR(L.value, 0.0, 1e-20);
}

TEST(DeterministicLasso, TwoCoefficientClosedForm) {
  const dl::Dictionary basis = dl::make_orthonormal_sequence(2);
  const dl::DeterministicLasso L =
      dl::deterministic_lasso(basis, basis.synthesize(vec({1.0, 0.2})), 1.0, {.tol = 1e-12});
  EXPECT_NEAR(L.fit.theta[0], 0.5, 1e-12);
  EXPECT_NEAR(L.fit.theta[1], 0.0, 1e-12);
  EXPECT_NEAR(L.value, 0.79, 1e-12);
  // Grid brute force over coefficients.
  double best = INFINITY;
  for (int a = -200; a <= 1200; ++a) {
    for (int b = -200; b <= 400; ++b) {
      const double t0 = a * 1e-3, t1 = b * 1e-3;
      best = std::min(best, (1 - t0) * (1 - t0) + (0.2 - t1) * (0.2 - t1) +
                                std::abs(t0) + std::abs(t1));
    }
  }
  EXPECT_NEAR(L.value, best, 1e-6);
}

TEST(DeterministicLasso, ConcaveNondecreasingInLambda) {
  dl::RandomStream rng(2);
  const dl::Dictionary d = dl::make_gaussian_design(40, 25, rng);
  Eigen::VectorXd f(40);
  for (int i = 0; i < 40; ++i) f[i] = rng.normal();
  std::vector<double> values;
  for (int k = 0; k <= 20; ++k) {
    values.push_back(dl::deterministic_lasso(d, f, 0.05 * k, {.tol = 1e-12}).value);
  }
  for (std::size_t k = 1; k < values.size(); ++k) EXPECT_GE(values[k], values[k - 1] - 1e-10);
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    EXPECT_GE(values[k], 0.5 * (values[k - 1] + values[k + 1]) - 1e-9);
  }
}

TEST(DeterministicLasso, OrthonormalMatchesHalfThreshold) {
  dl::RandomStream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 1 + static_cast<int>(rng.below(64));
    Eigen::VectorXd c(p);
    for (int j = 0; j < p; ++j) c[j] = rng.normal();
    const double lam = rng.uniform();
    const dl::Dictionary basis = dl::make_orthonormal_sequence(p);
    const auto L = dl::deterministic_lasso(basis, basis.synthesize(c), lam, {.tol = 1e-12});
    Eigen::VectorXd expected(p);
    for (int j = 0; j < p; ++j) {
      expected[j] = std::copysign(std::max(std::abs(c[j]) - lam / 2, 0.0), c[j]);
    }
    EXPECT_LE((L.fit.theta - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Sandwich, ZeroTarget) {
  const dl::SandwichResult s = dl::k_sandwich_check(Eigen::VectorXd::Zero(3), 0.7);
  EXPECT_TRUE(s.holds);
  EXPECT_DOUBLE_EQ(s.value, 0.0);
  EXPECT_NEAR(s.lower, 0.0, 1e-12);
  EXPECT_NEAR(s.upper, 0.0, 1e-12);
}

TEST(Sandwich, SingleCoefficient) {
  const dl::SandwichResult s = dl::k_sandwich_check(vec({1.0}), 0.5);
  EXPECT_TRUE(s.holds);
  // L = (1/4)^2 + 0.5 * 0.75 for the half threshold at 0.25.
  EXPECT_NEAR(s.value, 0.0625 + 0.375, 1e-12);
  EXPECT_LE(s.lower, s.value + 1e-4);
  EXPECT_LE(s.value, s.upper + 1e-4);
}

// Independent evaluation of the two infima on a dense delta grid.
TEST(Sandwich, RandomTargetsAgainstDenseGrid) {
  dl::RandomStream rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd f(10);
    for (int j = 0; j < 10; ++j) f[j] = rng.normal();
    const double lam = 2.0 * rng.uniform() + 0.01;
    const dl::SandwichResult s = dl::k_sandwich_check(f, lam);
    EXPECT_TRUE(s.holds);
    double lower = INFINITY, upper = INFINITY;
    for (double log_delta = -10; log_delta <= 10; log_delta += 0.01) {
      const double delta = std::pow(2.0, log_delta);
      const double k = dl::k_functional_orthonormal(f, delta).value;
      lower = std::min(lower, 0.5 * (k * k + lam * lam / (2 * delta * delta)));
      upper = std::min(upper, k * k + lam * lam / (4 * delta * delta));
    }
    lower = std::min(lower, 0.5 * f.squaredNorm());
    upper = std::min(upper, f.squaredNorm());
    EXPECT_LE(s.lower, lower + 1e-9);
    EXPECT_LE(s.upper, upper + 1e-9);
    EXPECT_NEAR(s.lower, lower, 1e-3 * std::max(1.0, lower));
    EXPECT_NEAR(s.upper, upper, 1e-3 * std::max(1.0, upper));
    EXPECT_LE(lower, s.value + 1e-4);
    EXPECT_LE(s.value, upper + 1e-4);
  }
}

TEST(Besov, Examples) {
  EXPECT_DOUBLE_EQ(dl::besov_norm(vec({1, 0, 0, 0}), 0.3), 1.0);
  EXPECT_DOUBLE_EQ(dl::besov_norm(Eigen::VectorXd::Zero(5), 0.3), 0.0);
  Eigen::VectorXd harmonic(100);
  for (int j = 0; j < 100; ++j) harmonic[j] = 1.0 / (j + 1);
  EXPECT_NEAR(dl::besov_norm(harmonic, 0.25), besov_double_loop(harmonic, 0.25), 1e-12);
  dl::RandomStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd t(1 + rng.below(60));
    for (Eigen::Index j = 0; j < t.size(); ++j) t[j] = rng.normal();
    const double r = rng.uniform();
    EXPECT_NEAR(dl::besov_norm(t, r), besov_double_loop(t, r), 1e-10);
  }
}

TEST(LqNorms, Examples) {
  for (double q : {1.2, 1.5, 1.8}) {
    EXPECT_DOUBLE_EQ(dl::strong_lq_norm(vec({1}), q), 1.0);
    EXPECT_DOUBLE_EQ(dl::weak_lq_norm(vec({1}), q), 1.0);
  }
  Eigen::VectorXd t(50);
  const double q = 1.5;
  for (int j = 0; j < 50; ++j) t[j] = std::pow(j + 1.0, -1.0 / q);
  EXPECT_NEAR(dl::weak_lq_norm(t, q), 1.0, 1e-12);
}

TEST(LqNorms, WeakBelowStrongAndLevelSetForm) {
  dl::RandomStream rng(6);
  for (double q : {1.2, 1.5, 1.8}) {
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd t(1 + rng.below(40));
      for (Eigen::Index j = 0; j < t.size(); ++j) t[j] = rng.normal();
      const double weak = dl::weak_lq_norm(t, q);
      EXPECT_LE(weak, dl::strong_lq_norm(t, q) * (1 + 1e-12));
      EXPECT_NEAR(weak, weak_by_level_sets(t, q), 1e-12 * std::max(1.0, weak));
    }
  }
}

TEST(PowerLaw, CertificatesAndHomogeneity) {
  const dl::TargetSpec t = dl::make_power_law_target(1.5, 0.1, 1.0, 256);
  EXPECT_EQ(t.coefficients.size(), 256);
  EXPECT_LE(t.certificates.weak_lq, 1.0 + 1e-10);
  EXPECT_LE(t.certificates.besov, 1.0 + 1e-10);
  EXPECT_GE(std::max(t.certificates.weak_lq, t.certificates.besov), 0.99);
  EXPECT_NEAR(std::max(t.certificates.weak_lq, t.certificates.besov), 1.0, 1e-12);
  EXPECT_NEAR(dl::weak_lq_norm(t.coefficients, 1.5), t.certificates.weak_lq, 1e-12);
  const dl::TargetSpec doubled = dl::make_power_law_target(1.5, 0.1, 2.0, 256);
  EXPECT_LE((doubled.coefficients - 2.0 * t.coefficients).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE(t.regime_warning.empty());
  EXPECT_FALSE(dl::make_power_law_target(1.5, 0.5, 1.0, 16).regime_warning.empty());
  EXPECT_THROW(dl::make_power_law_target(2.5, 0.1, 1.0, 16), dl::ParameterError);
}

TEST(UParam, Examples) {
  EXPECT_NEAR(dl::u_param(1.0, 0.25), 1.0, 1e-15);
  EXPECT_NEAR(dl::u_param(1.5, 0.2), -0.25, 1e-14);
  EXPECT_LT(1.0 / 1.5 - 0.5, 0.2);
  EXPECT_NEAR(dl::u_param(1e-12, 0.4), 1.0 / 0.4, 1e-9);
  for (double q : {1.1, 1.5, 1.9}) {
    for (double r : {0.01, 0.1, 0.3}) {
      EXPECT_EQ(dl::u_param(q, r) > 0, r < 1.0 / q - 0.5);
    }
  }
}

TEST(Hypercube, VertexStructureAndCertificates) {
  dl::RandomStream rng(7);
  const double q = 1.5, r = 0.1, R = 1.0, eps = 0.01;
  const dl::TargetSpec t = dl::hypercube_target(q, r, R, eps, rng);
  const double u = dl::u_param(q, r);
  const double M = eps * std::sqrt(u * std::log(R / eps));
  EXPECT_NEAR(t.cube_m, M, 1e-15);
  const int J = static_cast<int>(std::floor((2 - q) / (2 * r) * std::log2(R / M)));
  const int K = static_cast<int>(std::floor(q * std::log2(R / M)));
  EXPECT_EQ(t.cube_p, 1 << J);
  EXPECT_EQ(t.cube_d, 1 << K);
  EXPECT_LE(t.cube_d, t.cube_p);
  EXPECT_EQ((t.coefficients.array() != 0.0).count(), t.cube_d);
  for (Eigen::Index j = 0; j < t.coefficients.size(); ++j) {
    if (t.coefficients[j] != 0.0) EXPECT_EQ(t.coefficients[j], M);
  }
  EXPECT_LE(t.cube_d * std::pow(M, q), std::pow(R, q) * (1 + 1e-12));
  EXPECT_NEAR(std::pow(dl::strong_lq_norm(t.coefficients, q), q), t.cube_d * std::pow(M, q), 1e-12);
  EXPECT_LE(t.certificates.strong_lq, R * (1 + 1e-12));
  EXPECT_LE(t.certificates.besov, R * (1 + 1e-12));
}

TEST(Hypercube, SupportVariesWithStream) {
  dl::RandomStream a(1), b(2);
  const auto x = dl::hypercube_target(1.5, 0.1, 1.0, 0.01, a);
  const auto y = dl::hypercube_target(1.5, 0.1, 1.0, 0.01, b);
  EXPECT_NE(x.coefficients, y.coefficients);
}

TEST(Hypercube, RegimeErrors) {
  dl::RandomStream rng(1);
  try {
    dl::hypercube_target(1.5, 0.2, 1.0, 0.01, rng);
    FAIL() << "expected RegimeError";
  } catch (const dl::RegimeError& e) {
    EXPECT_NE(std::string(e.what()).find("u"), std::string::npos);
  }
  try {
    dl::hypercube_target(1.5, 0.1, 1.0, 0.5, rng);
    FAIL() << "expected RegimeError";
  } catch (const dl::RegimeError& e) {
    EXPECT_NE(std::string(e.what()).find("R/eps"), std::string::npos);
  }
}

TEST(InterpRateBound, CrossoverAndLimits) {
  const double q = 1.5, r = 0.1, R = 1.0;
  const double alpha = 1 / q - 0.5;
  const int p = 1024;
  // lambda with lambda p^{r(2 alpha + 1)} = R.
  const double lam = R / std::pow(p, r * (2 * alpha + 1));
  const double first = std::pow(R, q) * std::pow(lam, 2 - q);
  const double second = std::pow(R * std::pow(p, -r), 2 * q / (2 - q)) *
                        std::pow(lam, 4 * (1 - q) / (2 - q));
  EXPECT_NEAR(first, second, 1e-12 * first);
  EXPECT_NEAR(dl::interp_rate_bound(p, lam, R, q, r), first, 1e-12 * first);
  const double big_p = 1 << 30;
  EXPECT_NEAR(dl::interp_rate_bound(static_cast<int>(big_p), 0.2, R, q, r) /
                  dl::interp_rate_bound(static_cast<int>(big_p), 0.1, R, q, r),
              std::pow(2.0, 2 - q), 1e-12);
  EXPECT_LT(dl::interp_rate_bound(p, 0.1, 1e-8, q, r), 1e-10);
}
