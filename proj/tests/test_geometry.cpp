#include <gtest/gtest.h>

#include <cmath>

#include "dyadic_lasso/errors.hpp"
#include "dyadic_lasso/geometry.hpp"

namespace dl = dyadic_lasso;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(EmpiricalInner, ConstantOrthogonalAndArithmetic) {
  const dl::Design design = dl::Design::grid(2);
  EXPECT_DOUBLE_EQ(dl::empirical_inner(vec({1, 1}), vec({1, 1}), design), 1.0);
  EXPECT_DOUBLE_EQ(dl::empirical_inner(vec({1, 0}), vec({0, 1}), design), 0.0);
  EXPECT_DOUBLE_EQ(dl::empirical_inner(vec({3, 4}), vec({3, 4}), design), 12.5);
}

TEST(EmpiricalInner, LengthMismatchThrows) {
  const dl::Design design = dl::Design::grid(3);
  EXPECT_THROW(dl::empirical_inner(vec({1, 1}), vec({1, 1}), design), dl::DimensionError);
  EXPECT_THROW(dl::empirical_inner(vec({1, 1, 1}), vec({1, 1}), design), dl::DimensionError);
}

TEST(EmpiricalNorm, Examples) {
  EXPECT_DOUBLE_EQ(dl::empirical_norm(vec({0, 0, 0}), dl::Design::grid(3)), 0.0);
  EXPECT_DOUBLE_EQ(dl::empirical_norm(vec({1, 1, 1, 1}), dl::Design::grid(4)), 1.0);
  EXPECT_NEAR(dl::empirical_norm(vec({3, 4}), dl::Design::grid(2)), 3.5355339, 1e-7);
  EXPECT_DOUBLE_EQ(dl::empirical_norm(vec({3, 4}), dl::Design::grid(2)), std::sqrt(12.5));
}

TEST(GammaEmp, Examples) {
  const dl::Design design = dl::Design::grid(2);
  EXPECT_DOUBLE_EQ(dl::gamma_emp(vec({0.3, -2}), vec({0.3, -2}), design), 0.0);
  EXPECT_DOUBLE_EQ(dl::gamma_emp(vec({1, 1}), vec({0, 0}), design), 1.0);
  EXPECT_DOUBLE_EQ(dl::gamma_emp(vec({2, 0}), vec({0, 0}), design), 2.0);
}

TEST(GammaEmp, DifferencesMatchShiftedContrast) {
  dl::RandomStream rng(3);
  const int n = 17;
  const dl::Design design = dl::Design::grid(n);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd y(n), h(n), g(n);
    for (int i = 0; i < n; ++i) {
      y[i] = rng.normal();
      h[i] = rng.normal();
      g[i] = rng.normal();
    }
    // The contrast with the -||y||^2 constant kept: -2<y,h> + ||h||^2.
    auto contrast = [&](const Eigen::VectorXd& v) {
      return (-2.0 * y.dot(v) + v.squaredNorm()) / n;
    };
    const double diff = dl::gamma_emp(y, h, design) - dl::gamma_emp(y, g, design);
    EXPECT_NEAR(diff, contrast(h) - contrast(g), 1e-12);
  }
}

TEST(EmpiricalInner, CauchySchwarz) {
  dl::RandomStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(40));
    const dl::Design design = dl::Design::grid(n);
    Eigen::VectorXd u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
    }
    const double lhs = std::abs(dl::empirical_inner(u, v, design));
    const double rhs = dl::empirical_norm(u, design) * dl::empirical_norm(v, design);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
  }
}

TEST(EmpiricalInner, SymmetricAndBilinear) {
  dl::RandomStream rng(5);
  const int n = 9;
  Eigen::VectorXd u(n), v(n), w(n);
  for (int i = 0; i < n; ++i) {
    u[i] = rng.normal();
    v[i] = rng.normal();
    w[i] = rng.normal();
  }
  EXPECT_DOUBLE_EQ(dl::empirical_inner(u, v), dl::empirical_inner(v, u));
  EXPECT_NEAR(dl::empirical_inner(2.0 * u + w, v),
              2.0 * dl::empirical_inner(u, v) + dl::empirical_inner(w, v), 1e-12);
}

TEST(SampleRegression, NoiselessCopiesTarget) {
  dl::RandomStream rng(1);
  const dl::Design design = dl::Design::grid(4);
  const Eigen::VectorXd f = vec({1, -2, 3, 0.5});
  EXPECT_EQ(dl::sample_regression(f, 0.0, design, rng), f);
}

TEST(SampleRegression, MeanConcentrates) {
  const int n = 10000;
  dl::RandomStream rng(2024);
  const dl::Design design = dl::Design::grid(n);
  const Eigen::VectorXd y = dl::sample_regression(Eigen::VectorXd::Zero(n), 1.0, design, rng);
  EXPECT_LT(std::abs(y.mean()), 4.0 / std::sqrt(n));
}

TEST(SampleRegression, DeterministicForSeed) {
  const dl::Design design = dl::Design::grid(50);
  const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(50, -1, 1);
  dl::RandomStream a(77, 3), b(77, 3);
  EXPECT_EQ(dl::sample_regression(f, 0.7, design, a), dl::sample_regression(f, 0.7, design, b));
}

TEST(SampleRegression, RejectsNegativeSigmaAndBadLength) {
  dl::RandomStream rng(1);
  const dl::Design design = dl::Design::grid(3);
  EXPECT_THROW(dl::sample_regression(vec({0, 0, 0}), -1.0, design, rng), dl::ParameterError);
  EXPECT_THROW(dl::sample_regression(vec({0, 0}), 1.0, design, rng), dl::DimensionError);
}

TEST(SampleSequenceModel, ZeroNoiseIsExactCopyPaddedWithZeros) {
  dl::RandomStream rng(1);
  const Eigen::VectorXd theta = vec({1, 2, 3});
  const Eigen::VectorXd y = dl::sample_sequence_model(theta, 0.0, 5, rng);
  EXPECT_EQ(y, vec({1, 2, 3, 0, 0}));
  EXPECT_EQ(dl::sample_sequence_model(theta, 0.0, 2, rng), vec({1, 2}));
}

TEST(SampleSequenceModel, VarianceNearOne) {
  dl::RandomStream rng(99);
  const int p = 10000;
  const Eigen::VectorXd y = dl::sample_sequence_model(Eigen::VectorXd::Zero(1), 1.0, p, rng);
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / (p - 1);
  EXPECT_GE(var, 0.9);
  EXPECT_LE(var, 1.1);
}

TEST(SampleSequenceModel, SingleCoordinateUsesFirstNormal) {
  const double eps = 0.3;
  dl::RandomStream rng(42, 7), reference(42, 7);
  const Eigen::VectorXd y = dl::sample_sequence_model(vec({5}), eps, 1, rng);
  EXPECT_DOUBLE_EQ(y[0], 5.0 + eps * reference.normal());
}

TEST(NoiseLevel, RegressionConversionAndValidation) {
  EXPECT_DOUBLE_EQ(dl::NoiseLevel::from_regression(2.0, 16).eps(), 0.5);
  EXPECT_THROW(dl::NoiseLevel(0.0), dl::ParameterError);
  EXPECT_THROW(dl::NoiseLevel(-1.0), dl::ParameterError);
}

TEST(Design, GridAndUniform) {
  const dl::Design g = dl::Design::grid(4);
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.dim(), 1);
  EXPECT_DOUBLE_EQ(g.points()(0, 0), 0.125);
  dl::RandomStream rng(1);
  const dl::Design u = dl::Design::uniform(10, 2, rng);
  EXPECT_EQ(u.dim(), 2);
  EXPECT_TRUE((u.points().array() >= 0.0).all() && (u.points().array() <= 1.0).all());
  EXPECT_THROW(dl::Design(Eigen::MatrixXd(0, 1)), dl::ParameterError);
}

TEST(RandomStream, StreamsDependOnlyOnSeedAndIndex) {
  dl::RandomStream a(5, 1), b(5, 1), c(5, 2), d(6, 1);
  const double x = a.normal();
  EXPECT_EQ(x, b.normal());
  EXPECT_NE(x, c.normal());
  EXPECT_NE(x, d.normal());
}
