#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "dyadic_lasso/dictionaries.hpp"
#include "dyadic_lasso/errors.hpp"
#include "test_util.hpp"

namespace dl = dyadic_lasso;
using dl::testing::dictionary_from;
using dl::testing::line_design;

namespace {

std::set<std::string> pattern_strings(const dl::Dictionary& dict) {
  std::set<std::string> out;
  for (int j = 0; j < dict.p(); ++j) {
    std::string s;
    for (int i = 0; i < dict.n(); ++i) s += dict.columns()(i, j) > 0.5 ? '1' : '0';
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(Normalize, ScalesToUnitNorm) {
  Eigen::MatrixXd cols(2, 1);
  cols << 2, 2;
  const dl::Dictionary d = dl::normalize(dictionary_from(cols));
  EXPECT_TRUE(d.normalized());
  EXPECT_DOUBLE_EQ(d.columns()(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.columns()(1, 0), 1.0);
}

TEST(Normalize, UnitColumnUnchanged) {
  Eigen::MatrixXd cols(2, 1);
  cols << std::sqrt(2.0), 0.0;
  const dl::Dictionary d = dl::normalize(dictionary_from(cols));
  EXPECT_DOUBLE_EQ(d.columns()(0, 0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.columns()(1, 0), 0.0);
}

TEST(Normalize, ZeroColumnNamesIndex) {
  Eigen::MatrixXd cols(2, 3);
  cols << 1, 1, 0, 1, 2, 0;
  try {
    dl::normalize(dictionary_from(cols));
    FAIL() << "expected DegenerateDictionaryError";
  } catch (const dl::DegenerateDictionaryError& e) {
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(Normalize, MaxNormWithinRounding) {
  dl::RandomStream rng(8);
  Eigen::MatrixXd cols(30, 12);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 30; ++i) cols(i, j) = 10.0 * rng.normal();
  const dl::Dictionary d = dl::normalize(dictionary_from(cols));
  for (int j = 0; j < d.p(); ++j) {
    const double norm = std::sqrt(d.column(j).squaredNorm() / d.n());
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
  EXPECT_LE(d.max_column_norm(), 1 + 1e-12);
}

TEST(Truncate, IdentitySingleAndNesting) {
  dl::RandomStream rng(3);
  const dl::Dictionary d = dl::make_gaussian_design(20, 16, rng);
  EXPECT_EQ(dl::truncate(d, 16).columns(), d.columns());
  const dl::Dictionary one = dl::truncate(d, 1);
  EXPECT_EQ(one.p(), 1);
  EXPECT_EQ(one.columns().col(0), d.columns().col(0));
  EXPECT_EQ(dl::truncate(dl::truncate(d, 8), 4).columns(), dl::truncate(d, 4).columns());
  EXPECT_THROW(dl::truncate(d, 0), dl::ParameterError);
  EXPECT_THROW(dl::truncate(d, 17), dl::ParameterError);
}

TEST(Truncate, GramIsLeadingBlock) {
  dl::RandomStream rng(4);
  const dl::Dictionary d = dl::make_gaussian_design(25, 10, rng);
  const Eigen::MatrixXd full = d.gram();
  const Eigen::MatrixXd part = dl::truncate(d, 6).gram();
  EXPECT_LE((full.topLeftCorner(6, 6) - part).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DyadicLevels, Examples) {
  EXPECT_EQ(dl::dyadic_levels(8), (std::vector<int>{1, 2, 4, 8}));
  EXPECT_EQ(dl::dyadic_levels(1), (std::vector<int>{1}));
  EXPECT_EQ(dl::dyadic_levels(10), (std::vector<int>{1, 2, 4, 8, 10}));
  EXPECT_THROW(dl::dyadic_levels(0), dl::ParameterError);
}

TEST(DyadicLevels, StrictlyIncreasingFromOne) {
  for (int p = 1; p <= 300; ++p) {
    const auto levels = dl::dyadic_levels(p);
    ASSERT_EQ(levels.front(), 1);
    ASSERT_EQ(levels.back(), p);
    for (std::size_t k = 1; k < levels.size(); ++k) ASSERT_LT(levels[k - 1], levels[k]);
  }
}

TEST(OrthonormalSequence, GramIsIdentity) {
  const dl::Dictionary d2 = dl::make_orthonormal_sequence(2);
  EXPECT_TRUE(d2.gram().isIdentity(1e-15));
  EXPECT_DOUBLE_EQ(dl::empirical_inner(d2.column(0), d2.column(1)), 0.0);
  const dl::Dictionary d5 = dl::make_orthonormal_sequence(5);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::sqrt(d5.column(j).squaredNorm() / 5), 1.0, 1e-15);
}

TEST(Haar, OrthonormalOnGrid) {
  for (int n : {4, 8, 64}) {
    const dl::Dictionary h = dl::make_haar_grid(n);
    EXPECT_EQ(h.p(), n);
    // Independent Gram computation from raw sums.
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += h.columns()(i, j) * h.columns()(i, k);
        EXPECT_NEAR(s / n, j == k ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(Haar, CoarseToFineOrdering) {
  const dl::Dictionary h = dl::make_haar_grid(8);
  auto support = [&](int j) { return (h.column(j).array() != 0.0).count(); };
  EXPECT_EQ(support(0), 8);
  EXPECT_EQ(support(1), 8);
  EXPECT_EQ(support(2), 4);
  EXPECT_EQ(support(3), 4);
  for (int j = 4; j < 8; ++j) EXPECT_EQ(support(j), 2);
}

TEST(Haar, RejectsNonPowerOfTwo) {
  EXPECT_THROW(dl::make_haar_grid(6), dl::ParameterError);
  EXPECT_THROW(dl::make_haar_grid(0), dl::ParameterError);
}

TEST(Fourier, UnitNorms) {
  const dl::Dictionary f = dl::make_fourier_grid(8, 5);
  EXPECT_EQ(f.p(), 5);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::sqrt(f.column(j).squaredNorm() / 8), 1.0, 1e-12);
  EXPECT_TRUE(f.normalized());
}

TEST(Gaussian, ReproducibleForSeed) {
  dl::RandomStream a(12), b(12);
  const dl::Dictionary x = dl::make_gaussian_design(50, 100, a);
  const dl::Dictionary y = dl::make_gaussian_design(50, 100, b);
  EXPECT_EQ(x.columns(), y.columns());
  EXPECT_LE(x.max_column_norm(), 1 + 1e-12);
}

TEST(Heaviside, ThreePointPatterns) {
  const auto design = line_design({0.1, 0.5, 0.9});
  const dl::Dictionary raw = dl::enumerate_heaviside_patterns(design);
  EXPECT_EQ(raw.p(), 5);
  EXPECT_LE(raw.p(), 16);
  EXPECT_EQ(pattern_strings(raw), (std::set<std::string>{"111", "011", "001", "100", "110"}));
}

TEST(Heaviside, SinglePoint) {
  const dl::Dictionary raw = dl::enumerate_heaviside_patterns(line_design({0.3}));
  EXPECT_EQ(raw.p(), 1);
  EXPECT_EQ(raw.columns()(0, 0), 1.0);
}

TEST(Heaviside, CountBoundsInOneDimension) {
  dl::RandomStream rng(21);
  const auto design = std::make_shared<const dl::Design>(dl::Design::uniform(20, 1, rng));
  const dl::Dictionary d = dl::enumerate_heaviside(design);
  EXPECT_LE(d.p(), 2 * 20);
  EXPECT_LE(d.p(), 21 * 21);
  EXPECT_TRUE(d.normalized());
  EXPECT_LE(d.max_column_norm(), 1 + 1e-12);
}

TEST(Heaviside, NoDuplicatesNoZeroColumn) {
  for (int dim : {1, 2}) {
    dl::RandomStream rng(30 + dim);
    const auto design = std::make_shared<const dl::Design>(dl::Design::uniform(12, dim, rng));
    const dl::Dictionary raw = dl::enumerate_heaviside_patterns(design);
    const auto patterns = pattern_strings(raw);
    EXPECT_EQ(static_cast<int>(patterns.size()), raw.p());
    EXPECT_EQ(patterns.count(std::string(12, '0')), 0u);
    EXPECT_LE(raw.p(), static_cast<int>(std::pow(13.0, dim + 1)));
  }
}

// Every pattern cut by a random half-plane appears in the 2-D enumeration.
TEST(Heaviside, TwoDimensionalCoversRandomHalfPlanes) {
  dl::RandomStream rng(5);
  const auto design = std::make_shared<const dl::Design>(dl::Design::uniform(10, 2, rng));
  const auto patterns = pattern_strings(dl::enumerate_heaviside_patterns(design));
  for (int trial = 0; trial < 2000; ++trial) {
    const double angle = 2.0 * M_PI * rng.uniform();
    const double a0 = std::cos(angle), a1 = std::sin(angle);
    const double b = 2.0 * rng.uniform() - 1.0;
    std::string s;
    for (int i = 0; i < 10; ++i) {
      const auto& x = design->points();
      s += a0 * x(i, 0) + a1 * x(i, 1) + b > 0 ? '1' : '0';
    }
    if (s == std::string(10, '0')) continue;
    EXPECT_EQ(patterns.count(s), 1u) << s;
  }
}

TEST(Heaviside, RejectsHighDimension) {
  dl::RandomStream rng(1);
  const auto design = std::make_shared<const dl::Design>(dl::Design::uniform(5, 3, rng));
  EXPECT_THROW(dl::enumerate_heaviside(design), dl::UnsupportedDimensionError);
}
