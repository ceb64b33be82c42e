#include "dyadic_lasso/dictionaries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "dyadic_lasso/errors.hpp"

namespace dyadic_lasso {

Dictionary::Dictionary(Eigen::MatrixXd columns, std::shared_ptr<const Design> design,
                       std::string family, bool normalized)
    : columns_(std::move(columns)),
      design_(std::move(design)),
      family_(std::move(family)),
      normalized_(normalized) {
  if (!design_) throw ParameterError("dictionary needs a design");
  if (columns_.rows() != design_->n()) {
    throw DimensionError("dictionary columns have " + std::to_string(columns_.rows()) +
                         " rows, design has n = " + std::to_string(design_->n()));
  }
  if (columns_.cols() < 1) throw ParameterError("dictionary needs at least one column");
}

Eigen::MatrixXd Dictionary::gram() const {
  Eigen::MatrixXd g(p(), p());
  g.noalias() = columns_.transpose() * columns_;
  return g / static_cast<double>(n());
}

SampleVector Dictionary::synthesize(const Coefficients& theta) const {
  if (theta.size() != p()) {
    throw DimensionError("synthesize: " + std::to_string(theta.size()) +
                         " coefficients for " + std::to_string(p()) + " columns");
  }
  return columns_ * theta;
}

double Dictionary::max_column_norm() const {
  return std::sqrt(columns_.colwise().squaredNorm().maxCoeff() / n());
}

Dictionary normalize(const Dictionary& dictionary) {
  Eigen::MatrixXd cols = dictionary.columns();
  for (int j = 0; j < dictionary.p(); ++j) {
    const double norm = std::sqrt(cols.col(j).squaredNorm() / dictionary.n());
    if (!(norm > 0.0)) {
      throw DegenerateDictionaryError(
          j, "normalize: column " + std::to_string(j) + " is identically zero on the design");
    }
    cols.col(j) /= norm;
  }
  return Dictionary(std::move(cols), dictionary.design_ptr(), dictionary.family(), true);
}

Dictionary truncate(const Dictionary& dictionary, int p) {
  if (p < 1 || p > dictionary.p()) {
    throw ParameterError("truncate: p = " + std::to_string(p) + " outside [1, " +
                         std::to_string(dictionary.p()) + "]");
  }
  return Dictionary(dictionary.columns().leftCols(p), dictionary.design_ptr(),
                    dictionary.family(), dictionary.normalized());
}

DyadicLevels dyadic_levels(int p_max) {
  if (p_max < 1) throw ParameterError("dyadic_levels: p_max must be >= 1");
  DyadicLevels levels;
  for (long long p = 1; p <= p_max; p *= 2) levels.push_back(static_cast<int>(p));
  if (levels.back() != p_max) levels.push_back(p_max);
  return levels;
}

Dictionary make_orthonormal_sequence(int p) {
  if (p < 1) throw ParameterError("make_orthonormal_sequence: p must be >= 1");
  auto design = std::make_shared<const Design>(Design::sequence(p));
  Eigen::MatrixXd cols = Eigen::MatrixXd::Identity(p, p) * std::sqrt(static_cast<double>(p));
  return Dictionary(std::move(cols), std::move(design), "orthonormal", true);
}

Dictionary make_haar_grid(int n) {
  if (n < 1 || (n & (n - 1)) != 0) {
    throw ParameterError("make_haar_grid: n = " + std::to_string(n) + " is not a power of two");
  }
  auto design = std::make_shared<const Design>(Design::grid(n));
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, n);
  cols.col(0).setOnes();
  int j = 1;
  for (int width = n; width >= 2; width /= 2) {
    const int half = width / 2;
    const double amp = std::sqrt(static_cast<double>(n) / width);
    for (int start = 0; start < n; start += width, ++j) {
      cols.col(j).segment(start, half).setConstant(amp);
      cols.col(j).segment(start + half, half).setConstant(-amp);
    }
  }
  return Dictionary(std::move(cols), std::move(design), "haar", true);
}

Dictionary make_fourier_grid(int n, int p) {
  if (n < 1 || p < 1) throw ParameterError("make_fourier_grid: n and p must be >= 1");
  auto design = std::make_shared<const Design>(Design::grid(n));
  Eigen::MatrixXd cols(n, p);
  const auto& x = design->points();
  for (int j = 0; j < p; ++j) {
    const int k = (j + 1) / 2;
    for (int i = 0; i < n; ++i) {
      const double arg = 2.0 * std::numbers::pi * k * x(i, 0);
      cols(i, j) = j == 0 ? 1.0 : (j % 2 == 1 ? std::cos(arg) : std::sin(arg));
    }
  }
  Dictionary raw(std::move(cols), std::move(design), "fourier");
  return normalize(raw);
}

Dictionary make_gaussian_design(int n, int p, RandomStream& rng) {
  if (n < 1 || p < 1) throw ParameterError("make_gaussian_design: n and p must be >= 1");
  auto design = std::make_shared<const Design>(Design::grid(n));
  Eigen::MatrixXd cols(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) cols(i, j) = rng.normal();
  Dictionary raw(std::move(cols), std::move(design), "gaussian");
  return normalize(raw);
}

namespace {

using Pattern = std::vector<char>;

// Upper sets {x > t} and lower sets {x < t} of the projections, for every
// threshold between distinct projected values.
void sweep_projection(const Eigen::VectorXd& proj, std::vector<Pattern>& out,
                      std::set<Pattern>& seen) {
  const int n = static_cast<int>(proj.size());
  std::vector<double> values(proj.data(), proj.data() + n);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> thresholds;
  thresholds.push_back(values.front() - 1.0);
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    thresholds.push_back(0.5 * (values[k] + values[k + 1]));
  thresholds.push_back(values.back() + 1.0);

  auto emit = [&](Pattern pat) {
    if (std::none_of(pat.begin(), pat.end(), [](char c) { return c != 0; })) return;
    if (seen.insert(pat).second) out.push_back(std::move(pat));
  };
  for (double t : thresholds) {
    Pattern pat(n);
    for (int i = 0; i < n; ++i) pat[i] = proj[i] > t;
    emit(std::move(pat));
  }
  for (double t : thresholds) {
    Pattern pat(n);
    for (int i = 0; i < n; ++i) pat[i] = proj[i] < t;
    emit(std::move(pat));
  }
}

std::vector<Pattern> planar_patterns(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  // Critical directions: normals of lines through pairs of distinct points.
  // Labelings only change when the direction crosses one of them, so
  // directions just either side of each critical one visit every cell.
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = x(j, 0) - x(i, 0);
      const double dy = x(j, 1) - x(i, 1);
      if (dx == 0.0 && dy == 0.0) continue;
      double a = std::atan2(dx, -dy);  // normal (-dy, dx)
      a = std::fmod(a + std::numbers::pi, std::numbers::pi);
      angles.push_back(a);
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  double gap = std::numbers::pi;
  for (std::size_t k = 0; k + 1 < angles.size(); ++k) gap = std::min(gap, angles[k + 1] - angles[k]);
  if (angles.size() > 1) gap = std::min(gap, angles.front() + std::numbers::pi - angles.back());
  const double eta = gap / 4.0;

  std::vector<double> directions{0.0};
  for (double a : angles) {
    directions.push_back(a - eta);
    directions.push_back(a + eta);
  }

  std::vector<Pattern> out;
  std::set<Pattern> seen;
  for (double a : directions) {
    Eigen::VectorXd proj = x.col(0) * std::cos(a) + x.col(1) * std::sin(a);
    sweep_projection(proj, out, seen);
  }
  return out;
}

}  // namespace

Dictionary enumerate_heaviside_patterns(std::shared_ptr<const Design> design) {
  if (!design) throw ParameterError("enumerate_heaviside: null design");
  const int d = design->dim();
  const int n = design->n();
  std::vector<Pattern> patterns;
  if (d == 1) {
    std::set<Pattern> seen;
    sweep_projection(design->points().col(0), patterns, seen);
  } else if (d == 2) {
    patterns = planar_patterns(design->points());
  } else {
    throw UnsupportedDimensionError("enumerate_heaviside: dimension d = " + std::to_string(d) +
                                    " is not supported (d must be 1 or 2)");
  }
  Eigen::MatrixXd cols(n, static_cast<Eigen::Index>(patterns.size()));
  for (std::size_t j = 0; j < patterns.size(); ++j)
    for (int i = 0; i < n; ++i) cols(i, static_cast<Eigen::Index>(j)) = patterns[j][i];
  return Dictionary(std::move(cols), std::move(design), "heaviside");
}

Dictionary enumerate_heaviside(std::shared_ptr<const Design> design) {
  return normalize(enumerate_heaviside_patterns(std::move(design)));
}

}  // namespace dyadic_lasso
