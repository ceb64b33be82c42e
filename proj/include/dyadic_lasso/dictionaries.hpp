#pragma once

// Dictionaries evaluated on a fixed design.
//
// Column order is part of a dictionary's identity: truncation keeps the first
// p columns, so every family below fixes its ordering.
//   orthonormal : coordinate vectors e_1, e_2, ... of the identity design
//   haar        : constant, then Haar wavelets coarse to fine, left to right
//   fourier     : constant, then cos(2 pi k x), sin(2 pi k x) for k = 1, 2, ...
//   gaussian    : i.i.d. N(0, 1) entries, drawn column by column
//   heaviside   : 1{<a, x> + b > 0}, in the order of the enumeration sweep

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dyadic_lasso/geometry.hpp"

namespace dyadic_lasso {

class Dictionary {
 public:
  Dictionary(Eigen::MatrixXd columns, std::shared_ptr<const Design> design, std::string family,
             bool normalized = false);

  int p() const { return static_cast<int>(columns_.cols()); }
  int n() const { return static_cast<int>(columns_.rows()); }
  const Eigen::MatrixXd& columns() const { return columns_; }
  auto column(int j) const { return columns_.col(j); }
  const Design& design() const { return *design_; }
  const std::shared_ptr<const Design>& design_ptr() const { return design_; }
  const std::string& family() const { return family_; }
  bool normalized() const { return normalized_; }

  /// Empirical Gram matrix <phi_j, phi_k>.
  Eigen::MatrixXd gram() const;
  /// Phi * theta, the function with coefficients theta on the design.
  SampleVector synthesize(const Coefficients& theta) const;
  /// Largest empirical column norm.
  double max_column_norm() const;

 private:
  Eigen::MatrixXd columns_;
  std::shared_ptr<const Design> design_;
  std::string family_;
  bool normalized_;
};

/// Increasing dyadic truncation levels 1, 2, 4, ... capped at p_max (appended
/// when p_max itself is not a power of two).
using DyadicLevels = std::vector<int>;

Dictionary normalize(const Dictionary& dictionary);
Dictionary truncate(const Dictionary& dictionary, int p);
DyadicLevels dyadic_levels(int p_max);

Dictionary make_orthonormal_sequence(int p);
Dictionary make_haar_grid(int n);
Dictionary make_fourier_grid(int n, int p);
Dictionary make_gaussian_design(int n, int p, RandomStream& rng);

/// Every distinct nonzero 0/1 pattern x -> 1{<a, x> + b > 0} on the design
/// (d in {1, 2}), unnormalized. These have empirical norm <= 1.
Dictionary enumerate_heaviside_patterns(std::shared_ptr<const Design> design);
/// enumerate_heaviside_patterns followed by normalize.
Dictionary enumerate_heaviside(std::shared_ptr<const Design> design);

}  // namespace dyadic_lasso
