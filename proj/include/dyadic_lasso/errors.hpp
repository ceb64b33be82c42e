#pragma once

#include <stdexcept>
#include <string>

namespace dyadic_lasso {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector lengths disagree with each other or with the design.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A dictionary column vanishes on the design.
class DegenerateDictionaryError : public Error {
 public:
  DegenerateDictionaryError(std::size_t column, const std::string& what)
      : Error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A signal-to-noise or smoothness hypothesis required by a construction fails.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Numerical search (grid widening, bisection) failed to bracket its target.
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

/// A run configuration is malformed or fails validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownExperimentError : public Error {
 public:
  using Error::Error;
};

}  // namespace dyadic_lasso
