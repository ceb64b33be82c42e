#pragma once

// Run configuration: flat `key = value` text with dotted section keys.
//
//   # comment
//   experiment.name = rates
//   experiment.eps_grid = 0.125, 0.0625
//
// Lists are comma separated. Unknown keys and malformed values are errors.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dyadic_lasso {

struct RunConfig {
  // model
  std::string model_kind = "sequence";  // sequence | regression
  int n = 128;
  double sigma = 1.0;
  double eps = 0.1;
  std::string design = "grid";  // grid | uniform
  int d = 1;
  // dictionary
  std::string family = "orthonormal";  // orthonormal | haar | fourier | gaussian | heaviside
  int p_max = 64;
  // target
  std::string target_kind = "power_law";  // power_law | sparse | custom | zero | step
  double q = 1.5;
  double r = 0.1;
  double R = 1.0;
  int length = 0;  // 0 means p_max
  int sparsity = 5;
  double amplitude = 1.0;
  double jump = 0.5;
  std::vector<double> coefficients;
  // solver
  double tol = 1e-8;
  int max_iter = 100000;
  // experiment
  std::string name;
  int n_rep = 0;  // 0 means the experiment default
  std::vector<double> eps_grid;
  std::vector<int> p_grid;
  std::vector<double> t_grid;
  std::uint64_t seed = 1;
  int m = 1;
  double lambda_multiplier = 1.0;
  int n_targets = 4;
  int n_trials = 1000;
  int observe_factor = 2;

  bool is_sequence() const { return model_kind == "sequence"; }
  int target_length() const { return length > 0 ? length : p_max; }

  /// Every key with its resolved value, in a fixed order. Parsing the
  /// rendered entries reproduces this configuration.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
RunConfig config_from_entries(const std::vector<std::pair<std::string, std::string>>& entries);

/// Fills experiment-dependent defaults and checks cross-field constraints.
/// Throws ConfigError, RegimeError or UnknownExperimentError.
void resolve_and_validate(RunConfig& config);

}  // namespace dyadic_lasso
