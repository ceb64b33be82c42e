#pragma once

#include <string>
#include <vector>

#include "dyadic_lasso/config.hpp"
#include "dyadic_lasso/harness.hpp"

namespace dyadic_lasso {

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::string verifies;
  /// Column order of the experiment's CSV.
  std::vector<std::string> columns;
};

const std::vector<ExperimentInfo>& experiment_catalog();
/// Throws UnknownExperimentError.
const ExperimentInfo& find_experiment(const std::string& name);

/// Builds the problem, dictionary and target described by a validated
/// configuration. Sequence-model problems ignore eps in favour of the
/// argument; regression problems set sigma = eps sqrt(n).
Problem make_problem(const RunConfig& config, double eps);

/// Runs a validated configuration.
ExperimentReport run_experiment(const RunConfig& config, int threads = 1);

}  // namespace dyadic_lasso
