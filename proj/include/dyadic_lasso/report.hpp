#pragma once

#include <filesystem>
#include <string>

#include "dyadic_lasso/config.hpp"
#include "dyadic_lasso/harness.hpp"

namespace dyadic_lasso {

inline constexpr const char* kVersion = "0.1.0";

/// Header line then one line per row, numbers printed with 17 significant digits.
std::string format_csv(const ExperimentReport& report);

/// Writes <out_dir>/<name>.csv and <out_dir>/manifest.json. Throws
/// std::ios_base::failure on I/O errors.
void write_report(const ExperimentReport& report, const RunConfig& config,
                  const std::filesystem::path& out_dir);

/// Reads the configuration echoed in a manifest.
RunConfig config_from_manifest(const std::filesystem::path& manifest);

}  // namespace dyadic_lasso
