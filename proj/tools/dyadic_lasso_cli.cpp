#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "dyadic_lasso/experiments.hpp"
#include "dyadic_lasso/report.hpp"
#include "dyadic_lasso/solver.hpp"

namespace dl = dyadic_lasso;

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kUnknownExperiment = 3,
  kRegime = 4,
  kSolver = 5,
  kIo = 6,
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error\n"
    "  2  invalid configuration or parameter\n"
    "  3  unknown experiment\n"
    "  4  regime violation (signal-to-noise or smoothness hypothesis)\n"
    "  5  solver failure\n"
    "  6  file I/O error\n";

int fail(int code, const std::string& message) {
  std::cerr << "dyadic-lasso: " << message << "\n";
  return code;
}

void list_experiments() {
  for (const auto& info : dl::experiment_catalog()) {
    std::printf("%-18s %-40s %s\n", info.name.c_str(), info.verifies.c_str(),
                info.description.c_str());
  }
}

int run(const std::string& config_path, const std::string& out_dir, std::optional<long long> seed,
        int threads) {
  dl::RunConfig config;
  const std::filesystem::path path(config_path);
  if (path.extension() == ".json") {
    config = dl::config_from_manifest(path);
  } else {
    config = dl::load_config(config_path);
  }
  if (seed) {
    if (*seed < 0) throw dl::ConfigError("--seed must be >= 0");
    config.seed = static_cast<std::uint64_t>(*seed);
  }
  dl::resolve_and_validate(config);
  const dl::ExperimentReport report = dl::run_experiment(config, threads);
  dl::write_report(report, config, out_dir);
  std::cout << "wrote " << (std::filesystem::path(out_dir) / (report.name + ".csv")).string()
            << " (" << report.rows.size() << " rows, " << report.wall_time << " s)\n";
  for (const auto& [k, v] : report.summary) std::cout << "  " << k << " = " << v << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selected-Lasso Monte Carlo experiments"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  std::optional<long long> seed;
  int threads = 1;
  app.add_option("--seed", seed, "Override experiment.seed");
  app.add_option("--threads", threads, "Worker threads for replications")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  std::string out_dir;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config (or manifest.json)");
  run_cmd->add_option("config", config_path, "Config file or manifest.json")->required();
  run_cmd->add_option("out_dir", out_dir, "Output directory")->required();
  run_cmd->fallthrough();
  auto* list_cmd = app.add_subcommand("list-experiments", "List experiments and what they check");
  list_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*list_cmd) {
    list_experiments();
    return kOk;
  }
  try {
    return run(config_path, out_dir, seed, threads);
  } catch (const dl::UnknownExperimentError& e) {
    return fail(kUnknownExperiment, e.what());
  } catch (const dl::RegimeError& e) {
    return fail(kRegime, e.what());
  } catch (const dl::NonConvergenceError& e) {
    return fail(kSolver, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(kIo, e.what());
  } catch (const dl::Error& e) {
    return fail(kInvalid, e.what());
  }
}
