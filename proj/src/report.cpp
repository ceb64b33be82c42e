#include "dyadic_lasso/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dyadic_lasso {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace

std::string format_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.header.size(); ++i) {
    if (i) out += ',';
    out += report.header[i];
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_report(const ExperimentReport& report, const RunConfig& config,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / (report.name + ".csv"), format_csv(report));

  nlohmann::ordered_json manifest;
  manifest["experiment"] = report.name;
  manifest["version"] = kVersion;
  manifest["seed"] = report.seed;
  manifest["wall_time"] = report.wall_time;
  manifest["csv"] = report.name + ".csv";
  manifest["columns"] = report.header;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.entries()) cfg[k] = v;
  manifest["config"] = cfg;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.summary) summary[k] = v;
  manifest["summary"] = summary;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

RunConfig config_from_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read manifest " + path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!manifest.contains("config") || !manifest["config"].is_object()) {
    throw ConfigError("manifest " + path.string() + " has no config object");
  }
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [k, v] : manifest["config"].items()) {
    if (!v.is_string()) throw ConfigError("manifest config value for " + k + " must be a string");
    entries.emplace_back(k, v.get<std::string>());
  }
  return config_from_entries(entries);
}

}  // namespace dyadic_lasso
