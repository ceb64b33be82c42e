#include "dyadic_lasso/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "dyadic_lasso/errors.hpp"
#include "dyadic_lasso/experiments.hpp"

namespace dyadic_lasso {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key + ": expected a number, got '" + t + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key + ": expected an integer, got '" + t + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(key + ": value out of range");
  }
  return static_cast<int>(x);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class M>
Field text_field(M RunConfig::*member) {
  return {[member](RunConfig& c, const std::string&, const std::string& v) { c.*member = trim(v); },
          [member](const RunConfig& c) { return c.*member; }};
}

template <class M>
Field int_field(M RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = to_int(k, v);
          },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

Field real_field(double RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = to_double(k, v);
          },
          [member](const RunConfig& c) { return fmt(c.*member); }};
}

Field real_list(std::vector<double> RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            std::vector<double> xs;
            for (const auto& item : split_list(v)) xs.push_back(to_double(k, item));
            c.*member = std::move(xs);
          },
          [member](const RunConfig& c) { return join(c.*member); }};
}

Field int_list(std::vector<int> RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            std::vector<int> xs;
            for (const auto& item : split_list(v)) xs.push_back(to_int(k, item));
            c.*member = std::move(xs);
          },
          [member](const RunConfig& c) { return join(c.*member); }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"model.kind", text_field(&RunConfig::model_kind)},
      {"model.n", int_field(&RunConfig::n)},
      {"model.sigma", real_field(&RunConfig::sigma)},
      {"model.eps", real_field(&RunConfig::eps)},
      {"model.design", text_field(&RunConfig::design)},
      {"model.d", int_field(&RunConfig::d)},
      {"dictionary.family", text_field(&RunConfig::family)},
      {"dictionary.p_max", int_field(&RunConfig::p_max)},
      {"target.kind", text_field(&RunConfig::target_kind)},
      {"target.q", real_field(&RunConfig::q)},
      {"target.r", real_field(&RunConfig::r)},
      {"target.R", real_field(&RunConfig::R)},
      {"target.length", int_field(&RunConfig::length)},
      {"target.sparsity", int_field(&RunConfig::sparsity)},
      {"target.amplitude", real_field(&RunConfig::amplitude)},
      {"target.jump", real_field(&RunConfig::jump)},
      {"target.coefficients", real_list(&RunConfig::coefficients)},
      {"solver.tol", real_field(&RunConfig::tol)},
      {"solver.max_iter", int_field(&RunConfig::max_iter)},
      {"experiment.name", text_field(&RunConfig::name)},
      {"experiment.n_rep", int_field(&RunConfig::n_rep)},
      {"experiment.eps_grid", real_list(&RunConfig::eps_grid)},
      {"experiment.p_grid", int_list(&RunConfig::p_grid)},
      {"experiment.t_grid", real_list(&RunConfig::t_grid)},
      {"experiment.seed",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          const long long s = to_integer(k, v);
          if (s < 0) throw ConfigError(k + ": must be >= 0");
          c.seed = static_cast<std::uint64_t>(s);
        },
        [](const RunConfig& c) { return std::to_string(c.seed); }}},
      {"experiment.m", int_field(&RunConfig::m)},
      {"experiment.lambda_multiplier", real_field(&RunConfig::lambda_multiplier)},
      {"experiment.n_targets", int_field(&RunConfig::n_targets)},
      {"experiment.n_trials", int_field(&RunConfig::n_trials)},
      {"experiment.observe_factor", int_field(&RunConfig::observe_factor)},
  };
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& [k, f] : fields())
    if (k == key) return f;
  throw ConfigError("unknown configuration key '" + key + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options)
    if (v == o) return true;
  return false;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, f] : fields()) out.emplace_back(k, f.get(*this));
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    field(key).set(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig config_from_entries(const std::vector<std::pair<std::string, std::string>>& entries) {
  RunConfig cfg;
  for (const auto& [k, v] : entries) field(k).set(cfg, k, v);
  return cfg;
}

void resolve_and_validate(RunConfig& c) {
  if (c.name.empty()) throw ConfigError("experiment.name is required");
  find_experiment(c.name);

  require(one_of(c.model_kind, {"sequence", "regression"}),
          "model.kind must be 'sequence' or 'regression'");
  require(one_of(c.design, {"grid", "uniform"}), "model.design must be 'grid' or 'uniform'");
  require(one_of(c.family, {"orthonormal", "haar", "fourier", "gaussian", "heaviside"}),
          "dictionary.family must be one of orthonormal, haar, fourier, gaussian, heaviside");
  require(one_of(c.target_kind, {"power_law", "sparse", "custom", "zero", "step"}),
          "target.kind must be one of power_law, sparse, custom, zero, step");

  require(c.n >= 1, "model.n must be >= 1");
  require(c.sigma > 0.0, "model.sigma must be > 0");
  require(c.eps > 0.0, "model.eps must be > 0");
  require(c.d >= 1, "model.d must be >= 1");
  require(c.p_max >= 1, "dictionary.p_max must be >= 1");
  require(c.q > 1.0 && c.q < 2.0,
          "target.q = " + fmt(c.q) + " must lie in the open interval (1, 2)");
  require(c.r > 0.0, "target.r must be > 0");
  require(c.R > 0.0, "target.R must be > 0");
  require(c.length >= 0, "target.length must be >= 1 (or 0 for dictionary.p_max)");
  require(c.tol > 0.0, "solver.tol must be > 0");
  require(c.max_iter >= 1, "solver.max_iter must be >= 1");
  require(c.m >= 1, "experiment.m must be >= 1");
  require(c.lambda_multiplier > 0.0, "experiment.lambda_multiplier must be > 0");
  require(c.n_targets >= 1, "experiment.n_targets must be >= 1");
  require(c.n_trials >= 1, "experiment.n_trials must be >= 1");
  require(c.observe_factor >= 1, "experiment.observe_factor must be >= 1");

  if (c.name == "rates" && c.length == 0) c.length = 4096;
  if (c.n_rep == 0) c.n_rep = c.name == "delta-m" ? 100000 : 200;
  require(c.n_rep >= 2, "experiment.n_rep must be >= 2");
  if (c.eps_grid.empty()) {
    if (c.name == "rates") {
      for (int k = 3; k <= 9; ++k) c.eps_grid.push_back(std::ldexp(1.0, -k));
    } else {
      c.eps_grid.push_back(c.eps);
    }
  }
  for (double e : c.eps_grid) require(e > 0.0, "experiment.eps_grid entries must be > 0");
  if (c.p_grid.empty()) c.p_grid.push_back(c.p_max);
  for (int p : c.p_grid) {
    require(p >= 1 && p <= c.p_max, "experiment.p_grid entries must lie in [1, dictionary.p_max]");
  }
  if (c.t_grid.empty()) c.t_grid = {0.05, 0.1, 0.5, 1.0};
  for (double t : c.t_grid) require(t > 0.0, "experiment.t_grid entries must be > 0");

  if (c.target_kind == "sparse") {
    require(c.sparsity >= 1 && c.sparsity <= c.target_length(),
            "target.sparsity must lie in [1, target.length]");
  }
  if (c.target_kind == "custom") require(!c.coefficients.empty(), "target.coefficients is empty");

  const bool uses_dictionary =
      one_of(c.name, {"fit", "select", "oracle-ratio", "selected-oracle", "delta-m"});
  if (uses_dictionary && c.is_sequence()) {
    require(c.family == "orthonormal",
            "the sequence model uses dictionary.family = orthonormal");
    require(c.target_kind != "step", "target.kind = step needs model.kind = regression");
  } else if (uses_dictionary) {
    if (c.family == "orthonormal") {
      require(c.n == c.p_max,
              "dictionary.family = orthonormal needs model.n equal to dictionary.p_max");
    }
    if (c.family == "haar") {
      require(c.n >= 2 && (c.n & (c.n - 1)) == 0, "dictionary.family = haar needs model.n a power of two");
    }
    if (one_of(c.family, {"haar", "fourier"})) {
      require(c.p_max <= c.n, "dictionary.p_max must not exceed model.n for this family");
    }
    if (c.family == "heaviside") require(c.d <= 2, "dictionary.family = heaviside needs model.d in {1, 2}");
    if (c.family != "heaviside" && c.design == "grid") {
      require(c.d == 1, "model.design = grid is one-dimensional; use model.design = uniform for d > 1");
    }
  }

  if (c.name == "packing") require(c.d <= 2, "packing needs model.d in {1, 2}");
  if (c.name == "rates") {
    require(c.is_sequence(), "rates runs in the sequence model (model.kind = sequence)");
    require(c.target_kind == "power_law", "rates needs target.kind = power_law");
    const double floor_snr = std::max(std::numbers::e, c.q / (4.0 * c.r));
    for (double e : c.eps_grid) {
      if (c.R / e < floor_snr) {
        throw RegimeError("rates: eps = " + fmt(e) + " gives R/eps = " + fmt(c.R / e) +
                          ", below max(e, q/(4r)) = " + fmt(floor_snr) + "; use smaller eps");
      }
    }
  }
  if (c.name == "minimax-hypercube") {
    const double u = 1.0 / c.r - c.q * (1.0 + 1.0 / (2.0 * c.r));
    if (!(c.r < 1.0 / c.q - 0.5) || !(u > 0.0)) {
      throw RegimeError("minimax-hypercube needs target.r < 1/q - 1/2 = " + fmt(1.0 / c.q - 0.5) +
                        " (got r = " + fmt(c.r) + ")");
    }
    const double floor_snr = std::max(std::exp(2.0), u * u);
    if (c.R / c.eps < floor_snr) {
      throw RegimeError("minimax-hypercube needs R/eps >= max(e^2, u^2) = " + fmt(floor_snr) +
                        " (got " + fmt(c.R / c.eps) + ")");
    }
  }
}

}  // namespace dyadic_lasso
