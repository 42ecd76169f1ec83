#include "logstar/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace logstar {

namespace {

struct RawEntry {
  int line = 0;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const RawEntry& e, const std::string& key) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(e.value, &used);
  } catch (const std::exception&) {
    throw config_error(e.line, "key '" + key + "': not a number: " + e.value);
  }
  if (used != e.value.size()) {
    throw config_error(e.line, "key '" + key + "': trailing characters in '" +
                                   e.value + "'");
  }
  return value;
}

std::uint64_t parse_uint(const RawEntry& e, const std::string& key) {
  const double v = parse_real(e, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) {
    throw config_error(e.line,
                       "key '" + key + "': expected a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(const RawEntry& e, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_real({e.line, trim(item)}, key));
  }
  if (out.empty()) {
    throw config_error(e.line, "key '" + key + "': empty list");
  }
  return out;
}

// Ranges are written start:step:end, end inclusive up to rounding.
std::vector<double> parse_range(const RawEntry& e, const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) {
    throw config_error(e.line,
                       "key '" + key + "': expected start:step:end");
  }
  const double start = parse_real({e.line, parts[0]}, key);
  const double step = parse_real({e.line, parts[1]}, key);
  const double end = parse_real({e.line, parts[2]}, key);
  if (!(step > 0.0) || !(end >= start)) {
    throw config_error(e.line, "key '" + key + "': bad range");
  }
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = start + step * k;
    if (t > end + 1e-9 * step) break;
    out.push_back(t);
  }
  return out;
}

std::vector<double> range(double start, double step, double end) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = start + step * k;
    if (t > end + 1e-9 * step) break;
    out.push_back(t);
  }
  return out;
}

const char* const kKnownKeys[] = {
    "J",          "lambda",       "mu",
    "n",          "n_list",       "replicas",
    "seed",       "t_grid",       "fluid_t_grid",
    "exponent_tol", "fluid_rel_tol", "drift_rel_tol",
    "confinement_quantile", "output_dir",
};

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  std::map<std::string, RawEntry> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error(line_no, "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw config_error(line_no, "unknown key '" + key + "'");
    if (entries.count(key)) {
      throw config_error(line_no, "duplicate key '" + key + "'");
    }
    if (value.empty()) throw config_error(line_no, "key '" + key + "': empty value");
    entries[key] = {line_no, value};
  }

  for (const char* mandatory : {"J", "lambda", "mu"}) {
    if (!entries.count(mandatory)) {
      throw config_error(0, std::string("missing mandatory key '") +
                                mandatory + "'");
    }
  }
  if (entries.count("n") && entries.count("n_list")) {
    throw config_error(entries["n_list"].line,
                       "give either 'n' or 'n_list', not both");
  }

  ParsedConfig cfg;
  cfg.params.J = static_cast<int>(parse_uint(entries["J"], "J"));
  cfg.params.lambda = parse_list(entries["lambda"], "lambda");
  cfg.params.mu = parse_list(entries["mu"], "mu");
  const std::size_t expected = static_cast<std::size_t>(cfg.params.J) + 1;
  if (cfg.params.lambda.size() != expected) {
    throw config_error(entries["lambda"].line,
                       "lambda must have J+1 = " + std::to_string(expected) +
                           " entries, got " +
                           std::to_string(cfg.params.lambda.size()));
  }
  if (cfg.params.mu.size() != expected) {
    throw config_error(entries["mu"].line,
                       "mu must have J+1 = " + std::to_string(expected) +
                           " entries, got " +
                           std::to_string(cfg.params.mu.size()));
  }
  try {
    validate_params(cfg.params, false);
  } catch (const param_error& err) {
    throw config_error(entries["lambda"].line, err.what());
  }

  cfg.plan.params = cfg.params;
  if (entries.count("n")) {
    cfg.plan.n_values = {parse_uint(entries["n"], "n")};
  } else if (entries.count("n_list")) {
    std::stringstream ss(entries["n_list"].value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      cfg.plan.n_values.push_back(
          parse_uint({entries["n_list"].line, trim(item)}, "n_list"));
    }
    if (cfg.plan.n_values.empty()) {
      throw config_error(entries["n_list"].line, "n_list: empty list");
    }
  } else {
    cfg.plan.n_values = {100000};
  }

  if (entries.count("replicas")) {
    cfg.plan.replicas =
        static_cast<std::size_t>(parse_uint(entries["replicas"], "replicas"));
  }
  if (entries.count("seed")) {
    cfg.plan.master_seed = parse_uint(entries["seed"], "seed");
  }
  // Either grid may be disabled outright with the literal `none`; verify
  // then skips the corresponding sections (a plan with both disabled checks
  // stability alone).
  if (entries.count("t_grid") && entries["t_grid"].value == "none") {
    cfg.plan.t_grid.clear();
  } else {
    cfg.plan.t_grid = entries.count("t_grid")
                          ? parse_range(entries["t_grid"], "t_grid")
                          : range(0.02, 0.02, 0.98);
  }
  for (double t : cfg.plan.t_grid) {
    if (!(t > 0.0) || !(t < 1.0)) {
      throw config_error(entries.count("t_grid") ? entries["t_grid"].line : 0,
                         "t_grid values must lie strictly inside (0, 1)");
    }
  }

  if (entries.count("fluid_t_grid") &&
      entries["fluid_t_grid"].value == "none") {
    cfg.plan.fluid_t_grid.clear();
  } else if (entries.count("fluid_t_grid")) {
    cfg.plan.fluid_t_grid =
        parse_range(entries["fluid_t_grid"], "fluid_t_grid");
  } else {
    // Default fluid window: up to 90% of the predicted emptying time,
    // capped at 2; falls back to the cap when the regime analysis does not
    // apply to these parameters.
    double end = 2.0;
    try {
      const RegimeReport rr = regime(cfg.params);
      if (std::isfinite(rr.t_zero)) end = std::min(2.0, 0.9 * rr.t_zero);
    } catch (const std::exception&) {
    }
    cfg.plan.fluid_t_grid = range(0.1, 0.1, end);
    if (cfg.plan.fluid_t_grid.empty()) cfg.plan.fluid_t_grid = {end};
  }

  if (entries.count("exponent_tol")) {
    cfg.plan.tolerances.exponent_tol =
        parse_real(entries["exponent_tol"], "exponent_tol");
  }
  if (entries.count("fluid_rel_tol")) {
    cfg.plan.tolerances.fluid_rel_tol =
        parse_real(entries["fluid_rel_tol"], "fluid_rel_tol");
  }
  if (entries.count("drift_rel_tol")) {
    cfg.plan.tolerances.drift_rel_tol =
        parse_real(entries["drift_rel_tol"], "drift_rel_tol");
  }
  if (entries.count("confinement_quantile")) {
    cfg.plan.tolerances.confinement_quantile =
        parse_real(entries["confinement_quantile"], "confinement_quantile");
  }
  if (entries.count("output_dir")) {
    cfg.output_dir = entries["output_dir"].value;
  }
  return cfg;
}

ParsedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace logstar
