#pragma once

#include <filesystem>
#include <string>

#include "logstar/harness.hpp"

namespace logstar {

class config_error : public std::runtime_error {
 public:
  config_error(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedConfig {
  NetworkParams params;
  ExperimentPlan plan;
  std::string output_dir = "out";
};

// Flat key=value format, '#' comments, one key per line. Keys:
//   J, lambda, mu           mandatory; lambda/mu are comma-separated J+1 reals
//   n | n_list              scaling parameter(s); default 100000
//   replicas, seed          default 50 and 1
//   t_grid, fluid_t_grid    start:step:end ranges
//   exponent_tol, fluid_rel_tol, drift_rel_tol, confinement_quantile
//   output_dir
// Unknown and duplicate keys are errors; nothing is silently ignored.
ParsedConfig parse_config(const std::string& text);

ParsedConfig load_config(const std::filesystem::path& path);

}  // namespace logstar
