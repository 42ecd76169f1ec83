// Command-line surface: closed-form prediction, trajectory export,
// verification against the predictions, and the convergence sweep.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration/IO error.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "logstar/config.hpp"
#include "logstar/json_io.hpp"
#include "logstar/oracles.hpp"

namespace {

constexpr const char* kVersion = "logstar 1.0.0";

bool use_color() {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return isatty(fileno(stdout)) != 0;
}

std::string pass_tag(bool pass) {
  if (!use_color()) return pass ? "[PASS]" : "[FAIL]";
  return pass ? "\033[32m[PASS]\033[0m" : "\033[31m[FAIL]\033[0m";
}

void print_entry(const logstar::CriterionEntry& e) {
  std::cout << pass_tag(e.pass) << ' ' << e.id;
  if (e.n > 0) std::cout << " @N=" << e.n;
  std::cout << "  measured=" << logstar::format_double(e.measured)
            << "  predicted=" << logstar::format_double(e.predicted)
            << "  tol=" << logstar::format_double(e.tolerance) << " ("
            << logstar::to_string(e.comparison) << ")\n";
}

logstar::ParsedConfig load_with_threads(const std::string& path,
                                        unsigned threads) {
  auto cfg = logstar::load_config(path);
  cfg.plan.threads = threads;
  return cfg;
}

int run_predict(const std::string& config_path) {
  const auto cfg = logstar::load_config(config_path);
  auto report = logstar::to_json(logstar::regime(cfg.params));
  report["exponent_profile"] =
      logstar::to_json(logstar::exponent_profile(cfg.params));
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_simulate(const std::string& config_path, unsigned threads) {
  const auto cfg = load_with_threads(config_path, threads);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  for (const std::uint64_t n : cfg.plan.n_values) {
    const auto result = logstar::run_ensemble(cfg.plan, n);
    const fs::path dir(cfg.output_dir);
    std::cout << "N=" << n << ": wrote";
    if (result.exponent) {
      logstar::write_text_atomic(
          dir / ("trajectories_exponent_N" + std::to_string(n) + ".csv"),
          logstar::trajectories_csv(*result.exponent));
      std::cout << ' '
                << result.exponent->t_grid.size() * result.exponent->replicas
                << " exponent-scale samples";
    }
    if (result.fluid) {
      logstar::write_text_atomic(
          dir / ("trajectories_fluid_N" + std::to_string(n) + ".csv"),
          logstar::trajectories_csv(*result.fluid));
      std::cout << (result.exponent ? " and " : " ")
                << result.fluid->t_grid.size() * result.fluid->replicas
                << " fluid-scale samples";
    }
    std::cout << " to " << cfg.output_dir << '\n';
  }
  return 0;
}

int run_verify(const std::string& config_path, unsigned threads) {
  const auto cfg = load_with_threads(config_path, threads);
  const auto report = logstar::verify_all(cfg.plan);

  for (const auto& entry : report.criteria) print_entry(entry);
  std::cout << (report.overall_pass ? "overall: PASS" : "overall: FAIL")
            << '\n';

  const std::filesystem::path out =
      std::filesystem::path(cfg.output_dir) / "verification_report.json";
  logstar::write_text_atomic(out, logstar::to_json(report).dump(2) + "\n");
  std::cout << "report written to " << out.string() << '\n';
  return report.overall_pass ? 0 : 1;
}

int run_sweep(const std::string& config_path, unsigned threads) {
  const auto cfg = load_with_threads(config_path, threads);
  const auto report = logstar::convergence_sweep(cfg.plan);

  std::cout << "N values:";
  for (auto n : report.n_values) std::cout << ' ' << n;
  std::cout << '\n';
  for (const auto& [id, ok] : report.id_verdicts) {
    std::cout << pass_tag(ok) << ' ' << id << "  errors:";
    for (const auto& row : report.rows) {
      if (row.id == id) {
        std::cout << ' ' << logstar::format_double(row.error);
      }
    }
    std::cout << '\n';
  }
  std::cout << (report.overall_pass ? "overall: PASS" : "overall: FAIL")
            << '\n';

  const std::filesystem::path out =
      std::filesystem::path(cfg.output_dir) / "sweep_report.json";
  logstar::write_text_atomic(out, logstar::to_json(report).dump(2) + "\n");
  std::cout << "report written to " << out.string() << '\n';
  return report.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star-network simulator with logarithmic capacity sharing"};
  app.set_version_flag("--version",
                       std::string(kVersion) + " (rng: " +
                           std::string(logstar::Rng::kAlgorithm) +
                           ", splitmix64-derived replica seeds)");
  app.require_subcommand(1);

  std::string config_path;
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for replica ensembles (0 = auto)");

  auto* predict = app.add_subcommand(
      "predict", "print the closed-form regime report as JSON");
  predict->add_option("config", config_path)->required();

  auto* simulate = app.add_subcommand(
      "simulate", "write per-replica trajectory CSVs for both time scales");
  simulate->add_option("config", config_path)->required();

  auto* verify = app.add_subcommand(
      "verify", "run the ensemble checks and write a verification report");
  verify->add_option("config", config_path)->required();

  auto* sweep = app.add_subcommand(
      "sweep", "rerun the checks across all N values and test convergence");
  sweep->add_option("config", config_path)->required();

  auto* oracle = app.add_subcommand("oracle", "closed-form reference bounds");
  auto* kingman = oracle->add_subcommand(
      "kingman", "supremum tail bound for a subcritical birth-death walk");
  double lambda = 0.0, mu = 0.0, window = 0.0;
  std::int64_t level = 0;
  kingman->add_option("--lambda", lambda)->required();
  kingman->add_option("--mu", mu)->required();
  kingman->add_option("--x", level)->required();
  kingman->add_option("--T", window);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*predict) return run_predict(config_path);
    if (*simulate) return run_simulate(config_path, threads);
    if (*verify) return run_verify(config_path, threads);
    if (*sweep) return run_sweep(config_path, threads);
    if (*kingman) {
      const double value =
          window > 0.0 ? logstar::reflected_sup_bound(lambda, mu, window, level)
                       : logstar::kingman_bound(lambda, mu, level);
      std::cout << logstar::format_double(value) << '\n';
      return 0;
    }
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
}
