#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "logstar/config.hpp"
#include "logstar/json_io.hpp"

using namespace logstar;

namespace {

const char* kMinimal =
    "J = 2\n"
    "lambda = 0.3, 0.2, 0.4\n"
    "mu = 1, 1, 1\n"
    "n = 100000\n"
    "replicas = 50\n"
    "seed = 7\n";

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  const auto cfg = parse_config(kMinimal);
  CHECK(cfg.params.J == 2);
  CHECK(cfg.params.lambda == std::vector<double>{0.3, 0.2, 0.4});
  CHECK(cfg.plan.n_values == std::vector<std::uint64_t>{100000});
  CHECK(cfg.plan.replicas == 50);
  CHECK(cfg.plan.master_seed == 7);
  CHECK(cfg.output_dir == "out");

  // default exponent grid: 0.02 steps across (0.02, 0.98)
  REQUIRE(cfg.plan.t_grid.size() == 49);
  CHECK(cfg.plan.t_grid.front() == doctest::Approx(0.02));
  CHECK(cfg.plan.t_grid.back() == doctest::Approx(0.98));

  // default fluid grid ends at min(0.9 * t_zero, 2) = 2 for this set
  REQUIRE_FALSE(cfg.plan.fluid_t_grid.empty());
  CHECK(cfg.plan.fluid_t_grid.front() == doctest::Approx(0.1));
  CHECK(cfg.plan.fluid_t_grid.back() == doctest::Approx(2.0));

  CHECK(cfg.plan.tolerances.exponent_tol == 0.05);
  CHECK(cfg.plan.tolerances.fluid_rel_tol == 0.15);
  CHECK(cfg.plan.tolerances.drift_rel_tol == 0.15);
  CHECK(cfg.plan.tolerances.confinement_quantile == 0.95);
}

TEST_CASE("config errors name the line and key") {
  SUBCASE("misspelled key") {
    try {
      parse_config("J = 2\nlamda = 1,1,1\nmu = 1,1,1\n");
      FAIL("expected config_error");
    } catch (const config_error& err) {
      CHECK(err.line() == 2);
      CHECK(std::string(err.what()).find("lamda") != std::string::npos);
    }
  }
  SUBCASE("wrong arity") {
    CHECK_THROWS_AS(parse_config("J = 2\nlambda = 1, 1\nmu = 1, 1, 1\n"),
                    config_error);
  }
  SUBCASE("n and n_list are mutually exclusive") {
    CHECK_THROWS_AS(
        parse_config(std::string(kMinimal) + "n_list = 10, 100\n"),
        config_error);
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_config("J = 2\nJ = 3\nlambda = 1,1,1\nmu = 1,1,1\n"),
                    config_error);
  }
  SUBCASE("missing mandatory key") {
    CHECK_THROWS_AS(parse_config("J = 2\nlambda = 1,1,1\n"), config_error);
  }
  SUBCASE("non-numeric value") {
    CHECK_THROWS_AS(
        parse_config("J = 2\nlambda = a,b,c\nmu = 1,1,1\n"), config_error);
  }
  SUBCASE("non-positive rate") {
    CHECK_THROWS_AS(
        parse_config("J = 2\nlambda = 0.3,0.2,0.4\nmu = 1,-1,1\n"),
        config_error);
  }
  SUBCASE("t_grid outside the open unit interval") {
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "t_grid = 0:0.5:1\n"),
                    config_error);
  }
}

TEST_CASE("ranges expand inclusively") {
  const auto cfg =
      parse_config(std::string(kMinimal) + "t_grid = 0.1:0.1:0.3\n");
  REQUIRE(cfg.plan.t_grid.size() == 3);
  CHECK(cfg.plan.t_grid[0] == doctest::Approx(0.1));
  CHECK(cfg.plan.t_grid[2] == doctest::Approx(0.3));
}

TEST_CASE("grids can be disabled with the literal none") {
  const auto cfg = parse_config(std::string(kMinimal) +
                                "t_grid = none\nfluid_t_grid = none\n");
  CHECK(cfg.plan.t_grid.empty());
  CHECK(cfg.plan.fluid_t_grid.empty());
}

TEST_CASE("n_list parses a sweep") {
  const auto cfg = parse_config(
      "J = 2\nlambda = 0.3,0.2,0.4\nmu = 1,1,1\nn_list = 1000, 10000, 100000\n");
  CHECK(cfg.plan.n_values ==
        std::vector<std::uint64_t>{1000, 10000, 100000});
}

TEST_CASE("comments and blank lines are ignored") {
  const auto cfg = parse_config(
      "# header\n\nJ = 2  # inline\nlambda = 0.3, 0.2, 0.4\nmu = 1, 1, 1\n");
  CHECK(cfg.params.J == 2);
}

TEST_CASE("trajectory CSV output is bit-stable") {
  ExperimentPlan plan;
  plan.params = {2, {0.3, 0.2, 0.4}, {1, 1, 1}};
  plan.n_values = {500};
  plan.replicas = 4;
  plan.t_grid = {0.2, 0.5};
  plan.master_seed = 13;

  const auto a = trajectories_csv(*run_ensemble(plan, 500).exponent);
  const auto b = trajectories_csv(*run_ensemble(plan, 500).exponent);
  CHECK(a == b);
  CHECK(a.starts_with("replica,t,node,count\n"));
  CHECK(a.find("0,0.20000000000000001,0,") != std::string::npos);
}

TEST_CASE("atomic writes leave no temp file behind") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "logstar_test_io";
  fs::remove_all(dir);
  const fs::path target = dir / "report.json";
  write_text_atomic(target, "{}\n");
  CHECK(fs::exists(target));
  CHECK_FALSE(fs::exists(dir / "report.json.tmp"));
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "{}\n");
  fs::remove_all(dir);
}

TEST_CASE("regime report JSON round-trips, infinities included") {
  const NetworkParams params{2, {0.3, 0.2, 0.4}, {1, 1, 1}};
  const auto report = regime(params);
  const auto j = to_json(report);
  CHECK(j.at("t_zero").is_number());
  CHECK(j.at("validity_horizon") == "inf");
  const auto parsed = regime_from_json(nlohmann::json::parse(j.dump()));
  CHECK(parsed == report);
}

TEST_CASE("verification report JSON round-trips") {
  ExperimentPlan plan;
  plan.params = {2, {0.3, 0.2, 0.4}, {1, 1, 1}};
  plan.n_values = {500};
  plan.replicas = 4;
  plan.t_grid = {0.15, 0.2, 0.3};
  plan.master_seed = 77;

  auto report = verify_all(plan);
  const auto parsed =
      verification_from_json(nlohmann::json::parse(to_json(report).dump()));
  CHECK(parsed.criteria == report.criteria);
  CHECK(parsed.regime == report.regime);
  CHECK(parsed.overall_pass == report.overall_pass);
}

TEST_CASE("martingale diagnostic serializes its three arrays") {
  MartingaleDiagnostic diag;
  diag.times = {0.1, 0.2};
  diag.residual = {0.0, 1e-3};
  diag.band = {0.0, 2e-3};
  const auto j = to_json(diag);
  CHECK(j.at("times").size() == 2);
  CHECK(j.at("residual")[1] == 1e-3);
  CHECK(j.at("band")[1] == 2e-3);
}
