#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logstar/model.hpp"
#include "logstar/sim.hpp"
#include "logstar/theory.hpp"

namespace logstar {

struct Tolerances {
  double exponent_tol = 0.05;
  double fluid_rel_tol = 0.15;
  double drift_rel_tol = 0.15;
  double confinement_quantile = 0.95;
};

// Exponent-scale comparisons carry an explicit 1/log N correction so the
// sweep across N, not any single run, carries the convergence claim.
inline constexpr double kExponentLogCorrection = 2.0;

double exponent_band(const Tolerances& tol, std::uint64_t n);

struct ExperimentPlan {
  NetworkParams params;
  std::vector<std::uint64_t> n_values;
  std::size_t replicas = 50;
  std::vector<double> t_grid;        // exponent scale, values in (0, 1)
  std::vector<double> fluid_t_grid;  // fluid scale, values > 0
  std::uint64_t master_seed = 1;
  Tolerances tolerances;
  std::uint64_t max_events = 100'000'000;
  bool allow_truncated = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Raw per-replica counts at every grid point plus derived statistics.
// Aggregations always run in replica order, so reports do not depend on how
// many worker threads produced the trajectories.
struct EnsembleStats {
  std::uint64_t n = 0;
  std::size_t replicas = 0;
  int nodes = 0;
  std::vector<double> t_grid;
  std::vector<double> sample_times;
  std::vector<std::int64_t> counts;  // [replica][grid][node], flattened
  std::vector<std::size_t> truncated_replicas;

  std::int64_t count(std::size_t replica, std::size_t k, int node) const {
    return counts[(replica * t_grid.size() + k) * nodes + node];
  }
  double mean_count(int node, std::size_t k) const;
  double se_count(int node, std::size_t k) const;
  double mean_exponent(int node, std::size_t k) const;  // mean of Y_j
  double se_exponent(int node, std::size_t k) const;
  double quantile_count(int node, std::size_t k, double q) const;
  double quantile_exponent(int node, std::size_t k, double q) const;
  double mean_product(int first_node, std::size_t k) const;
};

struct EnsembleResult {
  std::optional<EnsembleStats> exponent;  // sampled at times N^t
  std::optional<EnsembleStats> fluid;     // sampled at times N*t
};

// `replicas` seeded runs from the canonical initial state (N, 0, ..., 0),
// one pass per non-empty grid. Truncated replicas abort the run unless the
// plan opts into partial results.
EnsembleResult run_ensemble(const ExperimentPlan& plan, std::uint64_t n);

enum class Comparison { Relative, Absolute, UpperBound, LowerBound, Factor };

std::string to_string(Comparison c);
Comparison comparison_from_string(const std::string& s);

// One verified prediction: never a bare pass/fail, always the numbers.
struct CriterionEntry {
  std::string id;
  std::uint64_t n = 0;
  double predicted = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::Relative;
  double error = 0.0;  // scalar deviation, reused by the convergence sweep
  bool pass = false;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;

  bool operator==(const CriterionEntry&) const = default;
};

CriterionEntry make_entry(std::string id, std::uint64_t n, double predicted,
                          double measured, double tolerance, Comparison cmp,
                          std::size_t replicas, std::uint64_t seed);

// Exponent-scale checks: Y_j bands against the piecewise-linear profile,
// prefactors on decreasing/rising segments (factor-2), sub-polynomial checks
// with (log N)^2 confinement after each vanish time, per-epoch product
// invariants, and the central node pinned near N early in the window.
std::vector<CriterionEntry> verify_exponent_profile(const ExperimentPlan& plan,
                                                    std::uint64_t n);

// Fluid-scale checks: every scaled coordinate against its affine limit, with
// (log N)^3-scaled coordinates required to be numerically null.
std::vector<CriterionEntry> verify_fluid(const ExperimentPlan& plan,
                                         std::uint64_t n);

// Stable parameters: recurrence of the empty state and stationarity of the
// time-average over horizon halves. Unstable parameters: positive linear
// growth of the total queue at three standard errors.
std::vector<CriterionEntry> verify_stability(const ExperimentPlan& plan);

struct VanishTimeStats {
  std::vector<int> nodes;                   // tracked nodes (vanish time <= 1)
  std::vector<std::vector<double>> theta0;  // per node, per replica; +inf if unseen
  std::vector<double> quantile;             // confinement_quantile of theta0
  std::vector<double> bound;                // N^{e_j} log N (1 + margin)
  std::vector<CriterionEntry> entries;
};

// First return of each vanishing node to 0 after its peak time N^{b_j}.
VanishTimeStats vanish_time_statistics(const ExperimentPlan& plan,
                                       std::uint64_t n, double margin = 1.0);

struct VerificationReport {
  NetworkParams params;
  RegimeReport regime;
  std::uint64_t master_seed = 0;
  std::vector<CriterionEntry> criteria;
  bool overall_pass = false;
};

// Every section at every planned N (stability once; it has its own horizons).
VerificationReport verify_all(const ExperimentPlan& plan);

struct SweepRow {
  std::uint64_t n = 0;
  std::string id;
  double error = 0.0;
};

struct SweepReport {
  std::vector<std::uint64_t> n_values;
  std::vector<SweepRow> rows;
  std::vector<std::pair<std::string, bool>> id_verdicts;
  bool overall_pass = false;
};

// Reruns the exponent (and, if planned, fluid) checks at each N and flags
// error sequences that fail to shrink, allowing one inversion for noise.
// Requires at least three N values spanning two decades.
SweepReport convergence_sweep(const ExperimentPlan& plan);

}  // namespace logstar
