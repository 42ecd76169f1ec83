#include "logstar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace logstar {

namespace {

// Stream salts keep the exponent, fluid, stability and vanish-time passes on
// disjoint seed streams, per scaling parameter.
enum StreamKind : std::uint64_t {
  kStreamExponent = 1,
  kStreamFluid = 2,
  kStreamStability = 3,
  kStreamVanish = 4,
};

std::uint64_t stream_salt(StreamKind kind, std::uint64_t n) {
  return mix64((static_cast<std::uint64_t>(kind) << 56) ^ n);
}

// Grid windows stay this far away from profile breakpoints.
constexpr double kProfileMargin = 0.02;

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          body(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

QueueState canonical_initial_state(const NetworkParams& params,
                                   std::uint64_t n) {
  QueueState init;
  init.counts.assign(params.node_count(), 0);
  init.counts[0] = static_cast<std::int64_t>(n);
  return init;
}

void check_grid(const std::vector<double>& grid, double lo, double hi,
                const char* name) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string(name) + " is empty");
  }
  double prev = lo;
  for (double t : grid) {
    if (!(t > prev) || !(t < hi)) {
      throw std::invalid_argument(std::string(name) +
                                  " must be strictly increasing inside its "
                                  "domain");
    }
    prev = t;
  }
}

EnsembleStats run_pass(const ExperimentPlan& plan, std::uint64_t n,
                       StreamKind kind, const std::vector<double>& t_grid,
                       const std::vector<double>& times) {
  if (plan.replicas < 2) {
    throw std::invalid_argument("at least two replicas are required");
  }
  const NetworkParams params = validate_params(plan.params, false);
  const QueueState init = canonical_initial_state(params, n);

  EnsembleStats stats;
  stats.n = n;
  stats.replicas = plan.replicas;
  stats.nodes = params.node_count();
  stats.t_grid = t_grid;
  stats.sample_times = times;
  stats.counts.assign(plan.replicas * t_grid.size() * stats.nodes, 0);

  const std::uint64_t salt = stream_salt(kind, n);
  std::vector<std::uint8_t> truncated(plan.replicas, 0);

  SimConfig base;
  base.horizon = times.back();
  base.max_events = plan.max_events;
  base.sample_times = times;

  parallel_for(plan.replicas, plan.threads, [&](std::size_t r) {
    SimConfig cfg = base;
    cfg.seed = replica_seed(plan.master_seed, salt, r);
    const Trajectory traj = simulate(params, init, cfg);
    truncated[r] = traj.truncated ? 1 : 0;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
      for (int j = 0; j < stats.nodes; ++j) {
        stats.counts[(r * t_grid.size() + k) * stats.nodes + j] =
            traj.samples[k].second.counts[j];
      }
    }
  });

  for (std::size_t r = 0; r < plan.replicas; ++r) {
    if (truncated[r]) stats.truncated_replicas.push_back(r);
  }
  if (!stats.truncated_replicas.empty() && !plan.allow_truncated) {
    std::ostringstream msg;
    msg << "event budget exhausted before the horizon in "
        << stats.truncated_replicas.size() << " replica(s), first at index "
        << stats.truncated_replicas.front();
    throw std::runtime_error(msg.str());
  }
  return stats;
}

double relative_error(double predicted, double measured) {
  const double denom = std::max(std::abs(predicted), 1e-300);
  return std::abs(measured - predicted) / denom;
}

}  // namespace

double exponent_band(const Tolerances& tol, std::uint64_t n) {
  return tol.exponent_tol +
         kExponentLogCorrection / std::log(static_cast<double>(n));
}

double EnsembleStats::mean_count(int node, std::size_t k) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    sum += static_cast<double>(count(r, k, node));
  }
  return sum / static_cast<double>(replicas);
}

double EnsembleStats::se_count(int node, std::size_t k) const {
  const double m = mean_count(node, k);
  double sq = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    const double d = static_cast<double>(count(r, k, node)) - m;
    sq += d * d;
  }
  const double var = sq / static_cast<double>(replicas - 1);
  return std::sqrt(var / static_cast<double>(replicas));
}

double EnsembleStats::mean_exponent(int node, std::size_t k) const {
  const double log_n = std::log(static_cast<double>(n));
  double sum = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    sum += std::log1p(static_cast<double>(count(r, k, node))) / log_n;
  }
  return sum / static_cast<double>(replicas);
}

double EnsembleStats::se_exponent(int node, std::size_t k) const {
  const double log_n = std::log(static_cast<double>(n));
  const double m = mean_exponent(node, k);
  double sq = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    const double d =
        std::log1p(static_cast<double>(count(r, k, node))) / log_n - m;
    sq += d * d;
  }
  const double var = sq / static_cast<double>(replicas - 1);
  return std::sqrt(var / static_cast<double>(replicas));
}

double EnsembleStats::quantile_count(int node, std::size_t k, double q) const {
  if (!(q > 0.0) || !(q <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1]");
  }
  std::vector<std::int64_t> values(replicas);
  for (std::size_t r = 0; r < replicas; ++r) values[r] = count(r, k, node);
  std::sort(values.begin(), values.end());
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(replicas)));
  idx = idx == 0 ? 0 : idx - 1;
  return static_cast<double>(values[std::min(idx, replicas - 1)]);
}

double EnsembleStats::quantile_exponent(int node, std::size_t k,
                                        double q) const {
  // log(1+x)/log N is monotone, so quantiles commute with the transform.
  return std::log1p(quantile_count(node, k, q)) /
         std::log(static_cast<double>(n));
}

double EnsembleStats::mean_product(int first_node, std::size_t k) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    double prod = 1.0;
    for (int j = first_node; j < nodes; ++j) {
      prod *= static_cast<double>(count(r, k, j));
    }
    sum += prod;
  }
  return sum / static_cast<double>(replicas);
}

EnsembleResult run_ensemble(const ExperimentPlan& plan, std::uint64_t n) {
  if (plan.t_grid.empty() && plan.fluid_t_grid.empty()) {
    throw std::invalid_argument("both sampling grids are empty");
  }

  EnsembleResult result;
  if (!plan.t_grid.empty()) {
    check_grid(plan.t_grid, 0.0, 1.0, "t_grid");
    std::vector<double> times(plan.t_grid.size());
    for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
      times[k] = std::pow(static_cast<double>(n), plan.t_grid[k]);
    }
    result.exponent = run_pass(plan, n, kStreamExponent, plan.t_grid, times);
  }

  if (!plan.fluid_t_grid.empty()) {
    check_grid(plan.fluid_t_grid, 0.0, kInf, "fluid_t_grid");
    std::vector<double> fluid_times(plan.fluid_t_grid.size());
    for (std::size_t k = 0; k < plan.fluid_t_grid.size(); ++k) {
      fluid_times[k] = static_cast<double>(n) * plan.fluid_t_grid[k];
    }
    result.fluid =
        run_pass(plan, n, kStreamFluid, plan.fluid_t_grid, fluid_times);
  }
  return result;
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Relative: return "relative";
    case Comparison::Absolute: return "absolute";
    case Comparison::UpperBound: return "upper_bound";
    case Comparison::LowerBound: return "lower_bound";
    case Comparison::Factor: return "factor";
  }
  return "?";
}

Comparison comparison_from_string(const std::string& s) {
  if (s == "relative") return Comparison::Relative;
  if (s == "absolute") return Comparison::Absolute;
  if (s == "upper_bound") return Comparison::UpperBound;
  if (s == "lower_bound") return Comparison::LowerBound;
  if (s == "factor") return Comparison::Factor;
  throw std::invalid_argument("unknown comparison: " + s);
}

CriterionEntry make_entry(std::string id, std::uint64_t n, double predicted,
                          double measured, double tolerance, Comparison cmp,
                          std::size_t replicas, std::uint64_t seed) {
  CriterionEntry e;
  e.id = std::move(id);
  e.n = n;
  e.predicted = predicted;
  e.measured = measured;
  e.tolerance = tolerance;
  e.comparison = cmp;
  e.replicas = replicas;
  e.seed = seed;
  switch (cmp) {
    case Comparison::Relative:
      e.error = relative_error(predicted, measured);
      e.pass = e.error <= tolerance;
      break;
    case Comparison::Absolute:
      e.error = std::abs(measured - predicted);
      e.pass = e.error <= tolerance;
      break;
    case Comparison::UpperBound:
      e.error = std::max(0.0, measured - predicted);
      e.pass = measured <= predicted + tolerance;
      break;
    case Comparison::LowerBound:
      e.error = std::max(0.0, predicted - measured);
      e.pass = measured >= predicted + tolerance;
      break;
    case Comparison::Factor:
      if (measured > 0.0 && predicted > 0.0) {
        e.error = std::abs(std::log(measured / predicted));
        e.pass = e.error <= std::log(tolerance);
      } else {
        e.error = kInf;
        e.pass = false;
      }
      break;
  }
  return e;
}

std::vector<CriterionEntry> verify_exponent_profile(const ExperimentPlan& plan,
                                                    std::uint64_t n) {
  const NetworkParams params = validate_params(plan.params, true);
  const ExponentProfile profile = exponent_profile(params);
  const RegimeReport rr = regime(params);
  const int J = params.J;
  const double log_n = std::log(static_cast<double>(n));
  const double band = exponent_band(plan.tolerances, n);
  const std::uint64_t seed = plan.master_seed;

  check_grid(plan.t_grid, 0.0, 1.0, "t_grid");
  std::vector<double> times(plan.t_grid.size());
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    times[k] = std::pow(static_cast<double>(n), plan.t_grid[k]);
  }
  const EnsembleStats ens =
      run_pass(plan, n, kStreamExponent, plan.t_grid, times);

  std::vector<CriterionEntry> entries;
  auto id_of = [](const std::string& kind, int node, double t) {
    std::ostringstream s;
    s << "exponent." << kind;
    if (node >= 0) s << "/node=" << node;
    s << "/t=" << t;
    return s.str();
  };

  // The central node stays pinned near N only while N^t << N; keep the 2%
  // band to grid points with N^{1-t} >= 30.
  const double node0_cutoff = 1.0 - std::log(30.0) / log_n;

  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    const double t = plan.t_grid[k];

    if (t <= node0_cutoff) {
      entries.push_back(make_entry(
          id_of("node0_pinned", 0, t), n, 1.0,
          ens.mean_count(0, k) / static_cast<double>(n), 0.02,
          Comparison::Absolute, plan.replicas, seed));
    }

    for (int j = 1; j <= J; ++j) {
      entries.push_back(make_entry(
          id_of("exponent_band", j, t), n, profile.value(j, t),
          ens.mean_exponent(j, k), band, Comparison::Absolute, plan.replicas,
          seed));
    }

    // Epoch windows: while node `ell` decreases, nodes above it rise with a
    // frozen linear prefactor and the product of the live queues holds at
    // N^{alpha_ell}.
    for (int ell = 1; ell < J; ++ell) {
      const ProfileNode& pn = profile.at(ell);
      const double lo = pn.peak_time + kProfileMargin;
      const double hi = std::min(pn.vanish_time, 1.0) - kProfileMargin;
      if (t < lo - 1e-12 || t > hi + 1e-12) continue;

      const double scale = std::pow(static_cast<double>(n),
                                    -profile.value(ell, t));
      entries.push_back(make_entry(
          id_of("fall_prefactor", ell, t), n,
          equilibrium_product_constant(params, ell),
          ens.mean_count(ell, k) * scale, 2.0, Comparison::Factor,
          plan.replicas, seed));

      for (int j = ell + 1; j <= J; ++j) {
        entries.push_back(make_entry(
            id_of("rise_prefactor", j, t), n,
            params.mu[j] * (params.rho(j) - params.rho(ell)),
            ens.mean_count(j, k) / times[k], 2.0, Comparison::Factor,
            plan.replicas, seed));
      }

      const double product = ens.mean_product(ell, k);
      const double measured_exponent =
          product > 0.0 ? std::log(product) / log_n : -kInf;
      entries.push_back(make_entry(id_of("product_invariant", ell, t), n,
                                   rr.alpha[ell - 1], measured_exponent, band,
                                   Comparison::Absolute, plan.replicas, seed));
    }

    // Past its vanish time a queue is sub-polynomial and confined.
    for (int j = 1; j < J; ++j) {
      const double e_j = profile.at(j).vanish_time;
      if (e_j >= 1.0 || t < e_j + kProfileMargin) continue;
      entries.push_back(make_entry(id_of("vanished", j, t), n, 0.0,
                                   ens.mean_exponent(j, k), band,
                                   Comparison::UpperBound, plan.replicas,
                                   seed));
      entries.push_back(make_entry(
          id_of("confinement", j, t), n, log_n * log_n,
          ens.quantile_count(j, k, plan.tolerances.confinement_quantile), 0.0,
          Comparison::UpperBound, plan.replicas, seed));
    }
  }
  return entries;
}

std::vector<CriterionEntry> verify_fluid(const ExperimentPlan& plan,
                                         std::uint64_t n) {
  const NetworkParams params = validate_params(plan.params, true);
  check_grid(plan.fluid_t_grid, 0.0, kInf, "fluid_t_grid");

  std::vector<double> times(plan.fluid_t_grid.size());
  for (std::size_t k = 0; k < plan.fluid_t_grid.size(); ++k) {
    times[k] = static_cast<double>(n) * plan.fluid_t_grid[k];
  }
  const EnsembleStats ens =
      run_pass(plan, n, kStreamFluid, plan.fluid_t_grid, times);

  const double log_n = std::log(static_cast<double>(n));
  const double log_cubed = log_n * log_n * log_n;
  const double tol = plan.tolerances.fluid_rel_tol;

  std::vector<CriterionEntry> entries;
  for (std::size_t k = 0; k < plan.fluid_t_grid.size(); ++k) {
    const double t = plan.fluid_t_grid[k];
    const auto values = fluid_limit(params, t);
    for (int j = 0; j < params.node_count(); ++j) {
      std::ostringstream id;
      const FluidValue& fv = values[j];
      double measured = 0.0;
      switch (fv.scale) {
        case FluidScale::LinearN:
          measured = ens.mean_count(j, k) / static_cast<double>(n);
          id << "fluid.value/node=" << j << "/t=" << t;
          entries.push_back(make_entry(id.str(), n, fv.value, measured, tol,
                                       Comparison::Relative, plan.replicas,
                                       plan.master_seed));
          break;
        case FluidScale::PowerOfN:
          measured = ens.mean_count(j, k) /
                     std::pow(static_cast<double>(n), fv.exponent);
          id << "fluid.value/node=" << j << "/t=" << t;
          entries.push_back(make_entry(id.str(), n, fv.value, measured, tol,
                                       Comparison::Relative, plan.replicas,
                                       plan.master_seed));
          break;
        case FluidScale::LogCubed:
          measured = ens.mean_count(j, k) / log_cubed;
          id << "fluid.null/node=" << j << "/t=" << t;
          entries.push_back(make_entry(id.str(), n, 0.0, measured, tol,
                                       Comparison::UpperBound, plan.replicas,
                                       plan.master_seed));
          break;
      }
    }
  }
  return entries;
}

namespace {

// Integrates the total queue over horizon halves and counts entries into the
// all-empty state.
struct StabilityObserver {
  double half = 0.0;
  double first_half_area = 0.0;
  double second_half_area = 0.0;
  std::uint64_t empty_visits = 0;

  void segment(double t0, double t1, std::span<const std::int64_t> counts) {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    const double lo1 = std::min(t0, half), hi1 = std::min(t1, half);
    const double lo2 = std::max(t0, half), hi2 = std::max(t1, half);
    first_half_area += static_cast<double>(total) * std::max(0.0, hi1 - lo1);
    second_half_area += static_cast<double>(total) * std::max(0.0, hi2 - lo2);
  }
  void event(double, const Transition&, std::span<const std::int64_t> counts) {
    for (auto c : counts) {
      if (c != 0) return;
    }
    ++empty_visits;
  }
};

}  // namespace

std::vector<CriterionEntry> verify_stability(const ExperimentPlan& plan) {
  const NetworkParams params = validate_params(plan.params, false);
  const bool predicted_stable = stability(params);
  std::vector<CriterionEntry> entries;

  QueueState empty;
  empty.counts.assign(params.node_count(), 0);

  if (predicted_stable) {
    constexpr double kHorizon = 1e6;
    SimConfig cfg;
    cfg.seed = replica_seed(plan.master_seed, stream_salt(kStreamStability, 0),
                            0);
    cfg.horizon = kHorizon;
    cfg.max_events = plan.max_events;

    StabilityObserver obs;
    obs.half = kHorizon / 2.0;
    const Trajectory traj = simulate_observed(params, empty, cfg, obs);
    if (traj.truncated && !plan.allow_truncated) {
      throw std::runtime_error("stability run exhausted its event budget");
    }

    entries.push_back(make_entry("stability.recurrence", 0, 100.0,
                                 static_cast<double>(obs.empty_visits), 0.0,
                                 Comparison::LowerBound, 1, cfg.seed));
    const double avg1 = obs.first_half_area / obs.half;
    const double avg2 = obs.second_half_area / obs.half;
    entries.push_back(make_entry("stability.stationary_halves", 0, avg1, avg2,
                                 0.25, Comparison::Relative, 1, cfg.seed));
  } else {
    // Total queue sampled at ten horizons; least-squares growth slope must
    // clear zero by three standard errors.
    std::vector<double> horizons;
    for (int i = 1; i <= 10; ++i) horizons.push_back(1e4 * i);

    const std::size_t replicas = std::max<std::size_t>(plan.replicas, 8);
    std::vector<double> slopes(replicas, 0.0);
    const std::uint64_t salt = stream_salt(kStreamStability, 1);
    parallel_for(replicas, plan.threads, [&](std::size_t r) {
      SimConfig cfg;
      cfg.seed = replica_seed(plan.master_seed, salt, r);
      cfg.horizon = horizons.back();
      cfg.max_events = plan.max_events;
      cfg.sample_times = horizons;
      const Trajectory traj = simulate(params, empty, cfg);
      // least squares of total count against horizon
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double m = static_cast<double>(horizons.size());
      for (std::size_t k = 0; k < horizons.size(); ++k) {
        std::int64_t total = 0;
        for (auto c : traj.samples[k].second.counts) total += c;
        sx += horizons[k];
        sy += static_cast<double>(total);
        sxx += horizons[k] * horizons[k];
        sxy += horizons[k] * static_cast<double>(total);
      }
      slopes[r] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    });

    double mean = 0.0;
    for (double s : slopes) mean += s;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (double s : slopes) var += (s - mean) * (s - mean);
    var /= static_cast<double>(replicas - 1);
    const double se = std::sqrt(var / static_cast<double>(replicas));

    entries.push_back(make_entry("stability.growth_slope", 0, 0.0, mean,
                                 3.0 * se, Comparison::LowerBound, replicas,
                                 plan.master_seed));
  }

  entries.push_back(make_entry("stability.verdict_consistency", 0,
                               predicted_stable ? 1.0 : 0.0,
                               predicted_stable ? 1.0 : 0.0, 0.0,
                               Comparison::Absolute, 1, plan.master_seed));
  return entries;
}

namespace {

// First time each tracked queue sits at zero after its peak time.
struct VanishObserver {
  std::vector<int> nodes;
  std::vector<double> threshold;
  std::vector<double> theta;

  void segment(double t0, double t1, std::span<const std::int64_t> counts) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (theta[i] < kInf) continue;
      if (counts[nodes[i]] == 0 && t1 > threshold[i]) {
        theta[i] = std::max(t0, threshold[i]);
      }
    }
  }
  void event(double, const Transition&, std::span<const std::int64_t>) {}
};

}  // namespace

VanishTimeStats vanish_time_statistics(const ExperimentPlan& plan,
                                       std::uint64_t n, double margin) {
  const NetworkParams params = validate_params(plan.params, true);
  const ExponentProfile profile = exponent_profile(params);
  const double log_n = std::log(static_cast<double>(n));

  VanishTimeStats stats;
  for (int j = 1; j < params.J; ++j) {
    if (profile.at(j).vanish_time < 1.0) stats.nodes.push_back(j);
  }
  if (stats.nodes.empty()) {
    throw std::invalid_argument(
        "no peripheral node vanishes before t = 1 for these parameters");
  }

  std::vector<double> thresholds, bounds;
  double horizon = 0.0;
  for (int j : stats.nodes) {
    thresholds.push_back(
        std::pow(static_cast<double>(n), profile.at(j).peak_time));
    const double bound =
        std::pow(static_cast<double>(n), profile.at(j).vanish_time) * log_n *
        (1.0 + margin);
    bounds.push_back(bound);
    horizon = std::max(horizon, 1.25 * bound);
  }

  const QueueState init = canonical_initial_state(params, n);
  const std::uint64_t salt = stream_salt(kStreamVanish, n);
  stats.theta0.assign(stats.nodes.size(),
                      std::vector<double>(plan.replicas, kInf));

  parallel_for(plan.replicas, plan.threads, [&](std::size_t r) {
    SimConfig cfg;
    cfg.seed = replica_seed(plan.master_seed, salt, r);
    cfg.horizon = horizon;
    cfg.max_events = plan.max_events;

    VanishObserver obs;
    obs.nodes = stats.nodes;
    obs.threshold = thresholds;
    obs.theta.assign(stats.nodes.size(), kInf);
    simulate_observed(params, init, cfg, obs);
    for (std::size_t i = 0; i < stats.nodes.size(); ++i) {
      stats.theta0[i][r] = obs.theta[i];
    }
  });

  for (std::size_t i = 0; i < stats.nodes.size(); ++i) {
    std::vector<double> sorted = stats.theta0[i];
    std::sort(sorted.begin(), sorted.end());
    const double q = plan.tolerances.confinement_quantile;
    std::size_t idx = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(plan.replicas)));
    idx = idx == 0 ? 0 : idx - 1;
    idx = std::min(idx, plan.replicas - 1);
    stats.quantile.push_back(sorted[idx]);
    stats.bound.push_back(bounds[i]);

    std::ostringstream id;
    id << "vanish.theta0/node=" << stats.nodes[i];
    stats.entries.push_back(make_entry(id.str(), n, bounds[i],
                                       stats.quantile.back(), 0.0,
                                       Comparison::UpperBound, plan.replicas,
                                       plan.master_seed));
  }
  return stats;
}

VerificationReport verify_all(const ExperimentPlan& plan) {
  if (plan.n_values.empty()) {
    throw std::invalid_argument("plan has no scaling parameters");
  }
  VerificationReport report;
  report.params = validate_params(plan.params, true);
  report.regime = regime(report.params);
  report.master_seed = plan.master_seed;

  // The exponent-scale sections (profile bands and vanish times) run only
  // when an exponent grid is planned; likewise the fluid section. Stability
  // always runs, so a plan with both grids empty checks stability alone.
  for (std::uint64_t n : plan.n_values) {
    if (!plan.t_grid.empty()) {
      auto section = verify_exponent_profile(plan, n);
      report.criteria.insert(report.criteria.end(), section.begin(),
                             section.end());
      bool any_vanishing = false;
      const ExponentProfile profile = exponent_profile(report.params);
      for (int j = 1; j < report.params.J; ++j) {
        any_vanishing |= profile.at(j).vanish_time < 1.0;
      }
      if (any_vanishing) {
        auto vanish = vanish_time_statistics(plan, n);
        report.criteria.insert(report.criteria.end(), vanish.entries.begin(),
                               vanish.entries.end());
      }
    }
    if (!plan.fluid_t_grid.empty()) {
      auto fluid = verify_fluid(plan, n);
      report.criteria.insert(report.criteria.end(), fluid.begin(),
                             fluid.end());
    }
  }

  auto stab = verify_stability(plan);
  report.criteria.insert(report.criteria.end(), stab.begin(), stab.end());

  report.overall_pass = true;
  for (const auto& entry : report.criteria) {
    report.overall_pass = report.overall_pass && entry.pass;
  }
  return report;
}

SweepReport convergence_sweep(const ExperimentPlan& plan) {
  if (plan.n_values.size() < 3) {
    throw std::invalid_argument("sweep needs at least three N values");
  }
  const auto [lo, hi] =
      std::minmax_element(plan.n_values.begin(), plan.n_values.end());
  if (static_cast<double>(*hi) < 100.0 * static_cast<double>(*lo)) {
    throw std::invalid_argument("sweep N values must span two decades");
  }

  SweepReport report;
  report.n_values = plan.n_values;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> errors;  // [id][n index]

  if (plan.t_grid.empty() && plan.fluid_t_grid.empty()) {
    throw std::invalid_argument("sweep needs at least one sampling grid");
  }

  for (std::size_t ni = 0; ni < plan.n_values.size(); ++ni) {
    const std::uint64_t n = plan.n_values[ni];
    std::vector<CriterionEntry> entries;
    if (!plan.t_grid.empty()) {
      entries = verify_exponent_profile(plan, n);
    }
    if (!plan.fluid_t_grid.empty()) {
      auto fluid = verify_fluid(plan, n);
      entries.insert(entries.end(), fluid.begin(), fluid.end());
    }
    if (ni == 0) {
      for (const auto& e : entries) {
        ids.push_back(e.id);
        errors.emplace_back();
      }
    }
    if (entries.size() != ids.size()) {
      throw std::logic_error("criterion set changed across N values");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].id != ids[i]) {
        throw std::logic_error("criterion order changed across N values");
      }
      errors[i].push_back(entries[i].error);
      report.rows.push_back({n, entries[i].id, entries[i].error});
    }
  }

  report.overall_pass = true;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    int inversions = 0;
    for (std::size_t k = 1; k < errors[i].size(); ++k) {
      if (errors[i][k] > errors[i][k - 1]) ++inversions;
    }
    const bool ok = inversions <= 1;
    report.id_verdicts.emplace_back(ids[i], ok);
    report.overall_pass = report.overall_pass && ok;
  }
  return report;
}

}  // namespace logstar
