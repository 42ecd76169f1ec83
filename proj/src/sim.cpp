#include "logstar/sim.hpp"

namespace logstar {

namespace detail {

void check_config(const NetworkParams& params, const QueueState& init,
                  const SimConfig& config) {
  if (init.counts.size() != static_cast<std::size_t>(params.node_count())) {
    throw std::invalid_argument("initial state has wrong number of nodes");
  }
  for (auto c : init.counts) {
    if (c < 0) throw std::invalid_argument("initial counts must be >= 0");
  }
  if (!(config.horizon >= 0.0)) {
    throw std::invalid_argument("horizon must be non-negative");
  }
  if (config.max_events == 0) {
    throw std::invalid_argument("max_events must be positive");
  }
  double prev = -1.0;
  for (double t : config.sample_times) {
    if (!(t >= 0.0) || !(t <= config.horizon) || !(t > prev)) {
      throw std::invalid_argument(
          "sample_times must be strictly increasing within [0, horizon]");
    }
    prev = t;
  }
}

}  // namespace detail

StepResult step(Rng& rng, const NetworkParams& params,
                const QueueState& state) {
  const auto rated = transition_rates(params, state);
  if (rated.empty()) {
    throw std::logic_error("step: no enabled transition (all rates zero)");
  }
  double total = 0.0;
  for (const auto& rt : rated) total += rt.rate;

  StepResult result;
  result.dwell = rng.exponential(total);
  double u = rng.uniform01() * total;
  result.chosen = rated.back().transition;
  for (const auto& rt : rated) {
    u -= rt.rate;
    if (u < 0.0) {
      result.chosen = rt.transition;
      break;
    }
  }
  return result;
}

Trajectory simulate(const NetworkParams& params, const QueueState& init,
                    const SimConfig& config) {
  NullObserver obs;
  return simulate_observed(params, init, config, obs);
}

std::vector<std::vector<double>> exponent_samples(
    const Trajectory& traj, std::uint64_t n,
    const std::vector<double>& t_grid) {
  if (n < 2) throw std::invalid_argument("scaling parameter must be >= 2");
  if (traj.samples.size() != t_grid.size()) {
    throw std::invalid_argument(
        "trajectory sample count does not match the exponent grid");
  }
  const double log_n = std::log(static_cast<double>(n));
  const int nodes = traj.params_snapshot.node_count();

  std::vector<std::vector<double>> y(nodes,
                                     std::vector<double>(t_grid.size()));
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double expected = std::pow(static_cast<double>(n), t_grid[k]);
    const double actual = traj.samples[k].first;
    if (std::abs(actual - expected) > 1e-9 * std::max(1.0, expected)) {
      throw std::invalid_argument(
          "trajectory was not sampled at N^t for grid point " +
          std::to_string(t_grid[k]));
    }
    for (int j = 0; j < nodes; ++j) {
      y[j][k] =
          std::log1p(static_cast<double>(traj.samples[k].second.counts[j])) /
          log_n;
    }
  }
  return y;
}

}  // namespace logstar
