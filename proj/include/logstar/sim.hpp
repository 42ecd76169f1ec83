#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logstar/model.hpp"
#include "logstar/rng.hpp"

namespace logstar {

struct SimConfig {
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::uint64_t max_events = 100'000'000;  // truncation is flagged, never silent
  std::vector<double> sample_times;        // strictly increasing, all <= horizon
};

// One simulated path. Samples follow the right-continuous convention: the
// state recorded at time t includes every event at or before t.
struct Trajectory {
  NetworkParams params_snapshot;
  QueueState initial;
  std::vector<std::pair<double, QueueState>> samples;
  std::uint64_t events_used = 0;
  bool truncated = false;
  std::uint64_t seed = 0;
  std::string rng_algorithm;  // recorded so runs can be replayed elsewhere
};

struct StepResult {
  double dwell = 0.0;
  Transition chosen;
};

// One jump of the embedded chain: exponential dwell at the total rate, then a
// categorical pick proportional to the per-transition rates. Identical inputs
// (including generator state) give identical output.
StepResult step(Rng& rng, const NetworkParams& params, const QueueState& state);

Trajectory simulate(const NetworkParams& params, const QueueState& init,
                    const SimConfig& config);

// Y_j(N^t) = log(1 + L_j(N^t)) / log N per node and grid value. The
// trajectory must have been sampled exactly at the times N^t.
std::vector<std::vector<double>> exponent_samples(
    const Trajectory& traj, std::uint64_t n, const std::vector<double>& t_grid);

// Observers see every constant segment and every applied event, which is how
// the harness extracts hitting times and path integrals without a second run.
struct NullObserver {
  void segment(double, double, std::span<const std::int64_t>) {}
  void event(double, const Transition&, std::span<const std::int64_t>) {}
};

namespace detail {
void check_config(const NetworkParams& params, const QueueState& init,
                  const SimConfig& config);
}

template <typename Observer>
Trajectory simulate_observed(const NetworkParams& params,
                             const QueueState& init, const SimConfig& config,
                             Observer&& obs) {
  detail::check_config(params, init, config);

  const int nodes = params.node_count();
  Rng rng(config.seed);

  std::vector<std::int64_t> counts = init.counts;
  std::vector<double> logs(nodes);
  for (int j = 0; j < nodes; ++j) {
    logs[j] = std::log1p(static_cast<double>(counts[j]));
  }

  Trajectory traj;
  traj.params_snapshot = params;
  traj.initial = init;
  traj.seed = config.seed;
  traj.rng_algorithm = std::string(Rng::kAlgorithm);
  traj.samples.reserve(config.sample_times.size());

  const std::span<const std::int64_t> view(counts);
  std::size_t next_sample = 0;
  auto record_before = [&](double cutoff) {
    while (next_sample < config.sample_times.size() &&
           config.sample_times[next_sample] < cutoff) {
      traj.samples.emplace_back(config.sample_times[next_sample],
                                QueueState{counts});
      ++next_sample;
    }
  };
  auto record_at = [&](double when) {
    while (next_sample < config.sample_times.size() &&
           config.sample_times[next_sample] == when) {
      traj.samples.emplace_back(when, QueueState{counts});
      ++next_sample;
    }
  };

  double now = 0.0;
  double lambda_total = 0.0;
  for (int j = 0; j < nodes; ++j) lambda_total += params.lambda[j];

  while (true) {
    double peripheral = 0.0;
    for (int j = 1; j < nodes; ++j) peripheral += logs[j];
    const double log_sum = logs[0] + peripheral;
    const double w = log_sum > 0.0 ? peripheral / log_sum : 0.0;

    double total_rate = lambda_total;
    const double central_dep =
        counts[0] > 0 ? params.mu[0] * (1.0 - w) : 0.0;
    total_rate += central_dep;
    for (int j = 1; j < nodes; ++j) {
      if (counts[j] > 0) total_rate += params.mu[j] * w;
    }

    const double dwell = rng.exponential(total_rate);
    const double event_time = now + dwell;

    if (!(event_time <= config.horizon)) {
      record_before(config.horizon);
      record_at(config.horizon);
      obs.segment(now, config.horizon, view);
      break;
    }
    record_before(event_time);

    // Categorical pick in a fixed order: arrivals 0..J, then departures.
    double u = rng.uniform01() * total_rate;
    Transition chosen{-1, 0};
    for (int j = 0; j < nodes; ++j) {
      u -= params.lambda[j];
      if (u < 0.0) {
        chosen = {j, +1};
        break;
      }
    }
    if (chosen.node < 0 && counts[0] > 0) {
      u -= central_dep;
      if (u < 0.0) chosen = {0, -1};
    }
    if (chosen.node < 0) {
      int last_enabled = -1;
      for (int j = 1; j < nodes; ++j) {
        if (counts[j] > 0) {
          last_enabled = j;
          u -= params.mu[j] * w;
          if (u < 0.0) {
            chosen = {j, -1};
            break;
          }
        }
      }
      // Rounding can leave u a hair above zero after the last candidate.
      if (chosen.node < 0) {
        chosen = last_enabled >= 0 ? Transition{last_enabled, -1}
                                   : Transition{0, +1};
      }
    }

    obs.segment(now, event_time, view);
    counts[chosen.node] += chosen.delta;
    logs[chosen.node] = std::log1p(static_cast<double>(counts[chosen.node]));
    ++traj.events_used;
    obs.event(event_time, chosen, view);
    record_at(event_time);
    now = event_time;

    if (traj.events_used >= config.max_events) {
      traj.truncated = true;
      break;
    }
  }
  return traj;
}

}  // namespace logstar
