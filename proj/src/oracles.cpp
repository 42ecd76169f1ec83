#include "logstar/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "logstar/rng.hpp"

namespace logstar {

double kingman_bound(double lambda, double mu, std::int64_t x) {
  if (!(lambda > 0.0) || !(mu > lambda)) {
    throw std::domain_error("kingman_bound requires mu > lambda > 0");
  }
  if (x < 0) throw std::domain_error("kingman_bound requires x >= 0");
  return std::pow(lambda / mu, static_cast<double>(x));
}

double reflected_sup_bound(double lambda, double mu, double T,
                           std::int64_t x) {
  if (!(T > 0.0)) throw std::domain_error("reflected_sup_bound requires T > 0");
  return std::min(1.0, (lambda * T + 1.0) * kingman_bound(lambda, mu, x));
}

BirthDeathSummary simulate_birth_death(const BirthDeathSpec& spec,
                                       double horizon, std::uint64_t seed) {
  if (!(spec.death > 0.0) || spec.birth < 0.0) {
    throw std::invalid_argument("birth must be >= 0 and death > 0");
  }
  if (spec.reflect_at && spec.init < *spec.reflect_at) {
    throw std::invalid_argument("init must be >= reflect_at");
  }
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");

  Rng rng(seed);
  std::int64_t x = spec.init;
  double now = 0.0;

  BirthDeathSummary s;
  s.sup = x;
  s.sup_before_zero = x;
  bool zero_seen = x == 0;
  s.first_hit_zero = zero_seen ? 0.0 : std::numeric_limits<double>::infinity();
  double integral = 0.0;

  while (true) {
    const bool death_enabled = !spec.reflect_at || x > *spec.reflect_at;
    const double total = spec.birth + (death_enabled ? spec.death : 0.0);
    if (!(total > 0.0)) {  // frozen walk: only time passes
      integral += static_cast<double>(x) * (horizon - now);
      if (x == 0) s.time_at_zero += horizon - now;
      now = horizon;
      break;
    }
    const double dwell = rng.exponential(total);
    const double event_time = now + dwell;
    const double slice = std::min(event_time, horizon) - now;
    integral += static_cast<double>(x) * slice;
    if (x == 0) s.time_at_zero += slice;
    if (!(event_time <= horizon)) {
      now = horizon;
      break;
    }

    const bool is_birth =
        death_enabled ? rng.uniform01() * total < spec.birth : true;
    x += is_birth ? 1 : -1;
    ++s.events;
    now = event_time;

    if (x > s.sup) s.sup = x;
    if (x == 0 && !zero_seen) {
      zero_seen = true;
      s.first_hit_zero = now;
    }
    if (!zero_seen && x > s.sup_before_zero) s.sup_before_zero = x;
  }

  s.final_state = x;
  s.elapsed = now;
  s.time_average = now > 0.0 ? integral / now : static_cast<double>(spec.init);
  return s;
}

MartingaleDiagnostic harmonic_residual(const NetworkParams& params,
                                       std::span<const Trajectory> ensemble,
                                       std::uint64_t n, int node,
                                       const std::vector<double>& t_grid) {
  if (node < 2 || node > params.J) {
    throw std::invalid_argument("harmonic_residual requires a node in 2..J");
  }
  if (t_grid.size() < 2) {
    throw std::invalid_argument("need at least two grid points");
  }
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");

  const double log_n = std::log(static_cast<double>(n));
  const double target =
      params.mu[node] * (params.rho(node) - params.rho(1));
  const double coupling = params.mu[node] / params.mu[1];
  const std::size_t m = t_grid.size();

  std::vector<double> mean(m, 0.0), sq(m, 0.0);
  for (const Trajectory& traj : ensemble) {
    if (traj.samples.size() != m) {
      throw std::invalid_argument(
          "trajectory sample count does not match the grid");
    }
    double compensator = 0.0;
    double f0 = 0.0;
    double prev_g = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double scale = std::pow(static_cast<double>(n), t_grid[k]);
      if (std::abs(traj.samples[k].first - scale) > 1e-9 * scale) {
        throw std::invalid_argument("trajectory not sampled at N^t");
      }
      const auto& counts = traj.samples[k].second.counts;
      const double z = static_cast<double>(counts[node]) / scale - target;
      const double w = static_cast<double>(counts[1]) / scale;
      const double f = 0.5 * z * z - coupling * w * z;
      const double g = log_n * z * z;
      if (k == 0) {
        f0 = f;
      } else {
        compensator += 0.5 * (prev_g + g) * (t_grid[k] - t_grid[k - 1]);
      }
      prev_g = g;
      const double residual = f - f0 + compensator;
      mean[k] += residual;
      sq[k] += residual * residual;
    }
  }

  const double r = static_cast<double>(ensemble.size());
  MartingaleDiagnostic diag;
  diag.times = t_grid;
  diag.residual.resize(m);
  diag.band.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    diag.residual[k] = mean[k] / r;
    const double var =
        r > 1.0 ? std::max(0.0, (sq[k] - mean[k] * mean[k] / r) / (r - 1.0))
                : 0.0;
    diag.band[k] = std::sqrt(var / r);
  }
  return diag;
}

}  // namespace logstar
