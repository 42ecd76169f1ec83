#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "logstar/model.hpp"
#include "logstar/sim.hpp"

namespace logstar {

// (lambda/mu)^x: tail bound for the supremum of a subcritical birth-death
// walk started at 1. Requires mu > lambda > 0.
double kingman_bound(double lambda, double mu, std::int64_t x);

// min(1, (lambda*T + 1) * (lambda/mu)^x): the same bound for the walk
// reflected at 0, over a finite window [0, T].
double reflected_sup_bound(double lambda, double mu, double T, std::int64_t x);

struct BirthDeathSpec {
  double birth = 0.0;  // may be zero (pure death)
  double death = 1.0;
  std::int64_t init = 0;
  std::optional<std::int64_t> reflect_at;  // death suppressed at this level
};

struct BirthDeathSummary {
  std::int64_t sup = 0;
  std::int64_t final_state = 0;
  double first_hit_zero = 0.0;        // +inf if 0 is never visited
  std::int64_t sup_before_zero = 0;   // sup over [0, first_hit_zero ^ horizon]
  double time_at_zero = 0.0;
  double time_average = 0.0;
  double elapsed = 0.0;
  std::uint64_t events = 0;
};

// Exact jump-chain path of a one-dimensional birth-death walk; deterministic
// given the seed. Without reflection the walk lives on all of Z.
BirthDeathSummary simulate_birth_death(const BirthDeathSpec& spec,
                                       double horizon, std::uint64_t seed);

struct MartingaleDiagnostic {
  std::vector<double> times;     // grid values t
  std::vector<double> residual;  // cross-replica mean of the compensated process
  std::vector<double> band;      // standard-error half-widths
};

// Runtime diagnostic built from the space-time harmonic family
//   F_j(l, t) = 1/2 (l_j/N^t - m_j)^2 - (mu_j/mu_1)(l_1/N^t)(l_j/N^t - m_j),
// with m_j = mu_j (rho_j - rho_1). Along each path the compensated process
//   M(t_k) = F_j(t_k) - F_j(t_0) + int_{t_0}^{t_k} log N (L_j/N^u - m_j)^2 du
// (trapezoid rule on the sampling grid) has mean zero when the predicted
// equilibrium holds; the bounded-remainder part of the drift is absorbed by
// the tolerance. Trajectories must be sampled exactly at the times N^t.
MartingaleDiagnostic harmonic_residual(const NetworkParams& params,
                                       std::span<const Trajectory> ensemble,
                                       std::uint64_t n, int node,
                                       const std::vector<double>& t_grid);

}  // namespace logstar
