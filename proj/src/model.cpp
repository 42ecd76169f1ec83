#include "logstar/model.hpp"

#include <cmath>

namespace logstar {

double capacity_share(const QueueState& state) {
  double central = std::log1p(static_cast<double>(state.counts[0]));
  double peripheral = 0.0;
  for (std::size_t j = 1; j < state.counts.size(); ++j) {
    peripheral += std::log1p(static_cast<double>(state.counts[j]));
  }
  const double total = central + peripheral;
  return total > 0.0 ? peripheral / total : 0.0;
}

std::vector<RatedTransition> transition_rates(const NetworkParams& params,
                                              const QueueState& state) {
  const int nodes = params.node_count();
  const double w = capacity_share(state);

  std::vector<RatedTransition> out;
  out.reserve(2 * nodes);
  for (int j = 0; j < nodes; ++j) {
    if (params.lambda[j] > 0.0) {
      out.push_back({{j, +1}, params.lambda[j]});
    }
  }
  if (state.counts[0] > 0) {
    const double rate = params.mu[0] * (1.0 - w);
    if (rate > 0.0) out.push_back({{0, -1}, rate});
  }
  for (int j = 1; j < nodes; ++j) {
    if (state.counts[j] > 0) {
      const double rate = params.mu[j] * w;
      if (rate > 0.0) out.push_back({{j, -1}, rate});
    }
  }
  return out;
}

QueueState apply_transition(const QueueState& state, const Transition& t) {
  if (t.node < 0 || t.node >= static_cast<int>(state.counts.size())) {
    throw std::logic_error("apply_transition: node index out of range");
  }
  if (t.delta == -1 && state.counts[t.node] <= 0) {
    throw std::logic_error("apply_transition: departure from empty queue " +
                           std::to_string(t.node));
  }
  QueueState next = state;
  next.counts[t.node] += t.delta;
  return next;
}

NetworkParams validate_params(NetworkParams params, bool require_regime) {
  if (params.J < 1) {
    throw param_error(ParamFault::NonPositiveRate, -1,
                      "node count J must be at least 1");
  }
  const std::size_t expected = static_cast<std::size_t>(params.J) + 1;
  if (params.lambda.size() != expected || params.mu.size() != expected) {
    throw param_error(ParamFault::NonPositiveRate, -1,
                      "lambda and mu must each have J+1 entries");
  }

  double arrival_sum = 0.0;
  for (int j = 0; j <= params.J; ++j) {
    if (!(params.mu[j] > 0.0)) {
      throw param_error(ParamFault::NonPositiveRate, j,
                        "service rate mu[" + std::to_string(j) +
                            "] must be strictly positive");
    }
    const bool lambda_ok = require_regime ? params.lambda[j] > 0.0
                                          : params.lambda[j] >= 0.0;
    if (!lambda_ok) {
      throw param_error(ParamFault::NonPositiveRate, j,
                        "arrival rate lambda[" + std::to_string(j) +
                            "] must be " +
                            (require_regime ? "strictly positive"
                                            : "non-negative"));
    }
    arrival_sum += params.lambda[j];
  }
  if (!(arrival_sum > 0.0)) {
    throw param_error(ParamFault::NonPositiveRate, -1,
                      "at least one arrival rate must be positive");
  }

  if (require_regime) {
    for (int j = 1; j <= params.J; ++j) {
      if (!(params.rho(j) < 1.0)) {
        throw param_error(ParamFault::LoadNotBelowOne, j,
                          "load rho[" + std::to_string(j) +
                              "] must be below 1 for regime analysis");
      }
    }
    for (int j = 2; j <= params.J; ++j) {
      if (!(params.rho(j - 1) < params.rho(j))) {
        throw param_error(ParamFault::LoadOrderViolation, j,
                          "loads must satisfy rho[" + std::to_string(j - 1) +
                              "] < rho[" + std::to_string(j) + "]");
      }
    }
  }
  return params;
}

}  // namespace logstar
