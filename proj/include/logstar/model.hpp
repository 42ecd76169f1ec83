#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logstar {

// Star interference network: peripheral nodes 1..J can transmit at the same
// time, the central node 0 conflicts with all of them. Index 0 of lambda/mu
// is the central node. Loads rho_j = lambda_j/mu_j are derived, never stored.
struct NetworkParams {
  int J = 0;
  std::vector<double> lambda;  // arrival rates, J+1 entries
  std::vector<double> mu;      // service rates, J+1 entries

  int node_count() const { return J + 1; }
  double rho(int node) const { return lambda[node] / mu[node]; }
};

// Pending-request counts L_0..L_J.
struct QueueState {
  std::vector<std::int64_t> counts;
  bool operator==(const QueueState&) const = default;
};

// delta = +1 arrival, -1 departure.
struct Transition {
  int node = 0;
  int delta = 0;
  bool operator==(const Transition&) const = default;
};

struct RatedTransition {
  Transition transition;
  double rate = 0.0;
};

enum class ParamFault {
  NonPositiveRate,
  LoadNotBelowOne,
  LoadOrderViolation,
};

class param_error : public std::runtime_error {
 public:
  param_error(ParamFault fault, int index, const std::string& message)
      : std::runtime_error(message), fault_(fault), index_(index) {}

  ParamFault fault() const { return fault_; }
  int index() const { return index_; }

 private:
  ParamFault fault_;
  int index_;
};

// Fraction of the channel granted to each non-empty peripheral node,
//   W(L) = sum_{j>=1} log(1+L_j) / sum_{j>=0} log(1+L_j);
// node 0 is served at 1-W(L). Defined as 0 at the all-empty state, where no
// service indicator is on anyway.
double capacity_share(const QueueState& state);

// Exactly the enabled transitions with their rates: arrivals at rate
// lambda_j, a departure at node 0 at rate mu_0*(1-W) when L_0 > 0, and a
// departure at node j>=1 at rate mu_j*W when L_j > 0.
std::vector<RatedTransition> transition_rates(const NetworkParams& params,
                                              const QueueState& state);

// Adjusts a single entry by t.delta. Applying a departure to an empty queue
// is a programming error and throws std::logic_error.
QueueState apply_transition(const QueueState& state, const Transition& t);

// Shape and rate checks. Simulation-mode validation (require_regime = false)
// accepts zero arrival rates (not all zero) so degenerate single-queue setups
// can run; regime-mode additionally requires every lambda_j > 0, rho_j < 1
// for j >= 1 and strictly increasing rho_1 < ... < rho_J.
NetworkParams validate_params(NetworkParams params, bool require_regime);

}  // namespace logstar
