#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "logstar/model.hpp"

namespace logstar {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter sets sitting exactly on a classification boundary (tied loads,
// beta*_kappa == 1) have no predicted behaviour and are rejected.
class degenerate_parameter_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CaseLabel { Case1, Case2a, Case2b, Case3 };

std::string to_string(CaseLabel label);
CaseLabel case_label_from_string(const std::string& s);

// Everything the closed-form analysis says about a parameter set.
//
//   alpha_j   = rho_j / (1 - rho_j),            j = 1..J
//   beta*_j   = alpha_j / (J - j)               (+inf at j = J)
//   kappa     = sup{ k >= 1 : alpha_k/(J-k+1) < 1 },  sup(empty) = 0
//   (C)       holds iff kappa = 0, or kappa < J and beta*_kappa < 1
//
// t_zero is the instant on the fluid time scale when the central node
// empties; validity_horizon is the interval on which the fluid statements
// hold ((0, inf) when kappa = J, otherwise (0, t_zero)).
struct RegimeReport {
  std::vector<double> alpha;      // indexed 0..J-1 for nodes 1..J
  std::vector<double> beta_star;  // same indexing, +inf at node J
  int kappa = 0;
  bool condition_C = false;
  CaseLabel case_label = CaseLabel::Case1;
  double t_zero = kInf;
  double validity_horizon = kInf;
  bool stable = false;

  bool operator==(const RegimeReport&) const = default;
};

// Piecewise-linear exponent trajectory of one peripheral node on the N^t
// scale: slope +1 up to the peak time, slope -(J-j) down to the vanish time,
// then 0; everything truncated at t = 1. Node J never decreases.
struct ProfileNode {
  int node = 0;
  double peak_time = 0.0;    // alpha_j / (J - j + 1)
  double vanish_time = 0.0;  // alpha_j / (J - j), +inf for node J
};

struct ExponentProfile {
  int J = 0;
  std::vector<double> alpha;
  std::vector<ProfileNode> nodes;  // nodes 1..J in order

  // a_j(t) for t in [0, 1].
  double value(int node, double t) const;
  double fall_slope(int node) const { return -(J - node); }
  const ProfileNode& at(int node) const { return nodes.at(node - 1); }
};

// How a coordinate is rescaled in the fluid limit.
enum class FluidScale { LinearN, PowerOfN, LogCubed };

struct FluidValue {
  FluidScale scale = FluidScale::LinearN;
  double exponent = 1.0;  // meaningful for PowerOfN (and 1 for LinearN)
  double value = 0.0;
};

// alpha(rho) = rho / (1 - rho); domain (0, 1).
double alpha_of(double rho);

RegimeReport regime(const NetworkParams& params);

ExponentProfile exponent_profile(const NetworkParams& params);

// Drift of a peripheral node while k peripheral queues still grow like N^t:
// lambda_j - mu_j * k t / (1 + k t).
double growth_slope(const NetworkParams& params, int active_count, int node,
                    double t);

// prod_{i=j+1..J} 1 / (mu_i (rho_i - rho_j)): the predicted prefactor of
// L_j ~ C * N^{a_j(t)} on node j's decreasing segment (1 for node J).
double equilibrium_product_constant(const NetworkParams& params, int node);

// Scaled fluid values of every node at fluid time t. The central-node
// coefficient is clamped at 0; in Case2b, t must be positive because node
// kappa's value has gamma factors in the denominator.
std::vector<FluidValue> fluid_limit(const NetworkParams& params, double t);

// Ergodicity: rho_0 + max_j rho_j < 1.
bool stability(const NetworkParams& params);

}  // namespace logstar
