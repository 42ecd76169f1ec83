#include "logstar/theory.hpp"

#include <cmath>

namespace logstar {

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::Case1: return "Case1";
    case CaseLabel::Case2a: return "Case2a";
    case CaseLabel::Case2b: return "Case2b";
    case CaseLabel::Case3: return "Case3";
  }
  return "?";
}

CaseLabel case_label_from_string(const std::string& s) {
  if (s == "Case1") return CaseLabel::Case1;
  if (s == "Case2a") return CaseLabel::Case2a;
  if (s == "Case2b") return CaseLabel::Case2b;
  if (s == "Case3") return CaseLabel::Case3;
  throw std::invalid_argument("unknown case label: " + s);
}

double alpha_of(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::domain_error("alpha_of requires 0 < rho < 1");
  }
  return rho / (1.0 - rho);
}

RegimeReport regime(const NetworkParams& raw) {
  const NetworkParams params = validate_params(raw, true);
  const int J = params.J;

  RegimeReport report;
  report.alpha.resize(J);
  report.beta_star.resize(J);
  for (int j = 1; j <= J; ++j) {
    report.alpha[j - 1] = alpha_of(params.rho(j));
    report.beta_star[j - 1] =
        j < J ? report.alpha[j - 1] / static_cast<double>(J - j) : kInf;
  }

  report.kappa = 0;
  for (int k = 1; k <= J; ++k) {
    if (report.alpha[k - 1] / static_cast<double>(J - k + 1) < 1.0) {
      report.kappa = k;
    }
  }

  if (report.kappa >= 1 && report.kappa < J &&
      report.beta_star[report.kappa - 1] == 1.0) {
    throw degenerate_parameter_error(
        "beta*_kappa lies exactly on the classification boundary 1");
  }

  report.condition_C =
      report.kappa == 0 ||
      (report.kappa < J && report.beta_star[report.kappa - 1] < 1.0);

  if (report.kappa == 0) {
    report.case_label = CaseLabel::Case1;
  } else if (report.kappa == J) {
    report.case_label = CaseLabel::Case3;
  } else {
    report.case_label = report.beta_star[report.kappa - 1] < 1.0
                            ? CaseLabel::Case2a
                            : CaseLabel::Case2b;
  }

  const double rho0 = params.rho(0);
  if (report.condition_C) {
    const double m = static_cast<double>(J - report.kappa + 1);
    const double denom = params.mu[0] * (1.0 - rho0 * m);
    report.t_zero = denom > 0.0 ? m / denom : kInf;
  } else {
    const double denom =
        params.mu[0] * (1.0 - rho0 - params.rho(report.kappa));
    report.t_zero = denom > 0.0 ? 1.0 / denom : kInf;
  }
  report.validity_horizon =
      report.case_label == CaseLabel::Case3 ? kInf : report.t_zero;

  report.stable = stability(params);
  return report;
}

double ExponentProfile::value(int node, double t) const {
  const ProfileNode& pn = at(node);
  const double rise_end = std::min(pn.peak_time, 1.0);
  if (t <= rise_end) return t;
  if (node == J) return alpha[node - 1];  // a_J(t) = min(t, alpha_J)
  const double fall_end = std::min(pn.vanish_time, 1.0);
  if (t < fall_end) {
    return alpha[node - 1] - static_cast<double>(J - node) * t;
  }
  return 0.0;
}

ExponentProfile exponent_profile(const NetworkParams& raw) {
  const NetworkParams params = validate_params(raw, true);
  const int J = params.J;

  ExponentProfile profile;
  profile.J = J;
  profile.alpha.resize(J);
  profile.nodes.resize(J);
  for (int j = 1; j <= J; ++j) {
    const double a = alpha_of(params.rho(j));
    profile.alpha[j - 1] = a;
    profile.nodes[j - 1] = {
        j,
        a / static_cast<double>(J - j + 1),
        j < J ? a / static_cast<double>(J - j) : kInf,
    };
  }
  return profile;
}

double growth_slope(const NetworkParams& params, int active_count, int node,
                    double t) {
  if (active_count < 1) {
    throw std::invalid_argument("active_count must be >= 1");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const double kt = static_cast<double>(active_count) * t;
  return params.lambda[node] - params.mu[node] * kt / (1.0 + kt);
}

double equilibrium_product_constant(const NetworkParams& raw, int node) {
  const NetworkParams params = validate_params(raw, true);
  if (node < 1 || node > params.J) {
    throw std::invalid_argument("node must lie in 1..J");
  }
  double product = 1.0;
  for (int i = node + 1; i <= params.J; ++i) {
    product /= params.mu[i] * (params.rho(i) - params.rho(node));
  }
  return product;
}

std::vector<FluidValue> fluid_limit(const NetworkParams& raw, double t) {
  const NetworkParams params = validate_params(raw, true);
  const RegimeReport rr = regime(params);
  const int J = params.J;
  const int kappa = rr.kappa;
  const double rho0 = params.rho(0);

  // Affine coefficients; the branch depends on condition (C).
  auto gamma0 = [&](double s) {
    const double slope =
        rr.condition_C
            ? params.mu[0] * (rho0 - 1.0 / static_cast<double>(J - kappa + 1))
            : params.mu[0] * (rho0 + params.rho(kappa) - 1.0);
    return std::max(0.0, 1.0 + slope * s);
  };
  auto gamma = [&](int j, double s) {
    const double slope =
        rr.condition_C
            ? params.mu[j] * (params.rho(j) -
                              static_cast<double>(J - kappa) /
                                  static_cast<double>(J - kappa + 1))
            : params.mu[j] * (params.rho(j) - params.rho(kappa));
    return slope * s;
  };

  std::vector<FluidValue> out(J + 1);
  out[0] = {FluidScale::LinearN, 1.0, gamma0(t)};

  switch (rr.case_label) {
    case CaseLabel::Case1:
      for (int j = 1; j <= J; ++j) {
        out[j] = {FluidScale::LinearN, 1.0, gamma(j, t)};
      }
      break;
    case CaseLabel::Case2a:
      for (int j = 1; j <= kappa; ++j) out[j] = {FluidScale::LogCubed, 0.0, 0.0};
      for (int j = kappa + 1; j <= J; ++j) {
        out[j] = {FluidScale::LinearN, 1.0, gamma(j, t)};
      }
      break;
    case CaseLabel::Case2b: {
      if (!(t > 0.0)) {
        throw std::domain_error(
            "Case2b fluid values are only defined for t > 0");
      }
      for (int j = 1; j < kappa; ++j) out[j] = {FluidScale::LogCubed, 0.0, 0.0};
      double denom = 1.0;
      for (int i = kappa + 1; i <= J; ++i) denom *= gamma(i, t);
      out[kappa] = {FluidScale::PowerOfN,
                    rr.alpha[kappa - 1] - static_cast<double>(J - kappa),
                    1.0 / denom};
      for (int j = kappa + 1; j <= J; ++j) {
        out[j] = {FluidScale::LinearN, 1.0, gamma(j, t)};
      }
      break;
    }
    case CaseLabel::Case3: {
      for (int j = 1; j < J; ++j) out[j] = {FluidScale::LogCubed, 0.0, 0.0};
      const double aJ = rr.alpha[J - 1];
      out[J] = {FluidScale::PowerOfN, aJ, std::pow(gamma0(t), aJ)};
      break;
    }
  }
  return out;
}

bool stability(const NetworkParams& raw) {
  const NetworkParams params = validate_params(raw, false);
  double rho_max = 0.0;
  for (int j = 1; j <= params.J; ++j) {
    rho_max = std::max(rho_max, params.rho(j));
  }
  return params.rho(0) + rho_max < 1.0;
}

}  // namespace logstar
