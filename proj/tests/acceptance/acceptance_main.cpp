// Acceptance suite: one pass/fail line per criterion, details underneath.
// Every tolerance is pinned here, in code; exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logstar/config.hpp"
#include "logstar/harness.hpp"
#include "logstar/json_io.hpp"
#include "logstar/oracles.hpp"

using namespace logstar;

namespace {

constexpr std::uint64_t kMasterSeed = 20250808;

struct Check {
  std::string label;
  double predicted = 0.0;
  double measured = 0.0;
  std::string rule;
  bool pass = false;
};

struct Criterion {
  int index = 0;
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

Check rel(std::string label, double predicted, double measured, double tol) {
  const double err =
      std::abs(measured - predicted) / std::max(std::abs(predicted), 1e-300);
  std::ostringstream rule;
  rule << "|rel err| <= " << tol;
  return {std::move(label), predicted, measured, rule.str(), err <= tol};
}

Check absolute(std::string label, double predicted, double measured,
               double tol) {
  std::ostringstream rule;
  rule << "|abs err| <= " << tol;
  return {std::move(label), predicted, measured, rule.str(),
          std::abs(measured - predicted) <= tol};
}

Check upper(std::string label, double bound, double measured) {
  return {std::move(label), bound, measured, "measured <= bound",
          measured <= bound};
}

Check within_factor(std::string label, double predicted, double measured,
                    double factor) {
  std::ostringstream rule;
  rule << "within factor " << factor;
  const bool ok = measured > 0.0 && predicted > 0.0 &&
                  measured <= predicted * factor &&
                  measured >= predicted / factor;
  return {std::move(label), predicted, measured, rule.str(), ok};
}

NetworkParams canonical_j2() { return {2, {0.3, 0.2, 0.4}, {1.0, 1.0, 1.0}}; }

NetworkParams heavy_j2() { return {2, {0.2, 0.7, 0.8}, {1.0, 1.0, 1.0}}; }

NetworkParams staircase_j3() {
  // loads 0.2, 1/5, 1/3, 9/19 giving alpha = (0.25, 0.5, 0.9)
  return {3, {0.2, 0.2, 1.0 / 3.0, 9.0 / 19.0}, {1.0, 1.0, 1.0, 1.0}};
}

ExperimentPlan make_plan(NetworkParams params, std::vector<double> t_grid,
                         std::size_t replicas, std::uint64_t seed) {
  ExperimentPlan plan;
  plan.params = std::move(params);
  plan.n_values = {100000};
  plan.replicas = replicas;
  plan.t_grid = std::move(t_grid);
  plan.master_seed = seed;
  return plan;
}

double log_n_of(std::uint64_t n) { return std::log(static_cast<double>(n)); }

// ---------------------------------------------------------------------------

Criterion criterion1() {
  Criterion c;
  c.index = 1;
  c.name = "early-growth drift on (0, alpha_1/J)";
  const std::uint64_t n = 100000;
  auto plan = make_plan(canonical_j2(), {0.03, 0.06, 0.09}, 100, kMasterSeed);
  const auto ens = *run_ensemble(plan, n).exponent;
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    const double t = plan.t_grid[k];
    const double scale = std::pow(static_cast<double>(n), t);
    for (int j = 1; j <= 2; ++j) {
      std::ostringstream label;
      label << "mean L" << j << "(N^t)/N^t at t=" << t;
      c.checks.push_back(rel(label.str(),
                             growth_slope(plan.params, 2, j, t),
                             ens.mean_count(j, k) / scale,
                             plan.tolerances.drift_rel_tol));
    }
  }
  return c;
}

Criterion criterion2() {
  Criterion c;
  c.index = 2;
  c.name = "product invariance on (alpha_1/2, alpha_1)";
  const std::uint64_t n = 100000;
  const double alpha1 = alpha_of(0.2);
  auto plan = make_plan(canonical_j2(), {0.15, 0.20}, 100, kMasterSeed);
  const auto ens = *run_ensemble(plan, n).exponent;
  const double band = exponent_band(plan.tolerances, n);
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    std::ostringstream label;
    label << "log(mean L1*L2)/log N at t=" << plan.t_grid[k];
    c.checks.push_back(absolute(label.str(), alpha1,
                                std::log(ens.mean_product(1, k)) / log_n_of(n),
                                band));
  }
  return c;
}

Criterion criterion3() {
  Criterion c;
  c.index = 3;
  c.name = "decreasing-exponent segment at t = 0.20";
  const std::uint64_t n = 100000;
  const double alpha1 = alpha_of(0.2);
  auto plan = make_plan(canonical_j2(), {0.20}, 100, kMasterSeed);
  const auto ens = *run_ensemble(plan, n).exponent;
  const double band = exponent_band(plan.tolerances, n);
  const double t = 0.20;
  c.checks.push_back(
      absolute("mean Y1 vs alpha_1 - t", alpha1 - t, ens.mean_exponent(1, 0),
               band));
  c.checks.push_back(absolute("mean Y2 vs t", t, ens.mean_exponent(2, 0),
                              band));
  c.checks.push_back(within_factor(
      "mean L2(N^t)/N^t vs mu_2(rho_2-rho_1)", 0.2,
      ens.mean_count(2, 0) / std::pow(static_cast<double>(n), t), 2.0));
  return c;
}

Criterion criterion4() {
  Criterion c;
  c.index = 4;
  c.name = "vanishing time and (log N)^2 confinement of node 1";
  const std::uint64_t n = 100000;
  const double log_n = log_n_of(n);

  auto plan = make_plan(canonical_j2(), {0.5}, 200, kMasterSeed);
  const auto vanish = vanish_time_statistics(plan, n);  // margin 1 => 2x bound
  c.checks.push_back(upper("95th percentile of theta_0",
                           2.0 * std::pow(static_cast<double>(n), 0.25) * log_n,
                           vanish.quantile.at(0)));

  auto conf_plan = make_plan(
      canonical_j2(), {0.32, 0.36, 0.40, 0.44, 0.48, 0.52, 0.56, 0.60}, 200,
      kMasterSeed);
  const auto ens = *run_ensemble(conf_plan, n).exponent;
  for (std::size_t k = 0; k < conf_plan.t_grid.size(); ++k) {
    std::ostringstream label;
    label << "95th percentile of L1(N^t) at t=" << conf_plan.t_grid[k];
    c.checks.push_back(upper(label.str(), log_n * log_n,
                             ens.quantile_count(1, k, 0.95)));
  }
  return c;
}

Criterion criterion5() {
  Criterion c;
  c.index = 5;
  c.name = "fluid limit, canonical parameters (node J on scale N^a)";
  const std::uint64_t n = 100000;
  const double log_cubed = std::pow(log_n_of(n), 3.0);
  auto plan = make_plan(canonical_j2(), {0.5}, 50, kMasterSeed);
  plan.fluid_t_grid = {0.5, 1.0, 2.0};
  const auto result = run_ensemble(plan, n);
  const auto& fluid = *result.fluid;
  for (std::size_t k = 0; k < plan.fluid_t_grid.size(); ++k) {
    const double t = plan.fluid_t_grid[k];
    const auto predicted = fluid_limit(plan.params, t);
    {
      std::ostringstream label;
      label << "node 0 mean/N at t=" << t;
      c.checks.push_back(rel(label.str(), predicted[0].value,
                             fluid.mean_count(0, k) / static_cast<double>(n),
                             0.10));
    }
    {
      std::ostringstream label;
      label << "node 2 mean/N^(2/3) at t=" << t;
      const double scale =
          std::pow(static_cast<double>(n), predicted[2].exponent);
      c.checks.push_back(rel(label.str(), predicted[2].value,
                             fluid.mean_count(2, k) / scale, 0.15));
    }
    {
      std::ostringstream label;
      label << "node 1 mean/(log N)^3 at t=" << t;
      c.checks.push_back(
          upper(label.str(), 0.15, fluid.mean_count(1, k) / log_cubed));
    }
    {
      // The equilibrated node-1 queue keeps a log(1+L_1) term inside the
      // capacity share, which multiplies node 2's level by exp(-E log(1+L1)).
      // Recorded here because it explains the node-2 deviation above.
      double mean_log_l1 = 0.0;
      for (std::size_t r = 0; r < fluid.replicas; ++r) {
        mean_log_l1 +=
            std::log1p(static_cast<double>(fluid.count(r, k, 1)));
      }
      mean_log_l1 /= static_cast<double>(fluid.replicas);
      std::ostringstream note;
      note << "t=" << t << ": exp(-mean log(1+L1)) = "
           << std::exp(-mean_log_l1) << ", node-2 measured/predicted = "
           << (fluid.mean_count(2, k) /
               std::pow(static_cast<double>(n), predicted[2].exponent)) /
                  predicted[2].value;
      c.notes.push_back(note.str());
    }
  }
  return c;
}

Criterion criterion6() {
  Criterion c;
  c.index = 6;
  c.name = "fluid limit, heavy loads (all nodes linear in N)";
  const std::uint64_t n = 100000;
  auto plan = make_plan(heavy_j2(), {0.5}, 50, kMasterSeed);
  plan.fluid_t_grid = {0.5};
  const auto result = run_ensemble(plan, n);
  const auto& fluid = *result.fluid;
  const auto predicted = fluid_limit(plan.params, 0.5);
  for (int j = 0; j <= 2; ++j) {
    std::ostringstream label;
    label << "node " << j << " mean/N at t=0.5";
    c.checks.push_back(rel(label.str(), predicted[j].value,
                           fluid.mean_count(j, 0) / static_cast<double>(n),
                           0.10));
  }
  return c;
}

Criterion criterion7() {
  Criterion c;
  c.index = 7;
  c.name = "phase interleaving for three peripheral nodes";
  const std::uint64_t n = 100000;
  auto plan = make_plan(staircase_j3(), {0.08, 0.2, 0.4, 0.7, 0.95}, 100,
                        kMasterSeed);
  const auto ens = *run_ensemble(plan, n).exponent;
  const auto profile = exponent_profile(plan.params);
  const double band = exponent_band(plan.tolerances, n);
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    for (int j = 1; j <= 3; ++j) {
      std::ostringstream label;
      label << "mean Y" << j << " at t=" << plan.t_grid[k];
      c.checks.push_back(absolute(label.str(),
                                  profile.value(j, plan.t_grid[k]),
                                  ens.mean_exponent(j, k), band));
    }
  }
  return c;
}

Criterion criterion8() {
  Criterion c;
  c.index = 8;
  c.name = "supremum tail bound for subcritical excursions";
  const int n = 100000;
  BirthDeathSpec spec{1.0, 2.0, 1, std::nullopt};
  // Excursions from 1 with death rate 2 die in O(1) time; a window of 50
  // truncates nothing at this sample size.
  std::vector<int> hits(9, 0);
  for (int r = 0; r < n; ++r) {
    const auto s =
        simulate_birth_death(spec, 50.0, replica_seed(kMasterSeed, 0xC8, r));
    for (int x = 1; x <= 8; ++x) {
      if (s.sup_before_zero >= x) ++hits[x];
    }
  }
  for (int x = 1; x <= 8; ++x) {
    const double p = hits[x] / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / n);
    std::ostringstream label;
    label << "P(sup >= " << x << ")";
    c.checks.push_back(
        upper(label.str(), kingman_bound(1.0, 2.0, x) + 3.0 * se, p));
  }
  return c;
}

Criterion criterion9() {
  Criterion c;
  c.index = 9;
  c.name = "zero-mean martingale residual on the falling segment";
  const std::uint64_t n = 100000;
  const std::size_t replicas = 200;
  const auto params = canonical_j2();

  std::vector<double> grid;
  for (double t = 0.145; t < 0.23 - 1e-12; t += 0.01) grid.push_back(t);

  std::vector<double> times(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    times[k] = std::pow(static_cast<double>(n), grid[k]);
  }
  QueueState init{{static_cast<std::int64_t>(n), 0, 0}};
  std::vector<Trajectory> ensemble(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    SimConfig cfg;
    cfg.seed = replica_seed(kMasterSeed, 0xC9, r);
    cfg.horizon = times.back();
    cfg.sample_times = times;
    ensemble[r] = simulate(params, init, cfg);
  }

  const auto diag = harmonic_residual(params, ensemble, n, 2, grid);
  std::size_t inside = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool ok = std::abs(diag.residual[k]) <= 3.0 * diag.band[k];
    inside += ok ? 1 : 0;
    std::ostringstream note;
    note << "t=" << grid[k] << " residual=" << diag.residual[k]
         << " band=" << diag.band[k] << (ok ? "" : "  <-- outside");
    c.notes.push_back(note.str());
  }
  const double fraction = inside / static_cast<double>(grid.size());
  std::ostringstream label;
  label << "fraction of " << grid.size() << " grid points within 3 SE";
  c.checks.push_back(
      {label.str(), 0.9, fraction, "fraction >= 0.9", fraction >= 0.9});
  return c;
}

Criterion criterion10() {
  Criterion c;
  c.index = 10;
  c.name = "stability dichotomy";
  {
    ExperimentPlan plan;
    plan.params = {2, {0.2, 0.1, 0.25}, {1.0, 1.0, 1.0}};
    plan.n_values = {100000};
    plan.replicas = 2;
    plan.t_grid = {0.5};
    plan.master_seed = kMasterSeed;
    for (const auto& e : verify_stability(plan)) {
      c.checks.push_back({"stable: " + e.id, e.predicted, e.measured,
                          to_string(e.comparison), e.pass});
    }
  }
  {
    ExperimentPlan plan;
    plan.params = {2, {0.7, 0.2, 0.5}, {1.0, 1.0, 1.0}};
    plan.n_values = {100000};
    plan.replicas = 30;
    plan.t_grid = {0.5};
    plan.master_seed = kMasterSeed;
    for (const auto& e : verify_stability(plan)) {
      c.checks.push_back({"unstable: " + e.id, e.predicted, e.measured,
                          to_string(e.comparison), e.pass});
    }
  }
  return c;
}

struct SegmentErrors {
  double product_15 = 0.0;
  double product_20 = 0.0;
  double y1_20 = 0.0;
  double y2_20 = 0.0;
  double prefactor_20 = 0.0;

  // One error per criterion: the worst deviation across its checks, each
  // normalized by the tolerance that criterion pins (so the scalar is the
  // fraction of the allowed band that the measurement uses up).
  double criterion2(double band) const {
    return std::max(product_15, product_20) / band;
  }
  double criterion3(double band) const {
    return std::max({y1_20 / band, y2_20 / band,
                     prefactor_20 / std::log(2.0)});
  }
};

SegmentErrors segment_errors(std::uint64_t n, std::size_t replicas) {
  const double alpha1 = alpha_of(0.2);
  auto plan = make_plan(canonical_j2(), {0.15, 0.20}, replicas, kMasterSeed);
  const auto ens = *run_ensemble(plan, n).exponent;
  const double log_n = log_n_of(n);

  SegmentErrors e;
  e.product_15 = std::abs(std::log(ens.mean_product(1, 0)) / log_n - alpha1);
  e.product_20 = std::abs(std::log(ens.mean_product(1, 1)) / log_n - alpha1);
  e.y1_20 = std::abs(ens.mean_exponent(1, 1) - (alpha1 - 0.20));
  e.y2_20 = std::abs(ens.mean_exponent(2, 1) - 0.20);
  const double ratio =
      ens.mean_count(2, 1) / std::pow(static_cast<double>(n), 0.20) / 0.2;
  e.prefactor_20 = std::abs(std::log(ratio));
  return e;
}

Criterion criterion11() {
  Criterion c;
  c.index = 11;
  c.name = "errors shrink along the N sweep (criteria 2-3)";
  // The horizons N^t are tiny here, so replicas are cheap; 4000 of them push
  // the Monte-Carlo noise on each error estimate well below the bias gaps
  // between consecutive N values.
  const std::size_t replicas = 4000;
  const std::vector<std::uint64_t> n_values = {1000, 10000, 100000, 1000000};
  std::vector<SegmentErrors> errors;
  for (auto n : n_values) errors.push_back(segment_errors(n, replicas));

  // Tolerances as pinned by criteria 2 and 3 themselves (at N = 1e5).
  const double band = 0.05 + 2.0 / std::log(1e5);

  auto series_check = [&](const std::string& label, auto pick,
                          bool is_check) {
    std::ostringstream values;
    int inversions = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      const double v = pick(errors[i]);
      values << (i ? ", " : "") << v;
      if (i > 0 && v > prev) ++inversions;
      prev = v;
    }
    c.notes.push_back(label + ": " + values.str());
    if (!is_check) return;
    Check check;
    check.label = label + " inversions";
    check.predicted = 1.0;
    check.measured = inversions;
    check.rule = "inversions <= 1";
    check.pass = inversions <= 1;
    c.checks.push_back(check);
  };

  series_check("criterion-2 error",
               [&](const SegmentErrors& e) { return e.criterion2(band); },
               true);
  series_check("criterion-3 error",
               [&](const SegmentErrors& e) { return e.criterion3(band); },
               true);

  // raw components, for the record
  series_check("  product t=0.15",
               [](const SegmentErrors& e) { return e.product_15; }, false);
  series_check("  product t=0.20",
               [](const SegmentErrors& e) { return e.product_20; }, false);
  series_check("  Y1 t=0.20", [](const SegmentErrors& e) { return e.y1_20; },
               false);
  series_check("  Y2 t=0.20", [](const SegmentErrors& e) { return e.y2_20; },
               false);
  series_check("  prefactor t=0.20",
               [](const SegmentErrors& e) { return e.prefactor_20; }, false);
  return c;
}

struct TheoryCase {
  std::string name;
  NetworkParams params;
  int kappa = 0;
  CaseLabel label = CaseLabel::Case1;
  bool cond_c = false;
  double t_zero = 0.0;
  bool stable = false;
};

Criterion criterion12() {
  Criterion c;
  c.index = 12;
  c.name = "closed-form analytics at machine precision";
  const std::vector<TheoryCase> cases = {
      {"J2 Case3 stable", canonical_j2(), 2, CaseLabel::Case3, false,
       10.0 / 3.0, true},
      {"J2 Case1", heavy_j2(), 0, CaseLabel::Case1, true, 7.5, false},
      {"J2 Case2a", {2, {0.2, 0.3, 0.6}, {1, 1, 1}}, 1, CaseLabel::Case2a,
       true, 10.0 / 3.0, true},
      {"J2 Case2b", {2, {0.2, 0.55, 0.7}, {1, 1, 1}}, 1, CaseLabel::Case2b,
       false, 4.0, true},
      {"J3 Case2a", {3, {0.25, 0.2, 1.0 / 3.0, 2.0 / 3.0}, {1, 1, 1, 1}}, 2,
       CaseLabel::Case2a, true, 4.0, true},
      {"J3 Case3", staircase_j3(), 3, CaseLabel::Case3, false, 95.0 / 31.0,
       true},
      {"J3 Case1", {3, {0.1, 0.76, 0.8, 0.85}, {1, 1, 1, 1}}, 0,
       CaseLabel::Case1, true, 20.0 / 3.0, true},
      {"J3 Case2b k=1", {3, {0.2, 0.7, 0.75, 0.8}, {1, 1, 1, 1}}, 1,
       CaseLabel::Case2b, false, 10.0, false},
      {"J3 Case2b k=2", {3, {0.15, 0.3, 0.6, 0.7}, {1, 1, 1, 1}}, 2,
       CaseLabel::Case2b, false, 4.0, true},
      {"J4 Case2a mixed rates",
       {4, {0.4, 0.15, 0.5, 1.0, 0.8}, {2, 1, 2, 3, 1}}, 3, CaseLabel::Case2a,
       true, 5.0 / 3.0, false},
      {"J1 Case1", {1, {0.3, 0.8}, {1, 1}}, 0, CaseLabel::Case1, true, 5.0,
       false},
      {"J1 Case3", {1, {0.3, 0.4}, {1, 1}}, 1, CaseLabel::Case3, false,
       10.0 / 3.0, true},
      {"J2 Case3 unstable", {2, {0.7, 0.2, 0.4}, {1, 1, 1}}, 2,
       CaseLabel::Case3, false, kInf, false},
  };

  auto exact = [&](const std::string& label, double expected, double actual,
                   double tol) {
    Check check;
    check.label = label;
    check.predicted = expected;
    check.measured = actual;
    check.rule = "machine precision";
    if (std::isinf(expected)) {
      check.pass = std::isinf(actual) && actual > 0;
    } else {
      check.pass = std::abs(actual - expected) <=
                   tol * std::max(1.0, std::abs(expected));
    }
    c.checks.push_back(check);
  };

  for (const auto& tc : cases) {
    const auto rr = regime(tc.params);
    exact(tc.name + ": kappa", tc.kappa, rr.kappa, 0.0);
    exact(tc.name + ": case", static_cast<double>(tc.label),
          static_cast<double>(rr.case_label), 0.0);
    exact(tc.name + ": condition C", tc.cond_c ? 1 : 0,
          rr.condition_C ? 1 : 0, 0.0);
    exact(tc.name + ": t_zero", tc.t_zero, rr.t_zero, 1e-12);
    exact(tc.name + ": stable", tc.stable ? 1 : 0, rr.stable ? 1 : 0, 0.0);

    // knot identities and the exponent-sum law
    const auto profile = exponent_profile(tc.params);
    double worst_knot = 0.0, worst_sum = 0.0;
    for (int j = 1; j <= tc.params.J; ++j) {
      const auto& pn = profile.at(j);
      const double alpha = profile.alpha[j - 1];
      worst_knot = std::max(
          worst_knot,
          std::abs(pn.peak_time * (tc.params.J - j + 1) - alpha));
      if (j < tc.params.J) {
        worst_knot = std::max(
            worst_knot, std::abs(pn.vanish_time * (tc.params.J - j) - alpha));
        const double lo = pn.peak_time;
        const double hi = std::min(pn.vanish_time, 1.0);
        for (int i = 1; i < 20; ++i) {
          const double t = lo + (hi - lo) * i / 20.0;
          if (t <= lo || t >= hi) continue;
          worst_sum = std::max(
              worst_sum, std::abs(profile.value(j, t) +
                                  (tc.params.J - j) * t - alpha));
        }
      }
    }
    exact(tc.name + ": breakpoint identities", 0.0, worst_knot, 1e-13);
    exact(tc.name + ": exponent-sum identity", 0.0, worst_sum, 1e-13);
  }

  // gamma coefficients, spot-checked per case family
  {
    const auto v = fluid_limit(canonical_j2(), 1.0);
    exact("Case3 gamma_0(1)", 0.7, v[0].value, 1e-12);
    exact("Case3 node-2 value", std::pow(0.7, 0.4 / 0.6), v[2].value, 1e-12);
    exact("Case3 node-2 scale exponent", 0.4 / 0.6, v[2].exponent, 1e-12);
    const auto clamped = fluid_limit(canonical_j2(), 5.0);
    exact("Case3 gamma_0 clamped", 0.0, clamped[0].value, 0.0);
  }
  {
    const auto v = fluid_limit(heavy_j2(), 1.0);
    exact("Case1 gamma_0(1)", 1.0 + (0.2 - 1.0 / 3.0), v[0].value, 1e-12);
    exact("Case1 gamma_1(1)", 0.7 - 2.0 / 3.0, v[1].value, 1e-12);
    exact("Case1 gamma_2(1)", 0.8 - 2.0 / 3.0, v[2].value, 1e-12);
  }
  {
    const NetworkParams p{2, {0.2, 0.3, 0.6}, {1, 1, 1}};
    const auto v = fluid_limit(p, 0.9);
    exact("Case2a gamma_0(0.9)", 1.0 + (0.2 - 0.5) * 0.9, v[0].value, 1e-12);
    exact("Case2a gamma_2(0.9)", (0.6 - 0.5) * 0.9, v[2].value, 1e-12);
  }
  {
    const NetworkParams p{2, {0.2, 0.55, 0.7}, {1, 1, 1}};
    const auto v = fluid_limit(p, 1.3);
    exact("Case2b gamma_0(1.3)", 1.0 + (0.2 + 0.55 - 1.0) * 1.3, v[0].value,
          1e-12);
    exact("Case2b pivot value", 1.0 / (0.15 * 1.3), v[1].value, 1e-12);
    exact("Case2b pivot exponent", alpha_of(0.55) - 1.0, v[1].exponent,
          1e-12);
    exact("Case2b gamma_2(1.3)", 0.15 * 1.3, v[2].value, 1e-12);
  }
  {
    const NetworkParams p{4, {0.4, 0.15, 0.5, 1.0, 0.8}, {2, 1, 2, 3, 1}};
    const auto v = fluid_limit(p, 1.0);
    exact("J4 Case2a gamma_0(1)", 1.0 + 2.0 * (0.2 - 0.5), v[0].value, 1e-12);
    exact("J4 Case2a gamma_4(1)", 0.8 - 0.5, v[4].value, 1e-12);
  }

  // classification is scale-free; emptying time scales inversely
  {
    NetworkParams fast = canonical_j2();
    for (auto& x : fast.lambda) x *= 3.7;
    for (auto& x : fast.mu) x *= 3.7;
    const auto rr = regime(fast);
    exact("rescaled kappa", 2, rr.kappa, 0.0);
    exact("rescaled t_zero", (10.0 / 3.0) / 3.7, rr.t_zero, 1e-12);
  }
  return c;
}

void print_criterion(const Criterion& c) {
  std::printf("%s criterion %2d: %s (%.1fs)\n", c.pass() ? "[PASS]" : "[FAIL]",
              c.index, c.name.c_str(), c.seconds);
  if (!c.pass()) {
    for (const auto& check : c.checks) {
      if (check.pass) continue;
      std::printf("        FAIL %s: measured=%.6g predicted=%.6g (%s)\n",
                  check.label.c_str(), check.measured, check.predicted,
                  check.rule.c_str());
    }
  }
  for (const auto& note : c.notes) {
    std::printf("        note: %s\n", note.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  using CriterionFn = Criterion (*)();
  const CriterionFn criteria[] = {
      criterion1, criterion2, criterion3,  criterion4,  criterion5,
      criterion6, criterion7, criterion8,  criterion9,  criterion10,
      criterion11, criterion12,
  };

  int failures = 0;
  int index = 0;
  for (const auto& fn : criteria) {
    ++index;
    if (only != 0 && only != index) continue;
    const auto start = std::chrono::steady_clock::now();
    Criterion c = fn();
    c.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    print_criterion(c);
    if (!c.pass()) ++failures;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
