#include "logstar/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace logstar {

namespace {

nlohmann::json encode_extended(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_extended(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("expected a number or \"inf\": " + s);
  }
  return j.get<double>();
}

}  // namespace

nlohmann::json to_json(const NetworkParams& params) {
  return {{"J", params.J}, {"lambda", params.lambda}, {"mu", params.mu}};
}

NetworkParams params_from_json(const nlohmann::json& j) {
  NetworkParams p;
  p.J = j.at("J").get<int>();
  p.lambda = j.at("lambda").get<std::vector<double>>();
  p.mu = j.at("mu").get<std::vector<double>>();
  return p;
}

nlohmann::json to_json(const RegimeReport& report) {
  nlohmann::json beta = nlohmann::json::array();
  for (double b : report.beta_star) beta.push_back(encode_extended(b));
  return {
      {"alpha", report.alpha},
      {"beta_star", beta},
      {"kappa", report.kappa},
      {"condition_C", report.condition_C},
      {"case_label", to_string(report.case_label)},
      {"t_zero", encode_extended(report.t_zero)},
      {"validity_horizon", encode_extended(report.validity_horizon)},
      {"stable", report.stable},
  };
}

RegimeReport regime_from_json(const nlohmann::json& j) {
  RegimeReport r;
  r.alpha = j.at("alpha").get<std::vector<double>>();
  for (const auto& b : j.at("beta_star")) {
    r.beta_star.push_back(decode_extended(b));
  }
  r.kappa = j.at("kappa").get<int>();
  r.condition_C = j.at("condition_C").get<bool>();
  r.case_label = case_label_from_string(j.at("case_label").get<std::string>());
  r.t_zero = decode_extended(j.at("t_zero"));
  r.validity_horizon = decode_extended(j.at("validity_horizon"));
  r.stable = j.at("stable").get<bool>();
  return r;
}

nlohmann::json to_json(const ExponentProfile& profile) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& pn : profile.nodes) {
    nodes.push_back({{"node", pn.node},
                     {"peak_time", encode_extended(pn.peak_time)},
                     {"vanish_time", encode_extended(pn.vanish_time)},
                     {"fall_slope", profile.fall_slope(pn.node)}});
  }
  return {{"J", profile.J}, {"alpha", profile.alpha}, {"nodes", nodes}};
}

nlohmann::json to_json(const MartingaleDiagnostic& diag) {
  return {{"times", diag.times},
          {"residual", diag.residual},
          {"band", diag.band}};
}

nlohmann::json to_json(const CriterionEntry& entry) {
  return {
      {"id", entry.id},
      {"N", entry.n},
      {"predicted", encode_extended(entry.predicted)},
      {"measured", encode_extended(entry.measured)},
      {"tolerance", entry.tolerance},
      {"comparison", to_string(entry.comparison)},
      {"error", encode_extended(entry.error)},
      {"pass", entry.pass},
      {"replicas", entry.replicas},
      {"seed", entry.seed},
  };
}

CriterionEntry criterion_from_json(const nlohmann::json& j) {
  CriterionEntry e;
  e.id = j.at("id").get<std::string>();
  e.n = j.at("N").get<std::uint64_t>();
  e.predicted = decode_extended(j.at("predicted"));
  e.measured = decode_extended(j.at("measured"));
  e.tolerance = j.at("tolerance").get<double>();
  e.comparison = comparison_from_string(j.at("comparison").get<std::string>());
  e.error = decode_extended(j.at("error"));
  e.pass = j.at("pass").get<bool>();
  e.replicas = j.at("replicas").get<std::size_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json criteria = nlohmann::json::array();
  for (const auto& entry : report.criteria) criteria.push_back(to_json(entry));
  return {
      {"params", to_json(report.params)},
      {"regime", to_json(report.regime)},
      {"master_seed", report.master_seed},
      {"criteria", criteria},
      {"overall_pass", report.overall_pass},
  };
}

VerificationReport verification_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.params = params_from_json(j.at("params"));
  r.regime = regime_from_json(j.at("regime"));
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  for (const auto& entry : j.at("criteria")) {
    r.criteria.push_back(criterion_from_json(entry));
  }
  r.overall_pass = j.at("overall_pass").get<bool>();
  return r;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"N", row.n}, {"id", row.id}, {"error", encode_extended(row.error)}});
  }
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& [id, ok] : report.id_verdicts) {
    verdicts.push_back({{"id", id}, {"non_increasing", ok}});
  }
  return {{"n_values", report.n_values},
          {"rows", rows},
          {"id_verdicts", verdicts},
          {"overall_pass", report.overall_pass}};
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string trajectories_csv(const EnsembleStats& stats) {
  std::string out = "replica,t,node,count\n";
  for (std::size_t r = 0; r < stats.replicas; ++r) {
    for (std::size_t k = 0; k < stats.t_grid.size(); ++k) {
      for (int j = 0; j < stats.nodes; ++j) {
        out += std::to_string(r);
        out += ',';
        out += format_double(stats.t_grid[k]);
        out += ',';
        out += std::to_string(j);
        out += ',';
        out += std::to_string(stats.count(r, k, j));
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace logstar
