#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "logstar/harness.hpp"
#include "logstar/oracles.hpp"
#include "logstar/theory.hpp"

namespace logstar {

// JSON shapes for the report types. Infinite values are encoded as the
// string "inf" so reports survive strict JSON parsers; all parsers here
// reverse that, and written reports parse back to equal values.

nlohmann::json to_json(const NetworkParams& params);
NetworkParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RegimeReport& report);
RegimeReport regime_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExponentProfile& profile);

nlohmann::json to_json(const MartingaleDiagnostic& diag);

nlohmann::json to_json(const CriterionEntry& entry);
CriterionEntry criterion_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport verification_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepReport& report);

// Writes via a temp file in the same directory plus an atomic rename, so a
// crash never leaves a half-written report behind.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);

// Trajectory CSV: one row per (replica, grid value, node), floating-point
// fields printed with 17 significant digits so output is bit-stable.
std::string trajectories_csv(const EnsembleStats& stats);

std::string format_double(double value);

}  // namespace logstar
