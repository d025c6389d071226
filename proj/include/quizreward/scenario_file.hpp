#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "quizreward/simulator.hpp"

namespace quizreward {

inline constexpr int kReportSchemaVersion = 1;

/// Strict scenario parsing: {config, population, simulation}, unknown fields
/// rejected, every constraint re-checked. Failures are ValidationErrors whose
/// message names the field ("config.cp: must lie in (0,1]"), the JSON error
/// position, or the unreadable path.
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& text);
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// FNV-1a 64 of the canonical scenario JSON, as "fnv1a64:<16 hex digits>".
std::string scenario_hash(const Scenario& scenario);

/// {"micros": N, "decimal": "X.XXXXXX"}
nlohmann::json money_to_json(Money amount);
nlohmann::json money_to_json(SignedMoney amount);

nlohmann::json report_to_json(const SimReport& report);
SimReport report_from_json(const nlohmann::json& value);
nlohmann::json stats_to_json(const Stats& stats);

/// Full `simulate` output document: schema header, scenario, per-trial
/// reports and the trial summary.
nlohmann::json simulation_document(const Scenario& scenario, const TrialSummary& summary);

void write_sweep_csv(std::ostream& out, std::span<const SweepParameter> grid,
                     std::span<const SweepRow> rows);

}  // namespace quizreward
