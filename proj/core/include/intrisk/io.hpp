#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intrisk/acceptance.hpp"
#include "intrisk/report.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk {

/// Parsed scenario file: the probability space plus named positions and assets.
struct ScenarioFile {
    ScenarioSpace space;
    std::map<std::string, Position> positions;
    std::map<std::string, EligibleAsset> assets;
};

/// Load a scenario file. JSON schema:
///   { "probabilities": [p1..pN],
///     "positions": { name: {"initial_value": v, "payoff": [..]} },
///     "assets":    { name: {"initial_price": v, "payoff": [..]} } }
/// Files ending in .csv are parsed as
///   scenario,probability,<name1>,<name2>,...
/// with one row per scenario; initial values then come from a sidecar config
/// `<stem>.meta.json` of the form
///   { "positions": { name: {"initial_value": v} },
///     "assets":    { name: {"initial_price": v} } }.
/// Malformed content raises InputError with line/field diagnostics.
ScenarioFile load_scenarios(const std::string& path);

/// Load an acceptance-set config:
///   {"kind":"var"|"es","alpha":0.05}
///   {"kind":"generator","generators":[[..],[..]],"bounds":[c1,c2]}
/// `alpha_override` replaces the file's alpha for var/es kinds.
AcceptanceSet load_acceptance_set(const std::string& path, const ScenarioSpace& space,
                                  std::optional<double> alpha_override = std::nullopt);

/// Load a user-supplied dual sample: {"measures": [[..],[..]]}.
std::vector<DualMeasure> load_dual_sample(const std::string& path, const ScenarioSpace& space);

/// Serialise a report to the JSON schema
///   {"intrinsic": r, "monetary": m|"inf", "capital": {...}, "altered": {...},
///    "returns": {...}, "sharpe": {...}, "certificates": {...}}
/// returned as a serialised string (indented).
std::string report_to_json(const RiskReport& report);

/// Numeric fields of a parsed report, used to verify that emitted JSON
/// round-trips against a recomputation.
struct ParsedReport {
    double intrinsic = 0.0;
    double monetary = 0.0;
    bool monetary_finite = true;
    double capital_intrinsic = 0.0;
    double capital_traditional = 0.0;
    std::vector<double> altered_intrinsic;
    std::vector<double> altered_traditional;
    std::vector<double> return_intrinsic;
    std::vector<double> return_traditional;
};

ParsedReport parse_report_json(const std::string& text);

}  // namespace intrisk
