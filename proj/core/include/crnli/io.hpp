#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

#include "crnli/fixed_points.hpp"
#include "crnli/integrate.hpp"
#include "crnli/stability.hpp"
#include "crnli/sweep.hpp"

namespace crnli {

using ordered_json = nlohmann::ordered_json;

/// Network interchange format: {"n": int, "edges": [[i, j], ...]} with
/// 1-based node indices.
ordered_json network_to_json(const CRNetwork& network);
CRNetwork network_from_json(const ordered_json& j);

/// Parameter interchange format:
/// {"f": [..], "p": .., "c": .., "b": .., "alpha": .., "beta": ..}.
ordered_json params_to_json(const ModelParameters& params);
ModelParameters params_from_json(const ordered_json& j);

ordered_json state_to_json(const SystemState& state);
SystemState state_from_json(const ordered_json& j);

ordered_json support_to_json(const SupportPattern& support);  // 1-based
SupportPattern support_from_json(const ordered_json& j);

/// Solution report: state, 1-based supports, labels, group, conditions in
/// structured and rendered form, residual and stationary-space kernel
/// dimensions.
ordered_json solution_to_json(const FixedPointSolution& solution,
                              const CRNetwork& network, const ModelParameters& params,
                              const StabilityReport* stability = nullptr);

ordered_json stability_report_to_json(const StabilityReport& report);
ordered_json factor_check_to_json(const FactorCheck& check);
ordered_json sweep_result_to_json(const SweepResult& result, bool include_records = true);
ordered_json no_altruism_report_to_json(const NoAltruismReport& report);

/// CSV with header "t,x1..xn,r1..rn"; every stride-th sample plus the final
/// one.
std::string trajectory_to_csv(const Trajectory& trajectory, int stride = 1);

std::string sweep_records_to_csv(const SweepResult& result);

/// Write-to-temp-then-rename so readers never observe partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

ordered_json load_json_file(const std::filesystem::path& path);

}  // namespace crnli
