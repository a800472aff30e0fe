#pragma once

#include <utility>
#include <vector>

#include "jacobi_cli/config.hpp"
#include "jacobi_cli/report.hpp"

namespace jacobi::cli {

/// Runs one scenario. Library errors are recorded per verdict (or in
/// `errors` when they stop the scenario); ConfigError propagates.
RunReport run_scenario(const ScenarioConfig& config);

/// (t, sigma_min) samples of the subspace's evaluation map over the config's
/// "trace" interval (or its first interval). `samples` overrides the config.
std::vector<std::pair<double, double>> sigma_trace(const ScenarioConfig& config, int samples = 0);
std::string trace_csv(const std::vector<std::pair<double, double>>& trace);

}  // namespace jacobi::cli
