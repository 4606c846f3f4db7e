#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wcop/config.hpp"

namespace wcop {

inline constexpr const char* tool_version = "0.1.0";

struct CommandOutput {
    // Deterministic given (config, seed): no timestamps or timings.
    std::string report_json;
    std::string timing_json;
    // (file name, contents) pairs such as CSV point clouds.
    std::vector<std::pair<std::string, std::string>> artifacts;
    // False when a tagged check missed its tolerance.
    bool checks_passed = true;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand. Errors propagate as ConfigError, DomainError, PreconditionError or NumericalError.
CommandOutput run_command(const std::string& name, const ExperimentConfig& config);

/// Writes report.json, timing.json and the artifacts into `dir`, creating it if needed.
void write_outputs(const CommandOutput& output, const std::string& dir);

/// CSV with header `re,im`, one point per line at round-trip precision.
std::string points_csv(const std::vector<Complex>& points);

}  // namespace wcop
