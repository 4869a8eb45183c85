#pragma once

#include <string>

#include <json.hpp>

#include "config.hpp"

namespace oscbath::runner {

/// Outcome of one CLI command. exit_code is 0 only when every internal
/// consistency check passed. The CSV table is byte-deterministic for a fixed
/// config (fixed column order, "%.12g" formatting, schema comment line).
struct RunResult {
    int exit_code = 1;
    std::string csv;
    std::string series_csv; // optional raw time series (oracle)
    nlohmann::json report;
    std::string summary;    // short human-readable lines
};

/// command is one of: moments, temperature, thermometer, correlations,
/// oracle, errata, sweep.
RunResult run_command(const std::string& command, const config::RunConfig& cfg);

/// Writes the primary artifact (csv or json per config) to out_path (or the
/// config's output.path); the oracle's raw series lands next to it with a
/// ".series.csv" suffix. Empty path: nothing is written.
void write_artifacts(const RunResult& r, const config::RunConfig& cfg,
                     const std::string& out_path_override);

} // namespace oscbath::runner
