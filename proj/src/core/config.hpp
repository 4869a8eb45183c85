#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "model.hpp"

namespace oscbath::config {

/// Parsed run configuration. Flat `section.key=value` lines with `#` comments;
/// unknown keys are rejected with the offending line number.
struct RunConfig {
    ModelParams model;
    bool has_lattice = false;
    lattice::LatticeConfig lattice;
    std::string sweep_axis;            // empty: no sweep
    std::vector<double> sweep_values;
    std::string output_format = "csv"; // csv | json
    std::string output_path;
    double quad_tol = 1e-10;
    double fit_rms_max = 0.25;

    bool operator==(const RunConfig&) const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Emits every field explicitly in a fixed order; parse(serialize(c)) == c.
std::string serialize(const RunConfig& cfg);

} // namespace oscbath::config
