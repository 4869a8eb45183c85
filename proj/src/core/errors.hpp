#pragma once

#include <stdexcept>
#include <string>

namespace oscbath {

// Status codes shared with the C API (values must match ob_status in oscbath.h).
enum class Status : int {
    ok = 0,
    invalid_argument = 1,
    nonpositive_frequency = 2,
    cutoff_below_resonance = 3,
    thermometer_unstable = 4,
    no_convergence = 5,
    non_integrable_tail = 6,
    unphysical_covariance = 7,
    closed_form_undefined = 8,
    route_disagreement = 9,
    insufficient_range = 10,
    non_exponential_profile = 11,
    config_invalid = 12,
    parse_error = 13,
    unknown_key = 14,
    type_mismatch = 15,
    step_unstable = 16,
    no_plateau = 17,
    io_error = 18,
    internal_error = 19,
};

class Error : public std::runtime_error {
public:
    Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Status code() const noexcept { return code_; }

private:
    Status code_;
};

} // namespace oscbath
