#pragma once

#include <string>
#include <vector>

#include "errors.hpp"

namespace oscbath {

/// Validated physical parameters of the oscillator + field + thermometer model
/// (natural units, hbar = 1, unit mass).
///
///   omega      oscillator frequency, > 0
///   eps        oscillator-field coupling, >= 0; Ohmic damping rate gamma = eps^2/2
///   cutoff     sharp UV cutoff used by the logarithmically divergent <p^2>, > omega
///   lambda_th  thermometer frequency, > 0
///   mu         thermometer-oscillator coupling (frequency^2), >= 0
struct ModelParams {
    double omega = 1.0;
    double eps = 1.0;
    double cutoff = 1e3;
    double lambda_th = 0.7;
    double mu = 0.0;

    // True when cutoff < 10 * max(omega, eps^2): the cutoff is not deep in the
    // UV relative to the dynamical scales, so log-divergent quantities carry
    // O(1) finite-cutoff corrections.
    bool cutoff_warning = false;

    double gamma() const { return 0.5 * eps * eps; }
};

enum class Regime { Underdamped, Critical, Overdamped };

/// Validates a raw parameter record. Throws Error with a diagnostic listing
/// every violated invariant; the status code is the first violation's.
ModelParams validate(double omega, double eps, double cutoff, double lambda_th, double mu);

/// Exact comparison of eps^2 against 4*omega; the boundary is Critical.
Regime classify_regime(const ModelParams& p);

const char* regime_name(Regime r);

} // namespace oscbath
