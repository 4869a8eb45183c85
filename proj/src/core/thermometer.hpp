#pragma once

#include <complex>
#include <vector>

#include "fitting.hpp"
#include "gaussian.hpp"
#include "model.hpp"

namespace oscbath::thermometer {

/// Weakly coupled thermometer: stationary moments and thermal reading.
struct ThermometerResult {
    double mu = 0.0;
    double zz = 0.0;
    double pzpz = 0.0;
    double zpz = 0.0;            // identically zero
    double zz_err = 0.0;
    double pzpz_err = 0.0;
    double zpz_residual = 0.0;   // folded odd-integrand check
    bool degenerate_resonance = false;
    ThermalDiagnostics diagnostics;
};

/// S_zz(w) = (mu^2 eps^2 / 2pi) w / [ ((L^2-w^2)(W^2-w^2) - mu^2)^2
///                                   + (L^2-w^2)^2 w^2 eps^4/4 ],  w >= 0.
/// Prefactor 1/(2pi), fixed by <z^2> -> 1/(2 Lambda_th) as mu -> 0 (errata E4).
double s_zz(double w, const ModelParams& p);

/// The as-printed prefactor variant (2/2pi), kept for the errata report.
double s_zz_printed(double w, const ModelParams& p);

/// Complex pole displacement of the thermometer resonance, as displayed:
/// shift = mu^2 / (2 L (L^2 - W^2 + i eps^2/2)). Real part = peak displacement,
/// |imag| = half-width scale; exactly proportional to mu^2.
struct PoleShift {
    std::complex<double> shift;
    bool degenerate = false; // |L - W| < 10*gamma: displayed formula unreliable
};
PoleShift pole_shift(const ModelParams& p);

/// <z^2>, <p_z^2> by quadrature with peak hints at Lambda_th (width from the
/// pole shift) and at the q resonance. At eps = 0 exactly there is no bath and
/// the stationary state is the coupled two-oscillator ground state (the
/// eps -> 0+ limit), evaluated in closed form.
ThermometerResult thermometer_moments(const ModelParams& p, double tol = 1e-10);

/// Covariance of z in the ground state of the closed q-z pair (eps = 0).
Covariance2 coupled_ground_state_z(const ModelParams& p);
Covariance2 coupled_ground_state_q(const ModelParams& p);

/// Chains thermometer_moments into the Gaussian diagnostics.
ThermalDiagnostics thermometer_temperature(const ModelParams& p, double tol = 1e-10);

/// Richardson extrapolation of a mu-sweep to mu = 0 (model class: polynomial
/// in mu^2). Requires >= 3 results at distinct mu, identical other parameters.
struct MuLimit {
    double zz = 0.0;
    double pzpz = 0.0;
    double zz_residual = 0.0;
    double pzpz_residual = 0.0;
    bool monotone = true;
};
MuLimit extrapolate_mu_to_zero(const std::vector<ThermometerResult>& results);

} // namespace oscbath::thermometer
