#pragma once

#include <string>
#include <vector>

#include "gaussian.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace oscbath::spectral {

/// Stationary spectral density of q: S_qq(w) = (eps^2/2pi) w / ((w^2-W^2)^2 + (eps^2 w/2)^2),
/// w >= 0. Numerator is first power of w (errata E1); integrable tail ~ w^-3.
double s_qq(double w, const ModelParams& p);

/// S_pp = w^2 S_qq; tail ~ (eps^2/2pi)/w, logarithmically divergent (needs the cutoff).
double s_pp(double w, const ModelParams& p);

/// Two-sided (even) density, defined for any real w.
double s_qq_two_sided(double w, const ModelParams& p);

/// The as-printed <q^2> integrand with w^2 in the numerator (errata E1,
/// kept evaluable for the report; dimensionally wrong, gives 1/2 at any Omega).
double s_qq_printed_integrand(double w, const ModelParams& p);

/// Resonance hints for the quadrature engine (peak location and half-width,
/// or the two overdamped pole scales).
std::vector<quad::Peak> resonance_hints(const ModelParams& p);

struct Moment {
    double value = 0.0;
    double err = 0.0;
};

/// <q^2>: cutoff-free integral over [0, inf).
Moment moment_qq(const ModelParams& p, double tol = 1e-10);

/// <qp+pq>/2 is identically zero (odd two-sided integrand).
double moment_qp(const ModelParams& p);

/// Companion check: numerically integrates the folded odd integrand
/// h(w) + h(-w) over [0, cutoff]; |result| < 1e-10 certifies antisymmetry.
double moment_qp_residual(const ModelParams& p, double tol = 1e-12);

/// <p^2> with the sharp cutoff taken from p.cutoff (or an explicit override).
Moment moment_pp(const ModelParams& p, double tol = 1e-10);
Moment moment_pp_at_cutoff(const ModelParams& p, double cutoff, double tol = 1e-10);

/// Symmetric two-time correlator <q(t)q(t-tau) + q(t-tau)q(t)>; equals
/// 2*moment_qq at tau = 0 and is even in tau.
double autocorrelation_q(const ModelParams& p, double tau, double tol = 1e-9);

/// (moment_qq, 0, moment_pp) assembled as a Covariance2.
Covariance2 stationary_covariance(const ModelParams& p, double tol = 1e-10);

// ---- Gaussian-smeared coupling variants -----------------------------------
// With coupling profile f(x) Gaussian of width sigma the response denominator
// becomes D_s(w) = W^2 - w^2 + (eps^2/sqrt(pi)) w Daw(sigma w)
//                + i (eps^2/2) w exp(-sigma^2 w^2),
// and the noise numerator carries the same window exp(-sigma^2 w^2). These are
// what a smeared lattice realizes; used by the oracle comparisons.
double s_qq_smeared(double w, const ModelParams& p, double sigma);
Moment moment_qq_smeared(const ModelParams& p, double sigma, double tol = 1e-10);
Moment moment_pp_smeared(const ModelParams& p, double sigma, double tol = 1e-10);
double autocorrelation_q_smeared(const ModelParams& p, double sigma, double tau,
                                 double tol = 1e-9);

// ---- closed forms ----------------------------------------------------------

/// Corrected closed form of <q^2> (underdamped eps^2 < 4W or overdamped);
/// matches the quadrature to machine precision. Throws ClosedFormUndefined at
/// the critical boundary.
double qq_closed_form(const ModelParams& p);

/// Large-cutoff closed form of <p^2>: (W^2 - eps^4/8) <q^2> + (eps^2/2pi) ln(cutoff/W).
double pp_closed_form(const ModelParams& p, double qq);

/// The as-printed source expressions, evaluated verbatim (may be NaN where the
/// printed root turns negative). Never used as ground truth.
double qq_printed_closed_form(const ModelParams& p);
double pp_printed_closed_form(const ModelParams& p, double qq);

struct ClosedFormEntry {
    std::string quantity;
    double printed = 0.0;
    double rederived = 0.0;
    double quadrature = 0.0;
    std::string note;
};

struct ClosedFormsReport {
    Regime regime;
    std::vector<ClosedFormEntry> entries;
};

/// Three-column comparison: printed vs rederived vs quadrature.
ClosedFormsReport closed_forms_report(const ModelParams& p, double tol = 1e-10);

} // namespace oscbath::spectral
