#pragma once

#include <span>
#include <vector>

#include "errors.hpp"

namespace oscbath::fit {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;       // coefficient of determination
    double rms = 0.0;      // residual rms
    double slope_stderr = 0.0;
};

LinFit linear(std::span<const double> x, std::span<const double> y);

/// Local maxima of |y| with parabolic sub-sample interpolation. Used to trace
/// the envelope of oscillatory decaying profiles.
struct EnvelopePoint {
    double x;
    double y; // interpolated |value| at the peak
};
std::vector<EnvelopePoint> envelope_peaks(std::span<const double> x, std::span<const double> y,
                                          double floor);

/// Exponential decay-rate fit of the envelope of an oscillatory profile:
/// least squares on ln(envelope) vs x. Throws Status::insufficient_range when
/// fewer than 6 input points, fewer than 3 usable peaks, or the peak span is
/// under ~2 fitted decay lengths; Status::non_exponential_profile when the
/// log-residual rms exceeds rms_max.
struct DecayFit {
    double kappa = 0.0;
    double kappa_ci = 0.0;  // ~95% half-interval from the slope stderr
    double amplitude = 0.0; // envelope extrapolated to x = 0
    double fit_rms = 0.0;   // rms of ln-envelope residuals
    int n_peaks = 0;
};
DecayFit decay_rate(std::span<const double> x, std::span<const double> y, double rms_max = 0.25);

/// Richardson (Neville) extrapolation of f(h) to h = 0 in the variable h = mu^2.
/// Exact on polynomials in mu^2 of degree < n. `residual` is the magnitude of
/// the last correction; `monotone` is false when |f - limit| fails to shrink
/// with decreasing mu (NonMonotoneSequence warning).
struct Extrapolation {
    double limit = 0.0;
    double residual = 0.0;
    bool monotone = true;
};
Extrapolation richardson_mu2(std::span<const double> mus, std::span<const double> vals);

} // namespace oscbath::fit
