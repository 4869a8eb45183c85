#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace oscbath::quad {

/// Result of an adaptive integration. `converged` is true when the
/// accumulated error estimate met the requested tolerance within the panel
/// budget; the estimate stays honest either way.
struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    int panels = 0;
    bool converged = false;
};

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
    int panels = 0;
    bool converged = false;
};

/// A known sharp feature of the integrand: adaptive refinement alone misses
/// Lorentzians with width/position below ~1e-6, so callers seed them.
struct Peak {
    double center = 0.0;
    double width = 0.0;
};

struct Options {
    double tol = 1e-10;          // absolute tolerance on the integral
    int max_panels = 20000;
    std::vector<Peak> peaks;     // resonance hints
};

/// Adaptive Gauss-Kronrod 7-15 integration of f over [lo, hi].
/// hi may be +infinity: the tail is folded in by the change of variable
/// w = lo + t/(1-t) on t in [0,1), never by truncation. Requires the
/// integrand to decay at least as w^-2 towards +infinity; a cheap probe
/// rejects non-integrable tails (Status::non_integrable_tail).
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const Options& opt = {});

/// Evaluates \int f(w) e^{i w k} dw over [lo, hi] with k >= 0. Initial panels
/// are seeded at a density proportional to k so the phase is resolved from the
/// start; k = 0 reduces to integrate() on the complex amplitude.
QuadResultC integrate_phase(const std::function<std::complex<double>(double)>& f, double k,
                            double lo, double hi, const Options& opt = {});

/// Finite-interval phase integral plus an analytic two-term tail correction:
///   \int_lo^inf f(w) e^{iwk} dw ~ GK[lo, W] + e^{iWk} (f(W)/(-ik) + f'(W)/(ik)^2 ...)
/// Valid for amplitudes decaying like a rational function (f ~ c/w^2). Used by
/// the correlator and commutator integrals where truncation alone cannot reach
/// 1e-8 absolute. f_prime may be null; it is then taken by central difference.
QuadResultC phase_integral_semi_infinite(const std::function<std::complex<double>(double)>& f,
                                         const std::function<std::complex<double>(double)>& f_prime,
                                         double k, double lo, double W, const Options& opt = {});

} // namespace oscbath::quad
