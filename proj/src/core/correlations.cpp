#include "correlations.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "quadrature.hpp"
#include "spectral.hpp"

namespace oscbath::correlations {

namespace {

using cplx = std::complex<double>;

// response denominators: D(w) = -w^2 + i (eps^2/2) w + W^2, Dbar = conj on the real axis
cplx d_response(double w, const ModelParams& p)
{
    return {(p.omega - w) * (p.omega + w), 0.5 * p.eps * p.eps * w};
}

cplx dbar(double w, const ModelParams& p)
{
    return {(p.omega - w) * (p.omega + w), -0.5 * p.eps * p.eps * w};
}

cplx dbar_prime(double w, const ModelParams& p)
{
    const cplx d = dbar(w, p);
    const cplx dp(-2.0 * w, -0.5 * p.eps * p.eps);
    return -dp / (d * d); // d/dw (1/Dbar)
}

// \int_0^inf e^{iw|x|}/Dbar dw with truncation + two-term tail correction.
quad::QuadResultC half_line_phase_integral(const ModelParams& p, double x, double tol)
{
    const double scale = std::max({p.omega, p.gamma(), 1.0});
    auto f = [&p](double w) { return 1.0 / dbar(w, p); };
    auto fp = [&p](double w) { return dbar_prime(w, p); };

    quad::Options opt;
    opt.tol = tol;
    opt.peaks = spectral::resonance_hints(p);

    if (x == 0.0) {
        return quad::phase_integral_semi_infinite(f, fp, 0.0, 0.0, 50.0 * scale, opt);
    }
    // truncation W from the boundary-term remainder ~ 2/(x^2 W^3)
    const double W = std::max({30.0 * scale, 10.0 / x,
                               std::cbrt(2.0 / (x * x * std::max(tol, 1e-12)))});
    return quad::phase_integral_semi_infinite(f, fp, x, 0.0, std::min(W, 3e5), opt);
}

} // namespace

double cloud_component(const ModelParams& p, double x, double tol)
{
    return -0.5 * p.eps * spectral::autocorrelation_q(p, std::abs(x), tol);
}

QPhiResult qphi_symmetric(const ModelParams& p, double x, double tol)
{
    QPhiResult out;
    const double ax = std::abs(x);
    out.scale = p.eps * spectral::moment_qq(p, 1e-10).value;

    if (p.eps == 0.0) {
        out.scale = 0.0;
        return out;
    }

    // fourier route: the term e^{-iw|x|}/D(w) is evaluated as the conjugate of
    // \int e^{iw|x|} conj(1/D(w)) dw through the D(w) code path, so the two
    // conjugate terms exercise independent denominator implementations; their
    // sum must be real (errata E7) and integrates to zero
    auto term_plus = half_line_phase_integral(p, ax, tol * 0.1);
    auto fminus = [&p](double w) { return std::conj(1.0 / d_response(w, p)); };
    auto fminus_p = [&p](double w) {
        const cplx d = d_response(w, p);
        const cplx dp(-2.0 * w, 0.5 * p.eps * p.eps);
        return std::conj(-dp / (d * d));
    };
    // conjugate term: e^{-iw|x|}/D(w) = conj(e^{iw|x|}/Dbar); evaluate via the
    // phase engine on the conjugate amplitude with the same positive k
    quad::Options opt;
    opt.tol = tol * 0.1;
    opt.peaks = spectral::resonance_hints(p);
    const double scale = std::max({p.omega, p.gamma(), 1.0});
    const double W = (ax == 0.0)
                         ? 50.0 * scale
                         : std::min(std::max({30.0 * scale, 10.0 / ax,
                                              std::cbrt(2.0 / (ax * ax * std::max(tol * 0.1, 1e-12)))}),
                                    3e5);
    auto term_minus_conj = quad::phase_integral_semi_infinite(fminus, fminus_p, ax, 0.0, W, opt);
    const cplx term_minus = std::conj(term_minus_conj.value);

    const cplx sum = term_plus.value + term_minus;
    const double pref = p.eps / M_PI;
    out.fourier_route = pref * sum.real();
    out.imag_residual = pref * sum.imag();
    out.value = out.fourier_route;

    // retarded-identity route
    const double A = spectral::autocorrelation_q(p, ax, tol * 0.1);
    // vacuum term <q phi_0 + phi_0 q>(x) = Re[(i eps/2pi) \int_0^inf
    //   (e^{iwx} + e^{-iwx}) (1/D(w) - 1/D(-w)) dw], evaluated as written
    auto vac_amp = [&p](double w) {
        const cplx i(0.0, 1.0);
        return i * p.eps / (2.0 * M_PI) * (1.0 / d_response(w, p) - 1.0 / d_response(-w, p));
    };
    auto vplus = quad::phase_integral_semi_infinite(vac_amp, nullptr, ax, 0.0, W, opt);
    cplx vtotal;
    if (ax == 0.0) {
        vtotal = 2.0 * vplus.value;
    } else {
        auto vac_amp_conj = [&vac_amp](double w) { return std::conj(vac_amp(w)); };
        auto vminus = quad::phase_integral_semi_infinite(vac_amp_conj, nullptr, ax, 0.0, W, opt);
        vtotal = vplus.value + std::conj(vminus.value);
    }
    out.vacuum_term = 0.5 * vtotal.real(); // cos = (e^{iwx} + e^{-iwx})/2
    out.cloud = -0.5 * p.eps * A;
    out.retarded_route = out.vacuum_term + out.cloud;

    const double tol_combined = 3.0 * std::max(tol, 1e-7) * out.scale;
    if (std::abs(out.fourier_route - out.retarded_route) > tol_combined)
        throw Error(Status::route_disagreement,
                    "qphi routes disagree at x=" + std::to_string(x) +
                        ": fourier=" + std::to_string(out.fourier_route) +
                        ", retarded=" + std::to_string(out.retarded_route) +
                        " (tolerance " + std::to_string(tol_combined) + ")");
    return out;
}

double qpi_symmetric(const ModelParams& p, double x, double tol)
{
    const double ax = std::abs(x);
    if (p.eps == 0.0) return 0.0;
    if (ax == 0.0)
        throw Error(Status::invalid_argument,
                    "qpi_symmetric is log-divergent at x = 0 (delta coupling)");
    const double g = p.gamma();
    auto f = [&](double s) {
        return s * std::exp(-s * ax) / (s * s + g * s + p.omega * p.omega);
    };
    quad::Options opt;
    opt.tol = tol;
    opt.peaks.push_back({1.0 / ax, 1.0 / ax});
    auto r = quad::integrate(f, 0.0, std::numeric_limits<double>::infinity(), opt);
    return -p.eps / M_PI * r.value;
}

double commutator_residual(const ModelParams& p, double x)
{
    if (p.eps == 0.0) return 0.0;
    auto r = half_line_phase_integral(p, std::abs(x), 1e-11);
    return 2.0 * r.value.real();
}

fit::DecayFit decay_rate_fit(std::span<const double> xs, std::span<const double> ys,
                             double rms_max)
{
    return fit::decay_rate(xs, ys, rms_max);
}

CorrelationProfile profile(const ModelParams& p, const std::vector<double>& xs, double tol)
{
    CorrelationProfile out;
    out.xs = xs;
    for (double x : xs) {
        const QPhiResult r = qphi_symmetric(p, x, tol);
        out.sym.push_back(r.value);
        out.cloud.push_back(r.cloud);
        out.comm.push_back(commutator_residual(p, x));
        out.scale = r.scale;
    }

    if (p.eps > 0.0) {
        // dense grid for the envelope fit: ~4 decay lengths at the rederived
        // rate eps^2/4, sampled finely against the ~Omega oscillation
        const double kappa_guess = 0.25 * p.eps * p.eps;
        const double xmax = 4.0 / kappa_guess;
        const double step = M_PI / (8.0 * std::max(p.omega, 0.1));
        std::vector<double> fx, fy;
        for (double x = 0.0; x <= xmax; x += step) {
            fx.push_back(x);
            fy.push_back(cloud_component(p, x, tol * 0.1));
        }
        const auto df = fit::decay_rate(fx, fy);
        out.fit.amplitude = df.amplitude;
        out.fit.decay_rate = df.kappa;
        out.fit.decay_rate_ci = df.kappa_ci;
        out.fit.fit_rms = df.fit_rms;
    }
    return out;
}

} // namespace oscbath::correlations
