#include "thermometer.hpp"

#include <cmath>
#include <limits>

#include "quadrature.hpp"
#include "spectral.hpp"

namespace oscbath::thermometer {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double s_zz_denominator(double w, const ModelParams& p)
{
    // factored differences keep precision at both resonances
    const double dl = (p.lambda_th - w) * (p.lambda_th + w);
    const double dw = (p.omega - w) * (p.omega + w);
    const double a = dl * dw - p.mu * p.mu;
    const double b = dl * w * p.eps * p.eps * 0.5;
    return a * a + b * b;
}

std::vector<quad::Peak> thermometer_hints(const ModelParams& p)
{
    auto peaks = spectral::resonance_hints(p);
    if (p.lambda_th != p.omega) {
        const PoleShift ps = pole_shift(p);
        const double hw = std::max(std::abs(ps.shift.imag()), 1e-13 * p.lambda_th);
        peaks.push_back({p.lambda_th + ps.shift.real(), hw});
    } else {
        peaks.push_back({p.lambda_th, std::max(p.gamma(), 1e-13 * p.lambda_th)});
    }
    return peaks;
}
} // namespace

double s_zz(double w, const ModelParams& p)
{
    if (w <= 0.0 || p.mu == 0.0 || p.eps == 0.0) return 0.0;
    const double num = p.mu * p.mu * p.eps * p.eps / kTwoPi * w;
    return num / s_zz_denominator(w, p);
}

double s_zz_printed(double w, const ModelParams& p) { return 2.0 * s_zz(w, p); }

PoleShift pole_shift(const ModelParams& p)
{
    if (p.lambda_th == p.omega)
        throw Error(Status::invalid_argument, "pole_shift requires lambda_th != omega");
    PoleShift out;
    const std::complex<double> den(
        p.lambda_th * p.lambda_th - p.omega * p.omega, 0.5 * p.eps * p.eps);
    out.shift = p.mu * p.mu / (2.0 * p.lambda_th * den);
    out.degenerate = std::abs(p.lambda_th - p.omega) < 10.0 * p.gamma();
    return out;
}

Covariance2 coupled_ground_state_z(const ModelParams& p)
{
    // normal modes of K = [[W^2, -mu], [-mu, L^2]]
    const double W2 = p.omega * p.omega, L2 = p.lambda_th * p.lambda_th;
    const double tr = W2 + L2, dif = 0.5 * (W2 - L2);
    const double rad = std::sqrt(dif * dif + p.mu * p.mu);
    const double lam1 = 0.5 * tr + rad, lam2 = 0.5 * tr - rad;
    if (lam2 <= 0.0)
        throw Error(Status::thermometer_unstable, "coupled quadratic form not positive definite");
    const double om1 = std::sqrt(lam1), om2 = std::sqrt(lam2);
    // eigenvector angle: K = R diag(lam1, lam2) R^T with R = [[c,-s],[s,c]]
    const double theta = 0.5 * std::atan2(-2.0 * p.mu, W2 - L2);
    const double c = std::cos(theta), s = std::sin(theta);
    Covariance2 z;
    z.qq = 0.5 * (s * s / om1 + c * c / om2);
    z.pp = 0.5 * (s * s * om1 + c * c * om2);
    z.qp = 0.0;
    return z;
}

Covariance2 coupled_ground_state_q(const ModelParams& p)
{
    const double W2 = p.omega * p.omega, L2 = p.lambda_th * p.lambda_th;
    const double tr = W2 + L2, dif = 0.5 * (W2 - L2);
    const double rad = std::sqrt(dif * dif + p.mu * p.mu);
    const double om1 = std::sqrt(0.5 * tr + rad), om2 = std::sqrt(0.5 * tr - rad);
    const double theta = 0.5 * std::atan2(-2.0 * p.mu, W2 - L2);
    const double c = std::cos(theta), s = std::sin(theta);
    Covariance2 q;
    q.qq = 0.5 * (c * c / om1 + s * s / om2);
    q.pp = 0.5 * (c * c * om1 + s * s * om2);
    q.qp = 0.0;
    return q;
}

ThermometerResult thermometer_moments(const ModelParams& p, double tol)
{
    ThermometerResult out;
    out.mu = p.mu;

    if (p.eps == 0.0) {
        // no bath: stationary state is the coupled ground state (eps -> 0+ limit)
        const Covariance2 z = coupled_ground_state_z(p);
        out.zz = z.qq;
        out.pzpz = z.pp;
        out.diagnostics = thermal_diagnostics({out.zz, 0.0, out.pzpz});
        return out;
    }
    if (p.mu == 0.0) {
        out.zz = 1.0 / (2.0 * p.lambda_th);
        out.pzpz = 0.5 * p.lambda_th;
        out.diagnostics = thermal_diagnostics({out.zz, 0.0, out.pzpz});
        return out;
    }

    out.degenerate_resonance = pole_shift(p).degenerate;

    quad::Options opt;
    opt.tol = tol;
    opt.peaks = thermometer_hints(p);
    const double inf = std::numeric_limits<double>::infinity();

    auto rz = quad::integrate([&p](double w) { return s_zz(w, p); }, 0.0, inf, opt);
    auto rp = quad::integrate([&p](double w) { return w * w * s_zz(w, p); }, 0.0, inf, opt);
    if (!rz.converged || !rp.converged)
        throw Error(Status::no_convergence, "thermometer moment quadrature did not converge");

    // antisymmetry companion: one adaptive pass over the odd two-sided
    // integrand of <z p_z + p_z z>/2 must cancel to quadrature noise
    auto h = [&p](double w) { return w * s_zz(std::abs(w), p); };
    quad::Options sopt = opt;
    sopt.peaks.clear();
    for (const auto& pk : opt.peaks) {
        sopt.peaks.push_back(pk);
        sopt.peaks.push_back({-pk.center, pk.width});
    }
    auto rres = quad::integrate(h, -p.cutoff, p.cutoff, sopt);

    out.zz = rz.value;
    out.zz_err = rz.err;
    out.pzpz = rp.value;
    out.pzpz_err = rp.err;
    out.zpz = 0.0;
    out.zpz_residual = rres.value;
    out.diagnostics = thermal_diagnostics({out.zz, 0.0, out.pzpz});
    return out;
}

ThermalDiagnostics thermometer_temperature(const ModelParams& p, double tol)
{
    return thermometer_moments(p, tol).diagnostics;
}

MuLimit extrapolate_mu_to_zero(const std::vector<ThermometerResult>& results)
{
    if (results.size() < 3)
        throw Error(Status::invalid_argument,
                    "mu -> 0 extrapolation needs >= 3 results at distinct mu");
    std::vector<double> mus, zzs, pzs;
    for (const auto& r : results) {
        mus.push_back(r.mu);
        zzs.push_back(r.zz);
        pzs.push_back(r.pzpz);
    }
    const auto ez = fit::richardson_mu2(mus, zzs);
    const auto ep = fit::richardson_mu2(mus, pzs);
    MuLimit out;
    out.zz = ez.limit;
    out.pzpz = ep.limit;
    out.zz_residual = ez.residual;
    out.pzpz_residual = ep.residual;
    out.monotone = ez.monotone && ep.monotone;
    return out;
}

} // namespace oscbath::thermometer
