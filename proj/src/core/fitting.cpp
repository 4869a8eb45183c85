#include "fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscbath::fit {

LinFit linear(std::span<const double> x, std::span<const double> y)
{
    const size_t n = x.size();
    if (n != y.size() || n < 2)
        throw Error(Status::invalid_argument, "linear fit needs >= 2 paired points");

    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw Error(Status::invalid_argument, "linear fit: degenerate abscissae");

    LinFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (out.intercept + out.slope * x[i]);
        ss_res += r * r;
    }
    out.rms = std::sqrt(ss_res / n);
    out.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (n > 2) out.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
    return out;
}

std::vector<EnvelopePoint> envelope_peaks(std::span<const double> x, std::span<const double> y,
                                          double floor)
{
    std::vector<EnvelopePoint> peaks;
    for (size_t i = 1; i + 1 < y.size(); ++i) {
        const double y0 = std::abs(y[i - 1]), y1 = std::abs(y[i]), y2 = std::abs(y[i + 1]);
        if (!(y1 > y0 && y1 >= y2) || y1 <= floor) continue;
        // parabolic interpolation through the three |y| samples
        const double d = y0 - 2 * y1 + y2;
        double off = 0.0, yp = y1;
        if (d < 0.0) {
            off = 0.5 * (y0 - y2) / d;
            off = std::clamp(off, -0.5, 0.5);
            yp = y1 - 0.25 * (y0 - y2) * off;
        }
        const double h = (x[i + 1] - x[i - 1]) * 0.5;
        peaks.push_back({x[i] + off * h, yp});
    }
    return peaks;
}

DecayFit decay_rate(std::span<const double> x, std::span<const double> y, double rms_max)
{
    if (x.size() != y.size() || x.size() < 6)
        throw Error(Status::insufficient_range, "decay fit needs >= 6 profile points");

    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    if (ymax <= 0.0)
        throw Error(Status::insufficient_range, "decay fit: profile envelope is not positive");

    auto peaks = envelope_peaks(x, y, ymax * 1e-9);
    if (peaks.size() < 3)
        throw Error(Status::insufficient_range,
                    "decay fit: fewer than 3 envelope peaks in the sampled range");

    std::vector<double> px, ply;
    for (const auto& p : peaks) {
        px.push_back(p.x);
        ply.push_back(std::log(p.y));
    }
    LinFit lf = linear(px, ply);

    DecayFit out;
    out.kappa = -lf.slope;
    out.kappa_ci = 2.0 * lf.slope_stderr;
    out.amplitude = std::exp(lf.intercept);
    out.fit_rms = lf.rms;
    out.n_peaks = (int)peaks.size();

    const double span = px.back() - px.front();
    if (out.kappa > 0.0 && span * out.kappa < 2.0)
        throw Error(Status::insufficient_range,
                    "decay fit: peaks span fewer than ~2 fitted decay lengths");
    if (out.fit_rms > rms_max)
        throw Error(Status::non_exponential_profile,
                    "decay fit: ln-envelope residual rms " + std::to_string(out.fit_rms) +
                        " exceeds " + std::to_string(rms_max));
    return out;
}

Extrapolation richardson_mu2(std::span<const double> mus, std::span<const double> vals)
{
    const size_t n = mus.size();
    if (n != vals.size() || n < 3)
        throw Error(Status::invalid_argument,
                    "extrapolation needs >= 3 results at distinct mu values");

    std::vector<double> h(n), t(vals.begin(), vals.end());
    for (size_t i = 0; i < n; ++i) h[i] = mus[i] * mus[i];
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (h[i] == h[j])
                throw Error(Status::invalid_argument, "extrapolation: duplicate mu value");

    // Neville tableau evaluated at h = 0
    double last_correction = 0.0;
    std::vector<double> T = t;
    for (size_t k = 1; k < n; ++k) {
        std::vector<double> Tn(n - k);
        for (size_t i = 0; i < n - k; ++i)
            Tn[i] = (h[i + k] * T[i] - h[i] * T[i + 1]) / (h[i + k] - h[i]);
        last_correction = std::abs(Tn[0] - T[0]);
        T = Tn;
    }

    Extrapolation out;
    out.limit = T[0];
    out.residual = last_correction;

    // monotonicity of |f(mu) - limit| along decreasing mu
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return mus[a] > mus[b]; });
    double prev = std::numeric_limits<double>::infinity();
    for (size_t i : order) {
        const double dev = std::abs(vals[i] - out.limit);
        if (dev > prev * (1.0 + 1e-12)) out.monotone = false;
        prev = dev;
    }
    return out;
}

} // namespace oscbath::fit
