#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace oscbath::quad {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double a, b;
    T value;
    double err;
    double resabs;
};

// One 15-point Kronrod evaluation with embedded 7-point Gauss estimate.
// QUADPACK-style error rescaling keeps the estimate sharp on smooth panels
// without being optimistic on rough ones.
template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    T fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    fv[7] = f(c);

    T resk{}, resg{};
    double resabs = 0.0;
    for (int j = 0; j < 7; ++j) {
        resk += kWgk[j] * (fv[j] + fv[14 - j]);
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    }
    resk += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::abs(fv[7]);
    // Gauss nodes are the odd-index Kronrod nodes.
    for (int j = 0; j < 3; ++j)
        resg += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    resg += kWg[3] * fv[7];

    T reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    resasc *= h;

    double err = std::abs(resk - resg) * h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    Panel<T> p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.err = err;
    p.resabs = resabs * std::abs(h);
    if (!std::isfinite(p.resabs) || !std::isfinite(err))
        throw Error(Status::invalid_argument,
                    "integrand returned a non-finite value on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    return p;
}

// Seed breakpoints: interval ends, geometric annuli around each peak
// (center +- width * 2^k), and any extra caller-provided cuts.
std::vector<double> build_breakpoints(double lo, double hi, const std::vector<Peak>& peaks,
                                      const std::vector<double>& extra, int cap)
{
    std::set<double> cuts{lo, hi};
    for (const Peak& pk : peaks) {
        double w = pk.width;
        if (!(w > 0.0)) continue;
        w = std::max(w, (hi - lo) * 1e-15);
        for (int s : {-1, 1}) {
            double r = w;
            for (int k = 0; k < 64; ++k) {
                const double x = pk.center + s * r;
                if (x <= lo || x >= hi) break;
                cuts.insert(x);
                r *= 2.0;
                if (r > (hi - lo)) break;
            }
        }
        if (pk.center > lo && pk.center < hi) cuts.insert(pk.center);
    }
    for (double x : extra)
        if (x > lo && x < hi) cuts.insert(x);

    std::vector<double> out(cuts.begin(), cuts.end());
    if ((int)out.size() > cap) {
        // keep an even subsample; adaptivity recovers the rest
        std::vector<double> thinned;
        const double step = double(out.size() - 1) / (cap - 1);
        for (int i = 0; i < cap; ++i) thinned.push_back(out[size_t(i * step)]);
        thinned.back() = out.back();
        out = thinned;
    }
    return out;
}

template <typename T, typename F>
void run_adaptive(const F& f, const std::vector<double>& cuts, const Options& opt, T& value,
                  double& err, int& panels, bool& converged)
{
    auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.err < y.err; };
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

    value = T{};
    err = 0.0;
    panels = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel<T> p = gk15<T>(f, cuts[i], cuts[i + 1]);
        value += p.value;
        err += p.err;
        heap.push(p);
        ++panels;
    }

    // worst-first refinement; panels at the double-precision width floor are
    // frozen (their error kept) so the rest can still be refined
    while (err > opt.tol && panels < opt.max_panels && !heap.empty()) {
        Panel<T> worst = heap.top();
        heap.pop();
        if (worst.err <= 0.0 || (worst.b - worst.a) < 64 * std::numeric_limits<double>::epsilon() *
                                                          (std::abs(worst.a) + std::abs(worst.b)))
            continue; // frozen: cannot subdivide further
        const double m = 0.5 * (worst.a + worst.b);
        Panel<T> left = gk15<T>(f, worst.a, m);
        Panel<T> right = gk15<T>(f, m, worst.b);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    converged = err <= opt.tol;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tail_integrable(const std::function<double(double)>& absf, double lo)
{
    const double base = std::max(1.0, std::abs(lo));
    double prev = -1.0;
    int growing = 0;
    for (double r : {1e3, 1e5, 1e7}) {
        const double w = lo + base * r;
        const double c = absf(w) * w * w;
        if (prev >= 0.0 && c > 2.0 * prev) ++growing;
        prev = c;
    }
    if (growing >= 2)
        throw Error(Status::non_integrable_tail,
                    "integrand does not decay at least as w^-2 towards +infinity");
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const Options& opt)
{
    QuadResult res;
    if (lo == hi) {
        res.converged = true;
        return res;
    }

    if (std::isinf(hi)) {
        check_tail_integrable([&f](double w) { return std::abs(f(w)); }, lo);
        // w = lo + t/(1-t); dw = dt/(1-t)^2
        auto g = [&f, lo](double t) {
            const double u = 1.0 - t;
            return f(lo + t / u) / (u * u);
        };
        std::vector<Peak> tpeaks;
        for (const Peak& pk : opt.peaks) {
            if (pk.center <= lo) continue;
            const double c = pk.center - lo;
            const double tc = c / (1.0 + c);
            const double tw = pk.width / ((1.0 + c) * (1.0 + c));
            tpeaks.push_back({tc, std::max(tw, 1e-15)});
        }
        // extra cuts spread the decades of the tail across panels
        std::vector<double> extra;
        for (double c : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999})
            extra.push_back(c);
        Options topt = opt;
        topt.peaks = tpeaks;
        auto cuts = build_breakpoints(0.0, 1.0, tpeaks, extra, opt.max_panels / 2);
        run_adaptive<double>(g, cuts, topt, res.value, res.err, res.panels, res.converged);
        return res;
    }

    auto cuts = build_breakpoints(lo, hi, opt.peaks, {}, opt.max_panels / 2);
    run_adaptive<double>(f, cuts, opt, res.value, res.err, res.panels, res.converged);
    return res;
}

QuadResultC integrate_phase(const std::function<std::complex<double>(double)>& f, double k,
                            double lo, double hi, const Options& opt)
{
    if (k < 0.0)
        throw Error(Status::invalid_argument, "integrate_phase requires k >= 0");

    QuadResultC res;
    if (lo == hi) {
        res.converged = true;
        return res;
    }

    auto h = [&f, k](double w) { return f(w) * std::exp(std::complex<double>(0.0, k * w)); };

    if (std::isinf(hi)) {
        check_tail_integrable([&f](double w) { return std::abs(f(w)); }, lo);
        auto g = [&h, lo](double t) {
            const double u = 1.0 - t;
            return h(lo + t / u) / (u * u);
        };
        std::vector<Peak> tpeaks;
        for (const Peak& pk : opt.peaks) {
            if (pk.center <= lo) continue;
            const double c = pk.center - lo;
            tpeaks.push_back({c / (1.0 + c), std::max(pk.width / ((1.0 + c) * (1.0 + c)), 1e-15)});
        }
        std::vector<double> extra;
        // resolve the phase out to where a w^-2 amplitude is below tol
        if (k > 0.0) {
            const double wmax = std::min(1e9, std::sqrt(1.0 / std::max(opt.tol, 1e-14)));
            const double step = M_PI / k;
            const int nmax = opt.max_panels / 3;
            for (int n = 1; n <= nmax; ++n) {
                const double w = n * step;
                if (w >= wmax) break;
                extra.push_back((w - lo) / (1.0 + (w - lo)));
            }
        }
        for (double c : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999}) extra.push_back(c);
        Options topt = opt;
        auto cuts = build_breakpoints(0.0, 1.0, tpeaks, extra, opt.max_panels / 2);
        run_adaptive<std::complex<double>>(g, cuts, topt, res.value, res.err, res.panels,
                                           res.converged);
        return res;
    }

    std::vector<double> extra;
    if (k > 0.0) {
        const double step = M_PI / k;
        const int nmax = opt.max_panels / 3;
        for (int n = 1; n <= nmax; ++n) {
            const double w = lo + n * step;
            if (w >= hi) break;
            extra.push_back(w);
        }
    }
    auto cuts = build_breakpoints(lo, hi, opt.peaks, extra, opt.max_panels / 2);
    run_adaptive<std::complex<double>>(h, cuts, opt, res.value, res.err, res.panels,
                                       res.converged);
    return res;
}

QuadResultC phase_integral_semi_infinite(const std::function<std::complex<double>(double)>& f,
                                         const std::function<std::complex<double>(double)>& f_prime,
                                         double k, double lo, double W, const Options& opt)
{
    QuadResultC res = integrate_phase(f, k, lo, W, opt);
    const std::complex<double> i(0.0, 1.0);
    if (k > 0.0) {
        // int_W^inf f e^{iwk} = e^{iWk} [ -f(W)/(ik) + f'(W)/(ik)^2 ] + O(f''/k^3)
        std::complex<double> fp;
        if (f_prime) {
            fp = f_prime(W);
        } else {
            const double dw = W * 1e-6;
            fp = (f(W + dw) - f(W - dw)) / (2.0 * dw);
        }
        const std::complex<double> ik = i * k;
        const std::complex<double> tail = std::exp(ik * W) * (-f(W) / ik + fp / (ik * ik));
        res.value += tail;
        // remainder bound ~ |f''(W)|/k^3 ~ 6|f(W)|/(W^2 k^3); charge something of
        // that order to the error estimate
        res.err += 8.0 * std::abs(f(W)) / std::max(W * W * k * k * k, 1e-30) * 1e-2 +
                   std::abs(fp) / (k * k) * 1e-9;
    } else {
        // no phase: append the exact tail by the t/(1-t) transform
        Options topt = opt;
        auto fre = [&f](double w) { return f(w).real(); };
        auto fim = [&f](double w) { return f(w).imag(); };
        QuadResult tr = integrate(fre, W, kInf, topt);
        QuadResult ti = integrate(fim, W, kInf, topt);
        res.value += std::complex<double>(tr.value, ti.value);
        res.err += tr.err + ti.err;
        res.panels += tr.panels + ti.panels;
        res.converged = res.converged && tr.converged && ti.converged;
    }
    return res;
}

} // namespace oscbath::quad
