#include <doctest.h>

#include <cmath>

#include "fitting.hpp"
#include "thermometer.hpp"

using namespace oscbath;

namespace {
ModelParams params(double mu, double eps = 1.0, double omega = 1.0, double lambda = 0.7)
{
    return validate(omega, eps, 1e3, lambda, mu);
}

// test-side oracle: ground-state z covariance of the coupled q-z pair via an
// explicit eigensolve (quadratic formula + null-vector eigenvectors)
void ground_state_oracle(double omega, double lambda, double mu, double& zz, double& pz)
{
    const double a = omega * omega, d = lambda * lambda, b = -mu;
    const double tr = a + d, det = a * d - b * b;
    const double l1 = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
    const double l2 = 0.5 * (tr - std::sqrt(tr * tr - 4 * det));
    // eigenvector of l: (b, l - a) normalized
    auto zcomp = [&](double l) {
        const double vx = b, vy = l - a;
        const double n = std::sqrt(vx * vx + vy * vy);
        return n > 0 ? vy / n : (l == a ? 0.0 : 1.0);
    };
    double c1 = zcomp(l1), c2 = zcomp(l2);
    if (mu == 0.0) { c1 = (a >= d) ? 0.0 : 1.0; c2 = std::sqrt(1.0 - c1 * c1); }
    const double w1 = std::sqrt(l1), w2 = std::sqrt(l2);
    zz = 0.5 * (c1 * c1 / w1 + c2 * c2 / w2);
    pz = 0.5 * (c1 * c1 * w1 + c2 * c2 * w2);
}
} // namespace

TEST_CASE("s_zz vanishes when decoupled and at zero frequency")
{
    const auto p = params(1e-2);
    CHECK(thermometer::s_zz(0.0, p) == 0.0);
    const auto p0 = params(0.0);
    for (double w : {0.3, 0.7, 1.0, 4.0}) CHECK(thermometer::s_zz(w, p0) == 0.0);
    for (double w = 0.05; w < 6.0; w += 0.05) CHECK(thermometer::s_zz(w, p) >= 0.0);
}

TEST_CASE("spectrum peak sits within the pole-shift displacement bound")
{
    const auto p = params(1e-2);
    double best_w = 0.0, best_v = -1.0;
    for (double w = p.lambda_th - 5e-3; w <= p.lambda_th + 5e-3; w += 2e-7) {
        const double v = thermometer::s_zz(w, p);
        if (v > best_v) {
            best_v = v;
            best_w = w;
        }
    }
    const double bound = 10.0 * p.mu * p.mu /
                         (2.0 * p.lambda_th * std::abs(p.lambda_th * p.lambda_th - 1.0));
    CHECK(std::abs(best_w - p.lambda_th) <= bound);
}

TEST_CASE("pole shift: mu^2 scaling, magnitude, degeneracy flag")
{
    CHECK(thermometer::pole_shift(params(0.0)).shift == std::complex<double>(0.0, 0.0));

    const auto s1 = thermometer::pole_shift(params(0.01)).shift;
    CHECK(std::abs(s1) == doctest::Approx(1.0e-4).epsilon(0.02));
    const auto s2 = thermometer::pole_shift(params(0.02)).shift;
    CHECK(std::abs(s2) / std::abs(s1) == doctest::Approx(4.0).epsilon(1e-12));

    CHECK(thermometer::pole_shift(params(0.01, 1.0)).degenerate);        // |0.3| < 10*0.5
    CHECK_FALSE(thermometer::pole_shift(params(0.01, 0.1)).degenerate);  // |0.3| > 10*0.005
}

TEST_CASE("thermometer moments approach the decoupled ground state as mu -> 0")
{
    const auto r = thermometer::thermometer_moments(params(1e-3), 1e-10);
    CHECK(r.zz == doctest::Approx(1.0 / 1.4).epsilon(1e-3));
    CHECK(std::abs(r.zz - 1.0 / 1.4) / (1.0 / 1.4) < 1e-3); // within 0.1%
    CHECK(r.pzpz == doctest::Approx(0.35).epsilon(1e-3));
    CHECK(std::abs(r.pzpz - 0.35) / 0.35 < 1e-3);
    CHECK(std::abs(r.zpz_residual) < 1e-10);
    CHECK(r.diagnostics.nu >= 0.5);
    CHECK(r.diagnostics.nu - 0.5 < 1e-3);
}

TEST_CASE("finite mu leaves the thermometer strictly mixed")
{
    const auto r = thermometer::thermometer_moments(params(0.05), 1e-11);
    CHECK(r.diagnostics.nu > 0.5 + 1e-5);
}

TEST_CASE("deviation from 1/(2 lambda) scales as mu^2")
{
    std::vector<double> lx, ly;
    for (double mu : {1e-2, 3e-3, 1e-3}) {
        const auto r = thermometer::thermometer_moments(params(mu), 1e-11);
        lx.push_back(std::log(mu));
        ly.push_back(std::log(std::abs(r.zz - 1.0 / 1.4)));
    }
    const double slope = fit::linear(lx, ly).slope;
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1)); // 2 +- 0.2
}

TEST_CASE("eps = 0 branch equals the coupled ground state and the eps -> 0 limit")
{
    for (double mu : {0.05, 1e-2, 1e-3}) {
        const auto r = thermometer::thermometer_moments(params(mu, 0.0), 1e-10);
        double zz_o = 0.0, pz_o = 0.0;
        ground_state_oracle(1.0, 0.7, mu, zz_o, pz_o);
        CHECK(r.zz == doctest::Approx(zz_o).epsilon(1e-12));
        CHECK(r.pzpz == doctest::Approx(pz_o).epsilon(1e-12));
        CHECK(r.diagnostics.nu - 0.5 > 0.0);
        CHECK(r.diagnostics.nu - 0.5 < 0.2 * mu * mu); // measured coefficient ~0.124
    }
    // nu_z - 1/2 scales as mu^2 in the joint ground state
    std::vector<double> lx, ly;
    for (double mu : {0.05, 0.02, 0.01}) {
        const auto r = thermometer::thermometer_moments(params(mu, 0.0), 1e-10);
        lx.push_back(std::log(mu));
        ly.push_back(std::log(r.diagnostics.nu - 0.5));
    }
    CHECK(fit::linear(lx, ly).slope == doctest::Approx(2.0).epsilon(0.05));

    // continuity: weakly damped quadrature route approaches the eps = 0 branch
    const auto weak = thermometer::thermometer_moments(params(1e-2, 0.05), 1e-11);
    const auto zero = thermometer::thermometer_moments(params(1e-2, 0.0), 1e-11);
    CHECK(weak.zz == doctest::Approx(zero.zz).epsilon(1e-4));
}

TEST_CASE("mu -> 0 extrapolation: exactness and the physical limit")
{
    // exact on its model class
    std::vector<thermometer::ThermometerResult> synth(3);
    const double mus[] = {1e-2, 3e-3, 1e-3};
    for (int i = 0; i < 3; ++i) {
        synth[i].mu = mus[i];
        synth[i].zz = 0.7 + 3.0 * mus[i] * mus[i];
        synth[i].pzpz = 0.35; // constant
    }
    const auto lim0 = thermometer::extrapolate_mu_to_zero(synth);
    CHECK(lim0.zz == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(lim0.pzpz == doctest::Approx(0.35).epsilon(1e-14));

    // the real ladder lands on 1/(2 lambda_th) and lambda_th/2
    std::vector<thermometer::ThermometerResult> rows;
    for (double mu : {1e-2, 3e-3, 1e-3})
        rows.push_back(thermometer::thermometer_moments(params(mu), 1e-11));
    const auto lim = thermometer::extrapolate_mu_to_zero(rows);
    CHECK(std::abs(lim.zz - 1.0 / 1.4) < 1e-4);
    CHECK(std::abs(lim.pzpz - 0.35) < 1e-4);
    CHECK(lim.monotone);
}

TEST_CASE("the extrapolated reading is independent of the oscillator coupling")
{
    // the artifact's central claim: the thermometer does not see the
    // q-oscillator's mixedness
    std::vector<double> limits;
    for (double eps : {0.5, 1.0, 1.5}) {
        std::vector<thermometer::ThermometerResult> rows;
        for (double mu : {1e-2, 3e-3, 1e-3})
            rows.push_back(thermometer::thermometer_moments(params(mu, eps), 1e-11));
        limits.push_back(thermometer::extrapolate_mu_to_zero(rows).zz);
    }
    for (size_t i = 0; i < limits.size(); ++i)
        for (size_t j = i + 1; j < limits.size(); ++j)
            CHECK(std::abs(limits[i] - limits[j]) < 1e-3);
}

TEST_CASE("thermometer temperature chain reads ~zero at weak coupling")
{
    const auto d = thermometer::thermometer_temperature(params(1e-3), 1e-10);
    CHECK(d.nu == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(d.temperature < 0.2); // artanh blowup is clamped near purity
}

TEST_CASE("zz integrand tail falls as w^-7 (cutoff-insensitive)")
{
    const auto p = params(1e-2);
    const double s1 = thermometer::s_zz(50.0, p);
    const double s2 = thermometer::s_zz(100.0, p);
    CHECK(s1 / s2 == doctest::Approx(128.0).epsilon(0.1)); // 2^7
}

TEST_CASE("printed prefactor variant doubles the spectrum (errata E4)")
{
    const auto p = params(1e-2);
    CHECK(thermometer::s_zz_printed(0.9, p) == doctest::Approx(2.0 * thermometer::s_zz(0.9, p)));
}
