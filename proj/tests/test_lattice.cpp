#include <doctest.h>

#include <cmath>
#include <random>

#include "fft.hpp"
#include "lattice.hpp"
#include "spectral.hpp"

using namespace oscbath;
using namespace oscbath::lattice;

namespace {
LatticeConfig small_cfg()
{
    LatticeConfig cfg;
    cfg.n_sites = 600;
    cfg.dx = 0.05;
    cfg.smear_sigma = 0.15;
    cfg.dt = 0.02;
    cfg.t_final = 8.0;
    cfg.window_lo = 11.0; // per-test overrides
    cfg.window_hi = 12.0;
    cfg.profile_xs = {};
    return cfg;
}
} // namespace

TEST_CASE("DST-I matches the direct transform and is involutory")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2, 5, 16, 31, 100}) {
        fft::Dst1 dst(n);
        std::vector<double> x(n), direct(n), fast(n), twice(n);
        for (auto& v : x) v = u(rng);
        for (int k = 1; k <= n; ++k) {
            double s = 0.0;
            for (int i = 1; i <= n; ++i)
                s += x[i - 1] * std::sin(M_PI * k * i / double(n + 1));
            direct[k - 1] = std::sqrt(2.0 / (n + 1)) * s;
        }
        dst.apply(x.data(), fast.data());
        for (int k = 0; k < n; ++k) CHECK(fast[k] == doctest::Approx(direct[k]).epsilon(1e-11));
        dst.apply(fast.data(), twice.data());
        for (int k = 0; k < n; ++k) CHECK(twice[k] == doctest::Approx(x[k]).epsilon(1e-11));
    }
}

TEST_CASE("config invariants are enforced with named diagnostics")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    cfg.window_lo = 11.0;
    cfg.window_hi = 12.0;
    cfg.t_final = 12.0;
    CHECK_NOTHROW(validate_config(cfg, p));

    auto bad = cfg;
    bad.dt = 0.03; // > 0.5*dx
    CHECK_THROWS_AS(validate_config(bad, p), const Error&);

    bad = cfg;
    bad.t_final = 100.0; // beyond the causal window of L = 30
    bad.window_hi = 100.0;
    CHECK_THROWS_AS(validate_config(bad, p), const Error&);

    bad = cfg;
    bad.window_lo = 5.0; // below the settle floor 10/eps^2 = 10
    CHECK_THROWS_AS(validate_config(bad, p), const Error&);

    bad = cfg;
    bad.smear_sigma = 0.01; // below dx
    CHECK_THROWS_AS(validate_config(bad, p), const Error&);
}

TEST_CASE("decoupled drift is block diagonal")
{
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    Drift d(p, cfg);
    std::vector<double> u(d.dim(), 0.0), out(d.dim());
    u[0] = 1.0; // q
    d.apply(u.data(), out.data());
    for (int i = 4; i < d.dim(); ++i) CHECK(out[i] == 0.0);
    std::fill(u.begin(), u.end(), 0.0);
    u[4 + 10] = 1.0; // a field Phi component
    d.apply(u.data(), out.data());
    for (int i = 0; i < 4; ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("drift has exact Hamiltonian structure (A = J H_sym)")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.01);
    auto cfg = small_cfg();
    cfg.n_sites = 2000;
    Drift d(p, cfg);
    CHECK(d.hsym_asymmetry() < 1e-12);
}

TEST_CASE("field block reproduces the Dirichlet dispersion relation")
{
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    cfg.n_sites = 200;
    Drift d(p, cfg);
    const auto freqs = d.field_mode_frequencies();
    for (int k : {1, 7, 50, 200}) {
        // exact mode must be an eigenvector of the spatial operator
        std::vector<double> u(d.dim(), 0.0), out(d.dim());
        for (int i = 1; i <= 200; ++i)
            u[4 + i - 1] = std::sin(M_PI * k * i / 201.0);
        d.apply(u.data(), out.data());
        // dPi = -K Phi must equal -w_k^2 Phi
        const double w2 = freqs[k - 1] * freqs[k - 1];
        for (int i = 0; i < 200; ++i)
            CHECK(out[4 + 200 + i] == doctest::Approx(-w2 * u[4 + i]).epsilon(1e-8));
    }
}

TEST_CASE("vacuum covariance: single-mode uncertainty and block structure")
{
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.0);
    LatticeConfig cfg;
    cfg.n_sites = 1;
    cfg.dx = 0.05;
    cfg.smear_sigma = 0.05;
    cfg.dt = 0.02;
    cfg.t_final = 0.01;
    cfg.window_lo = 0.0;
    cfg.window_hi = 0.01;
    cfg.profile_xs = {};
    VacuumCovariance vac(p, cfg);
    std::vector<double> ephi(vac.dim(), 0.0), epi(vac.dim(), 0.0);
    ephi[4] = 1.0;
    epi[5] = 1.0;
    const double phph = vac.covariance(ephi, ephi);
    const double pipi = vac.covariance(epi, epi);
    CHECK(phph * pipi == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(vac.covariance(ephi, epi) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("lattice vacuum matches the continuum Dirichlet propagator")
{
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    cfg.n_sites = 200;
    VacuumCovariance vac(p, cfg);
    Drift d(p, cfg);
    const double a = (cfg.n_sites + 1) * cfg.dx; // box length
    const int i0 = cfg.n_sites / 2;
    auto phi_at_site = [&](int i) {
        std::vector<double> v(vac.dim(), 0.0);
        v[4 + i] = 1.0 / std::sqrt(cfg.dx);
        return v;
    };
    for (int sep : {5, 10, 20, 50}) {
        const double x = (i0 + 1) * cfg.dx, y = (i0 + sep + 1) * cfg.dx;
        const double lat = vac.covariance(phi_at_site(i0), phi_at_site(i0 + sep));
        const double cont = 1.0 / (2.0 * M_PI) *
                            std::log(std::sin(M_PI * (x + y) / (2 * a)) /
                                     std::sin(M_PI * std::abs(x - y) / (2 * a)));
        CHECK(lat == doctest::Approx(cont).epsilon(0.01));
    }
    // vacuum is time-reversal symmetric: <phi pi> = 0 across sites
    std::vector<double> pi0(vac.dim(), 0.0);
    pi0[4 + cfg.n_sites + i0] = 1.0;
    CHECK(std::abs(vac.covariance(phi_at_site(i0 + 7), pi0)) < 1e-14);
}

TEST_CASE("decoupled ground state is stationary under evolution")
{
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    cfg.n_sites = 500;
    Drift d(p, cfg);
    VacuumCovariance vac(p, cfg);
    const auto snap = evolve_observables(d, {obs_q(d), obs_p(d), obs_phi(d, 1.0)},
                                         {0.0, 2.5, 5.0, 7.5, 10.0}, cfg.dt);
    const double qq0 = vac.covariance(snap.snaps[0][0], snap.snaps[0][0]);
    CHECK(qq0 == doctest::Approx(0.5).epsilon(1e-12));
    for (size_t ti = 1; ti < snap.times.size(); ++ti) {
        CHECK(vac.covariance(snap.snaps[ti][0], snap.snaps[ti][0]) ==
              doctest::Approx(qq0).epsilon(1e-8));
        CHECK(std::abs(vac.covariance(snap.snaps[ti][0], snap.snaps[ti][1])) < 1e-8);
    }
}

TEST_CASE("adjoint flow preserves the symplectic form on band-limited pairs")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.01);
    auto cfg = small_cfg();
    cfg.n_sites = 500;
    Drift d(p, cfg);

    auto band_limited = [&](int seed) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> v(d.dim(), 0.0);
        for (int i = 0; i < 4; ++i) v[i] = u(rng);
        const auto freqs = d.field_mode_frequencies();
        for (int k = 1; k <= cfg.n_sites && freqs[k - 1] <= 2.0; ++k) {
            const double ap = u(rng), am = u(rng);
            for (int i = 1; i <= cfg.n_sites; ++i) {
                const double mode =
                    std::sin(M_PI * k * i / double(cfg.n_sites + 1)) / std::sqrt(500.0);
                v[4 + i - 1] += ap * mode;
                v[4 + cfg.n_sites + i - 1] += am * mode;
            }
        }
        return v;
    };

    auto defect = [&](double dt) {
        auto w1 = band_limited(101), w2 = band_limited(202);
        const double before = d.symplectic_form(w1.data(), w2.data());
        std::vector<double> k1(d.dim()), k2(d.dim()), k3(d.dim()), k4(d.dim()), tmp(d.dim());
        auto step = [&](std::vector<double>& w) {
            d.apply_transpose(w.data(), k1.data());
            for (int i = 0; i < d.dim(); ++i) tmp[i] = w[i] + 0.5 * dt * k1[i];
            d.apply_transpose(tmp.data(), k2.data());
            for (int i = 0; i < d.dim(); ++i) tmp[i] = w[i] + 0.5 * dt * k2[i];
            d.apply_transpose(tmp.data(), k3.data());
            for (int i = 0; i < d.dim(); ++i) tmp[i] = w[i] + dt * k3[i];
            d.apply_transpose(tmp.data(), k4.data());
            for (int i = 0; i < d.dim(); ++i)
                w[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        };
        const long n = std::lround(10.0 / dt);
        for (long s = 0; s < n; ++s) {
            step(w1);
            step(w2);
        }
        return std::abs(d.symplectic_form(w1.data(), w2.data()) - before) / std::abs(before);
    };

    const double d1 = defect(0.02);
    const double d2 = defect(0.01);
    CHECK(d1 < 1e-6);
    CHECK(d1 / d2 == doctest::Approx(16.0).epsilon(1.0)); // RK4: between ~8x and ~32x
}

TEST_CASE("unstable step size is detected")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.0);
    auto cfg = small_cfg();
    cfg.n_sites = 300;
    Drift d(p, cfg);
    // dt = 0.2 puts the top field mode far outside RK4 stability
    CHECK_THROWS_AS(evolve_observables(d, {obs_q(d)}, {0.0, 40.0, 80.0}, 0.2), const Error&);
}

TEST_CASE("missing plateau raises NoPlateau with config hints")
{
    // without a bath (eps = 0) the mu-coupled pair beats forever: there is no
    // relaxation and the oracle must refuse to average
    const auto p = validate(1.0, 0.0, 1e3, 0.7, 0.3);
    LatticeConfig cfg;
    cfg.n_sites = 1200;
    cfg.dx = 0.05;
    cfg.smear_sigma = 0.05;
    cfg.dt = 0.02;
    cfg.t_final = 20.0;
    cfg.window_lo = 0.0;
    cfg.window_hi = 20.0;
    cfg.profile_xs = {};
    try {
        run_oracle(p, cfg, 1e-9);
        FAIL("expected NoPlateau");
    } catch (const Error& e) {
        CHECK(e.code() == Status::no_plateau);
        CHECK(std::string(e.what()).find("window_lo") != std::string::npos);
    }
}

TEST_CASE("strongly damped moment_qq agrees with the lattice to 2%")
{
    // eps = 1.5: smearing bias at sigma = 0.025 is ~1.1%, inside the 2% budget
    const auto p = validate(1.0, 1.5, 1e3, 0.7, 0.0);
    LatticeConfig cfg;
    cfg.n_sites = 3200;
    cfg.dx = 0.025;
    cfg.smear_sigma = 0.025;
    cfg.dt = 0.01;
    cfg.t_final = 30.0;
    cfg.window_lo = 8.0;
    cfg.window_hi = 30.0;
    cfg.profile_xs = {};
    Drift d(p, cfg);
    VacuumCovariance vac(p, cfg);
    std::vector<double> times;
    for (int i = 0; i <= 10; ++i) times.push_back(8.0 + 22.0 * i / 10.0);
    const auto snap = evolve_observables(d, {obs_q(d)}, times, cfg.dt);
    double qq = 0.0;
    for (size_t ti = 0; ti < snap.times.size(); ++ti)
        qq += vac.covariance(snap.snaps[ti][0], snap.snaps[ti][0]);
    qq /= times.size();
    CHECK(qq == doctest::Approx(spectral::moment_qq(p, 1e-10).value).epsilon(0.02));
    CHECK(qq ==
          doctest::Approx(spectral::moment_qq_smeared(p, cfg.smear_sigma, 1e-10).value)
              .epsilon(0.005));
}

TEST_CASE("continuum limit: halving dx at fixed physical smearing moves qq < 0.5%")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.0);
    auto run_qq = [&p](int n, double dx) {
        LatticeConfig cfg;
        cfg.n_sites = n;
        cfg.dx = dx;
        cfg.smear_sigma = 0.1; // fixed in physical units
        cfg.dt = 0.4 * dx;
        cfg.t_final = 30.0;
        cfg.window_lo = 12.0;
        cfg.window_hi = 30.0;
        cfg.profile_xs = {};
        Drift d(p, cfg);
        VacuumCovariance vac(p, cfg);
        std::vector<double> times;
        for (int i = 0; i <= 8; ++i) times.push_back(12.0 + 18.0 * i / 8.0);
        const auto snap = evolve_observables(d, {obs_q(d)}, times, cfg.dt);
        double qq = 0.0;
        for (size_t ti = 0; ti < snap.times.size(); ++ti)
            qq += vac.covariance(snap.snaps[ti][0], snap.snaps[ti][0]);
        return qq / times.size();
    };
    const double coarse = run_qq(1600, 0.05);
    const double fine = run_qq(3200, 0.025);
    CHECK(std::abs(fine - coarse) / coarse < 5e-3);
}

TEST_CASE("desk-scale oracle run agrees with the quadrature routes")
{
    const auto p = validate(1.0, 1.0, 1e3, 0.7, 0.01);
    LatticeConfig cfg;
    cfg.n_sites = 1600; // L = 80: quick but causally safe for t_final = 33
    cfg.dx = 0.05;
    cfg.smear_sigma = 0.05;
    cfg.dt = 0.02;
    cfg.t_final = 33.0;
    cfg.window_lo = 12.0;
    cfg.window_hi = 33.0;
    cfg.profile_xs = {0.0, 0.5, 1.0, 2.0, 3.0};
    const auto rep = run_oracle(p, cfg, 1e-9);

    for (const auto& c : rep.comparisons) {
        INFO(c.name, ": lattice=", c.lattice, " ref=", c.reference, " tol=", c.tol);
        if (c.gated) CHECK(c.pass);
    }
    CHECK(rep.all_pass);
    CHECK(rep.q_cov.qq ==
          doctest::Approx(spectral::moment_qq(p, 1e-10).value).epsilon(0.02));
    CHECK(std::abs(rep.q_cov.qp) < 1e-3);
    CHECK(rep.plateau_spread < 0.01);
    CHECK(rep.energy_drift < 1e-6);
    // two-time extraction vs the smeared spectral curve at tau = 2
    const double a2 = spectral::autocorrelation_q_smeared(p, cfg.smear_sigma, 2.0, 1e-9);
    double a2_lat = 0.0;
    for (size_t i = 0; i < rep.taus.size(); ++i)
        if (std::abs(rep.taus[i] - 2.0) < 1e-9) a2_lat = rep.autocorr[i];
    CHECK(a2_lat == doctest::Approx(a2).epsilon(0.02));
}
