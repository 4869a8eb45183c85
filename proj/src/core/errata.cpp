#include "errata.hpp"

#include <cmath>
#include <limits>

#include "correlations.hpp"
#include "fitting.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"
#include "thermometer.hpp"

namespace oscbath::errata {

namespace {

// Minimal lattice run returning window-averaged covariances of selected forms.
struct MiniRun {
    double qq = 0.0, pp = 0.0;
};

MiniRun lattice_qq_pp(const ModelParams& p, const lattice::LatticeConfig& cfg)
{
    lattice::validate_config(cfg, p);
    lattice::Drift d(p, cfg);
    lattice::VacuumCovariance vac(p, cfg);
    std::vector<double> times;
    for (int i = 0; i <= 12; ++i)
        times.push_back(cfg.window_lo + (cfg.window_hi - cfg.window_lo) * i / 12.0);
    auto snap = lattice::evolve_observables(d, {lattice::obs_q(d), lattice::obs_p(d)}, times,
                                            cfg.dt);
    MiniRun out;
    for (size_t ti = 0; ti < snap.times.size(); ++ti) {
        out.qq += vac.covariance(snap.snaps[ti][0], snap.snaps[ti][0]);
        out.pp += vac.covariance(snap.snaps[ti][1], snap.snaps[ti][1]);
    }
    out.qq /= double(snap.times.size());
    out.pp /= double(snap.times.size());
    return out;
}

void settle(Entry& e)
{
    e.rederived_agrees = std::abs(e.rederived_value - e.oracle_value) <= e.tolerance;
    e.printed_agrees = std::abs(e.printed_value - e.oracle_value) <= e.tolerance;
    if (e.rederived_agrees && !e.printed_agrees)
        e.verdict = "rederived";
    else if (e.printed_agrees && !e.rederived_agrees)
        e.verdict = "printed";
    else
        e.verdict = "inconclusive";
}

int scaled(int n, double s) { return std::max(64, int(std::lround(n * s))); }

} // namespace

Ledger build_ledger(double quad_tol, double scale)
{
    Ledger led;

    // Main coupled run: the thermometer default set, smearing = dx.
    const ModelParams pmain = validate(1.0, 1.0, 1e3, 0.7, 0.01);
    lattice::LatticeConfig main_cfg;
    main_cfg.n_sites = scaled(4000, scale);
    main_cfg.dx = 0.05;
    main_cfg.smear_sigma = 0.05;
    main_cfg.dt = 0.02;
    main_cfg.t_final = std::min(60.0, 0.5 * main_cfg.n_sites * main_cfg.dx - 7.0);
    main_cfg.window_hi = main_cfg.t_final;
    main_cfg.window_lo = std::max(25.0, main_cfg.t_final - 25.0);
    const lattice::OracleReport main_run = lattice::run_oracle(pmain, main_cfg, quad_tol);
    led.main_run = main_run;
    led.main_cfg = main_cfg;
    led.main_params = pmain;

    // ---- E1: <q^2> integrand numerator (w^2 printed vs w rederived) ----
    {
        Entry e;
        e.id = "E1";
        e.topic = "<q^2> integrand numerator";
        e.printed_expr = "(eps^2/2pi) w^2 / ((w^2-W^2)^2 + (eps^2 w/2)^2)";
        e.rederived_expr = "(eps^2/2pi) w / ((w^2-W^2)^2 + (eps^2 w/2)^2)";
        const ModelParams p = validate(2.0, 0.75, 1e3, 0.7, 0.0);
        quad::Options opt;
        opt.tol = quad_tol;
        opt.peaks = spectral::resonance_hints(p);
        e.printed_value =
            quad::integrate([&p](double w) { return spectral::s_qq_printed_integrand(w, p); }, 0.0,
                            std::numeric_limits<double>::infinity(), opt)
                .value;
        e.rederived_value = spectral::moment_qq(p, quad_tol).value;

        lattice::LatticeConfig cfg;
        cfg.n_sites = scaled(2400, scale);
        cfg.dx = 0.05;
        cfg.smear_sigma = 0.05;
        cfg.dt = 0.02;
        cfg.t_final = std::min(54.0, 0.5 * cfg.n_sites * cfg.dx - 5.0);
        cfg.window_hi = cfg.t_final;
        cfg.window_lo = std::max(10.0 / (p.eps * p.eps) + 2.0, cfg.t_final - 20.0);
        cfg.profile_xs = {};
        e.oracle_value = lattice_qq_pp(p, cfg).qq;
        e.tolerance = 0.02 * e.rederived_value;
        e.note = "printed integrand yields ~1/2 at any Omega (dimensionally wrong); "
                 "rederived recovers 1/(2 Omega) + O(eps^2); lattice at Omega=2, eps=0.75";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E2: <p^2> log coefficient ----
    {
        Entry e;
        e.id = "E2";
        e.topic = "<p^2> log-divergence coefficient";
        e.printed_expr = "2 eps^2/pi * ln(cutoff/Omega)";
        e.rederived_expr = "eps^2/(2 pi) * ln(cutoff/Omega)";
        const ModelParams p = validate(1.0, 1.0, 1e3, 0.7, 0.0);
        e.printed_value = 2.0 * p.eps * p.eps / M_PI;
        e.rederived_value = p.eps * p.eps / (2.0 * M_PI);

        // lattice-implied coefficient from two smearings: subtract the
        // sigma-exact non-log remainder predicted by the smeared quadrature
        lattice::LatticeConfig cfg2 = main_cfg;
        cfg2.smear_sigma = 0.10;
        cfg2.profile_xs = {};
        const double pp1 = main_run.q_cov.pp;
        const double pp2 = lattice_qq_pp(pmain, cfg2).pp;
        const double r = cfg2.smear_sigma / main_cfg.smear_sigma;
        const double dpp_sm =
            spectral::moment_pp_smeared(pmain, main_cfg.smear_sigma, quad_tol).value -
            spectral::moment_pp_smeared(pmain, cfg2.smear_sigma, quad_tol).value;
        const double nonlog = dpp_sm - e.rederived_value * std::log(r);
        e.oracle_value = ((pp1 - pp2) - nonlog) / std::log(r);
        e.tolerance = 0.10 * e.rederived_value;
        e.note = "implied coefficient from lattice pp at smearings {dx, 2dx}; the non-log "
                 "remainder (resonance-region window differences) is removed using the "
                 "smeared quadrature; residual lattice-dispersion bias at omega ~ 1/sigma "
                 "is a few percent, far below the 4x candidate separation";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E3: overdamped <q^2> closed form ----
    {
        Entry e;
        e.id = "E3";
        e.topic = "overdamped <q^2> closed form";
        e.printed_expr = "1/sqrt(eps^2/16 - Omega^2) * ln(...)  [dimensionally inconsistent]";
        e.rederived_expr = "ln((eps^4-8W^2+eps^2 r)/(eps^4-8W^2-eps^2 r))/(pi r), r=sqrt(eps^4-16W^2)";
        const ModelParams p = validate(0.1, 1.5, 1e3, 0.7, 0.0);
        e.printed_value = spectral::qq_printed_closed_form(p);
        e.rederived_value = spectral::qq_closed_form(p);
        e.oracle_value = spectral::moment_qq(p, quad_tol).value;
        e.tolerance = 1e-6 * std::abs(e.oracle_value);
        e.note = "adjudicated by quadrature: the overdamped slow pole (rate ~4.5e-3 at "
                 "Omega=0.1, eps=1.5) makes a desk-scale lattice window infeasible; the "
                 "printed log argument goes negative here (value NaN)";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E4: thermometer spectrum prefactor ----
    {
        Entry e;
        e.id = "E4";
        e.topic = "S_zz prefactor";
        e.printed_expr = "(2/2pi) mu^2 eps^2 w / |D_z|^2";
        e.rederived_expr = "(1/2pi) mu^2 eps^2 w / |D_z|^2";
        const auto th = thermometer::thermometer_moments(pmain, quad_tol);
        e.rederived_value = th.zz;
        e.printed_value = 2.0 * th.zz;
        e.oracle_value = main_run.z_cov.qq;
        e.tolerance = 0.02 * e.rederived_value;
        e.note = "mu -> 0 limit must equal 1/(2 lambda_th), which pins the prefactor; "
                 "lattice zz at mu = 0.01";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E5: thermometer potential sign ----
    {
        Entry e;
        e.id = "E5";
        e.topic = "thermometer Lagrangian potential sign";
        e.printed_expr = "+1/2 (zdot^2 + Lambda^2 z^2)  [no restoring force]";
        e.rederived_expr = "+1/2 (zdot^2 - Lambda^2 z^2) potential, interaction +mu q z";
        const double L2 = pmain.lambda_th * pmain.lambda_th;
        e.printed_value = -L2; // z-direction curvature of the printed quadratic form
        e.rederived_value = L2;
        // what the (stable) lattice Hamiltonian realizes: 2 * H(unit z vector)
        {
            lattice::LatticeConfig cfg;
            cfg.n_sites = 64;
            cfg.dx = 0.05;
            cfg.smear_sigma = 0.05;
            cfg.dt = 0.02;
            cfg.t_final = 0.2;
            cfg.window_lo = 0.0;
            cfg.window_hi = 0.1;
            cfg.profile_xs = {};
            const ModelParams pz = validate(1.0, 0.0, 1e3, pmain.lambda_th, 0.0);
            lattice::Drift d(pz, cfg);
            std::vector<double> uz(d.dim(), 0.0);
            uz[2] = 1.0;
            e.oracle_value = 2.0 * d.energy(uz.data());
        }
        e.tolerance = 1e-9;
        e.note = "printed sign leaves the quadratic form unbounded below (no stationary "
                 "state); the z-curvature of the realized Hamiltonian is +Lambda^2";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E6: correlation decay rate ----
    {
        Entry e;
        e.id = "E6";
        e.topic = "correlation-cloud decay rate";
        e.printed_expr = "exp(-(eps^2/2)|x|)";
        e.rederived_expr = "exp(-(eps^2/4)|x|)  [amplitude decay at gamma/2, retarded]";
        e.printed_value = 0.5 * pmain.eps * pmain.eps;
        e.rederived_value = 0.25 * pmain.eps * pmain.eps;
        e.oracle_value = main_run.kappa_oracle;
        e.tolerance = 0.15 * e.rederived_value;
        e.note = "fitted envelope rate of the lattice two-time correlator at eps = 1 "
                 "(finite-window bias ~5% from the power-law tail)";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E7: stray i on the equal-time correlator ----
    {
        Entry e;
        e.id = "E7";
        e.topic = "equal-time <q phi + phi q> reality/value";
        e.printed_expr = "4i(eps/2pi) int_0^inf e^{iw|x|}/(W^2-w^2-i eps^2 w/2) dw at x=1";
        e.rederived_expr = "real combination of the conjugate terms (= 0 for all x)";
        const double g = pmain.gamma();
        quad::Options opt;
        opt.tol = quad_tol;
        auto L = quad::integrate(
            [&](double s) {
                return std::exp(-s) / (s * s + g * s + pmain.omega * pmain.omega);
            },
            0.0, std::numeric_limits<double>::infinity(), opt);
        e.printed_value = -2.0 * pmain.eps / M_PI * L.value; // the literal display, made real by its stray i
        e.rederived_value = 0.0;
        double qphi_lat = 0.0; // lattice <q phi(x=1)>_sym
        for (size_t j = 0; j < main_run.xs.size(); ++j)
            if (std::abs(main_run.xs[j] - 1.0) < 1e-9) qphi_lat = main_run.qphi[j];
        e.oracle_value = qphi_lat;
        const double scale_qq = spectral::moment_qq(pmain, quad_tol).value * pmain.eps;
        e.tolerance = 0.03 * scale_qq;
        e.note = "the stationary state is locally the interacting ground state, which is "
                 "T-symmetric while q*phi is T-odd; the correlator vanishes identically";
        settle(e);
        led.entries.push_back(e);
    }

    // ---- E8: action interaction factor ----
    {
        Entry e;
        e.id = "E8";
        e.topic = "action interaction term factor";
        e.printed_expr = "2 eps q phidot(t,0)  => damping 2 eps^2";
        e.rederived_expr = "eps q phidot(t,0)   => damping eps^2/2";
        e.printed_value = 2.0 * pmain.eps * pmain.eps;
        e.rederived_value = 0.5 * pmain.eps * pmain.eps;
        e.oracle_value = 2.0 * main_run.kappa_oracle; // envelope decays at gamma/2
        e.tolerance = 0.2 * e.rederived_value;
        e.note = "the damping rate implied by the measured two-time envelope (2 kappa) "
                 "matches the Langevin display's eps^2/2, i.e. interaction eps q phidot";
        settle(e);
        led.entries.push_back(e);
    }

    led.all_rederived_confirmed = true;
    for (const auto& e : led.entries)
        if (!e.rederived_agrees) led.all_rederived_confirmed = false;
    return led;
}

} // namespace oscbath::errata
