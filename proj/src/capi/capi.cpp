#include "oscbath.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "correlations.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "model.hpp"
#include "runner.hpp"
#include "spectral.hpp"
#include "thermometer.hpp"

using namespace oscbath;

struct ob_model {
    ModelParams p;
};

struct ob_config {
    config::RunConfig cfg;
    std::string serialized;
};

struct ob_report {
    runner::RunResult result;
    std::string json_cache;
};

namespace {

thread_local std::string t_last_error = "ok";

ob_status fail(Status code, const char* what)
{
    t_last_error = what;
    return static_cast<ob_status>(static_cast<int>(code));
}

template <typename F>
ob_status guarded(F&& f)
{
    try {
        f();
        return OB_OK;
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail(Status::internal_error, e.what());
    } catch (...) {
        return fail(Status::internal_error, "unknown error");
    }
}

ob_status require(bool cond, const char* what)
{
    if (cond) return OB_OK;
    return fail(Status::invalid_argument, what);
}

} // namespace

extern "C" {

const char* ob_version(void) { return "1.0.0"; }

const char* ob_last_error(void) { return t_last_error.c_str(); }

ob_status ob_model_create(double omega, double eps, double cutoff, double lambda_th, double mu,
                          ob_model** out)
{
    if (require(out != nullptr, "out is NULL") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *out = new ob_model{validate(omega, eps, cutoff, lambda_th, mu)}; });
}

void ob_model_free(ob_model* m) { delete m; }

double ob_model_gamma(const ob_model* m) { return m ? m->p.gamma() : 0.0; }

ob_status ob_model_regime(const ob_model* m, ob_regime* out)
{
    if (require(m && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        switch (classify_regime(m->p)) {
        case Regime::Underdamped: *out = OB_REGIME_UNDERDAMPED; break;
        case Regime::Critical: *out = OB_REGIME_CRITICAL; break;
        case Regime::Overdamped: *out = OB_REGIME_OVERDAMPED; break;
        }
    });
}

int ob_model_cutoff_warning(const ob_model* m) { return m && m->p.cutoff_warning ? 1 : 0; }

ob_status ob_moment_qq(const ob_model* m, double tol, double* value, double* err)
{
    if (require(m && value, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto r = spectral::moment_qq(m->p, tol);
        *value = r.value;
        if (err) *err = r.err;
    });
}

ob_status ob_moment_pp(const ob_model* m, double tol, double* value, double* err)
{
    if (require(m && value, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto r = spectral::moment_pp(m->p, tol);
        *value = r.value;
        if (err) *err = r.err;
    });
}

ob_status ob_moment_qp(const ob_model* m, double* value, double* residual)
{
    if (require(m && value, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        *value = spectral::moment_qp(m->p);
        if (residual) *residual = spectral::moment_qp_residual(m->p);
    });
}

ob_status ob_autocorrelation_q(const ob_model* m, double tau, double tol, double* value)
{
    if (require(m && value, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *value = spectral::autocorrelation_q(m->p, tau, tol); });
}

ob_status ob_thermal_diagnostics(const ob_model* m, double tol, double out[5])
{
    if (require(m && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto c = spectral::stationary_covariance(m->p, tol);
        const auto d = thermal_diagnostics(c);
        out[0] = d.nu;
        out[1] = d.lambda_eff;
        out[2] = d.temperature;
        out[3] = d.entropy;
        out[4] = d.purity;
    });
}

ob_status ob_symplectic_invariant(double qq, double qp, double pp, double* nu)
{
    if (require(nu != nullptr, "nu is NULL") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *nu = symplectic_invariant({qq, qp, pp}); });
}

ob_status ob_effective_temperature(double nu, double lambda_eff, double* temperature)
{
    if (require(temperature != nullptr, "temperature is NULL") != OB_OK)
        return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *temperature = effective_temperature(nu, lambda_eff); });
}

ob_status ob_entropy(double nu, double* out)
{
    if (require(out != nullptr, "out is NULL") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *out = entropy(nu); });
}

ob_status ob_thermometer_moments(const ob_model* m, double tol, double out[6])
{
    if (require(m && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto r = thermometer::thermometer_moments(m->p, tol);
        out[0] = r.zz;
        out[1] = r.pzpz;
        out[2] = r.zpz_residual;
        out[3] = r.diagnostics.nu;
        out[4] = r.diagnostics.temperature;
        out[5] = r.degenerate_resonance ? 1.0 : 0.0;
    });
}

ob_status ob_pole_shift(const ob_model* m, double* re, double* im, int* degenerate)
{
    if (require(m && re && im, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto s = thermometer::pole_shift(m->p);
        *re = s.shift.real();
        *im = s.shift.imag();
        if (degenerate) *degenerate = s.degenerate ? 1 : 0;
    });
}

ob_status ob_extrapolate_mu_to_zero(const double* mus, const double* zzs, const double* pzpzs,
                                    size_t n, double out[4])
{
    if (require(mus && zzs && pzpzs && out, "NULL argument") != OB_OK)
        return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        std::vector<thermometer::ThermometerResult> rows(n);
        for (size_t i = 0; i < n; ++i) {
            rows[i].mu = mus[i];
            rows[i].zz = zzs[i];
            rows[i].pzpz = pzpzs[i];
        }
        const auto lim = thermometer::extrapolate_mu_to_zero(rows);
        out[0] = lim.zz;
        out[1] = lim.pzpz;
        out[2] = lim.zz_residual;
        out[3] = lim.pzpz_residual;
    });
}

ob_status ob_qphi_symmetric(const ob_model* m, double x, double tol, double out[5])
{
    if (require(m && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto r = correlations::qphi_symmetric(m->p, x, tol);
        out[0] = r.value;
        out[1] = r.fourier_route;
        out[2] = r.retarded_route;
        out[3] = r.cloud;
        out[4] = r.scale;
    });
}

ob_status ob_qpi_symmetric(const ob_model* m, double x, double tol, double* value)
{
    if (require(m && value, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *value = correlations::qpi_symmetric(m->p, x, tol); });
}

ob_status ob_commutator_residual(const ob_model* m, double x, double* residual)
{
    if (require(m && residual, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *residual = correlations::commutator_residual(m->p, x); });
}

ob_status ob_decay_rate_fit(const double* xs, const double* ys, size_t n, double rms_max,
                            double out[3])
{
    if (require(xs && ys && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const auto f = correlations::decay_rate_fit({xs, n}, {ys, n}, rms_max);
        out[0] = f.kappa;
        out[1] = f.kappa_ci;
        out[2] = f.fit_rms;
    });
}

ob_status ob_config_parse(const char* text, ob_config** out)
{
    if (require(text && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *out = new ob_config{config::parse_config(text), {}}; });
}

ob_status ob_config_parse_file(const char* path, ob_config** out)
{
    if (require(path && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() { *out = new ob_config{config::parse_config_file(path), {}}; });
}

void ob_config_free(ob_config* c) { delete c; }

const char* ob_config_serialize(ob_config* c)
{
    if (!c) return "";
    c->serialized = config::serialize(c->cfg);
    return c->serialized.c_str();
}

ob_status ob_run(const ob_config* c, const char* command, const char* out_path, ob_report** out)
{
    if (require(c && command && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        auto* rep = new ob_report{};
        try {
            rep->result = runner::run_command(command, c->cfg);
            runner::write_artifacts(rep->result, c->cfg, out_path ? out_path : "");
        } catch (...) {
            delete rep;
            throw;
        }
        *out = rep;
    });
}

void ob_report_free(ob_report* r) { delete r; }

const char* ob_report_json(ob_report* r)
{
    if (!r) return "";
    r->json_cache = r->result.report.dump(2);
    return r->json_cache.c_str();
}

const char* ob_report_csv(ob_report* r) { return r ? r->result.csv.c_str() : ""; }

const char* ob_report_summary(ob_report* r) { return r ? r->result.summary.c_str() : ""; }

int ob_report_passed(const ob_report* r) { return r && r->result.exit_code == 0 ? 1 : 0; }

ob_status ob_report_number(const ob_report* r, const char* dotted_key, double* out)
{
    if (require(r && dotted_key && out, "NULL argument") != OB_OK) return OB_E_INVALID_ARGUMENT;
    return guarded([&]() {
        const nlohmann::json* node = &r->result.report;
        std::string key = dotted_key;
        size_t pos = 0;
        while (pos <= key.size()) {
            const size_t dot = key.find('.', pos);
            const std::string part =
                key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
            if (node->is_array()) {
                const size_t idx = std::stoul(part);
                if (idx >= node->size())
                    throw Error(Status::invalid_argument, "report index out of range: " + part);
                node = &(*node)[idx];
            } else if (node->is_object() && node->contains(part)) {
                node = &(*node)[part];
            } else {
                throw Error(Status::invalid_argument,
                            "report has no key '" + std::string(dotted_key) + "'");
            }
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
        if (node->is_boolean()) {
            *out = node->get<bool>() ? 1.0 : 0.0;
        } else if (node->is_number()) {
            *out = node->get<double>();
        } else {
            throw Error(Status::invalid_argument,
                        "report key '" + std::string(dotted_key) + "' is not numeric");
        }
    });
}

} // extern "C"
