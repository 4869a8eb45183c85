/* oscbath: stationary state of an oscillator Ohmically coupled to a 1D
 * massless scalar-field vacuum, its weakly coupled thermometer, the
 * oscillator-field correlation structure, and an exact lattice-evolution
 * oracle cross-validating all of it.
 *
 * C API over the C++ core: opaque handles, status codes, thread-local error
 * messages. All functions return OB_OK (0) on success; on failure call
 * ob_last_error() for the diagnostic.
 */
#ifndef OSCBATH_H
#define OSCBATH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ob_status {
    OB_OK = 0,
    OB_E_INVALID_ARGUMENT = 1,
    OB_E_NONPOSITIVE_FREQUENCY = 2,
    OB_E_CUTOFF_BELOW_RESONANCE = 3,
    OB_E_THERMOMETER_UNSTABLE = 4,
    OB_E_NO_CONVERGENCE = 5,
    OB_E_NON_INTEGRABLE_TAIL = 6,
    OB_E_UNPHYSICAL_COVARIANCE = 7,
    OB_E_CLOSED_FORM_UNDEFINED = 8,
    OB_E_ROUTE_DISAGREEMENT = 9,
    OB_E_INSUFFICIENT_RANGE = 10,
    OB_E_NON_EXPONENTIAL_PROFILE = 11,
    OB_E_CONFIG_INVALID = 12,
    OB_E_PARSE = 13,
    OB_E_UNKNOWN_KEY = 14,
    OB_E_TYPE_MISMATCH = 15,
    OB_E_STEP_UNSTABLE = 16,
    OB_E_NO_PLATEAU = 17,
    OB_E_IO = 18,
    OB_E_INTERNAL = 19
} ob_status;

typedef enum ob_regime {
    OB_REGIME_UNDERDAMPED = 0,
    OB_REGIME_CRITICAL = 1,
    OB_REGIME_OVERDAMPED = 2
} ob_regime;

typedef struct ob_model ob_model;   /* validated physical parameters */
typedef struct ob_config ob_config; /* parsed run configuration */
typedef struct ob_report ob_report; /* result document of a command run */

const char* ob_version(void);

/* Message for the most recent failure on this thread. Never NULL. */
const char* ob_last_error(void);

/* ---- model ---------------------------------------------------------------- */

/* Validates (omega, eps, cutoff, lambda_th, mu); on failure the diagnostic
 * lists every violated invariant. */
ob_status ob_model_create(double omega, double eps, double cutoff, double lambda_th, double mu,
                          ob_model** out);
void ob_model_free(ob_model* m);

double ob_model_gamma(const ob_model* m); /* eps^2/2 */
ob_status ob_model_regime(const ob_model* m, ob_regime* out);
int ob_model_cutoff_warning(const ob_model* m); /* 1 when cutoff < 10*max(omega, eps^2) */

/* ---- stationary moments and thermal diagnostics --------------------------- */

ob_status ob_moment_qq(const ob_model* m, double tol, double* value, double* err);
ob_status ob_moment_pp(const ob_model* m, double tol, double* value, double* err);
/* <qp+pq>/2 is identically 0; *residual receives the numerical antisymmetric-
 * integral check (|residual| < 1e-10 expected). */
ob_status ob_moment_qp(const ob_model* m, double* value, double* residual);
ob_status ob_autocorrelation_q(const ob_model* m, double tau, double tol, double* value);

/* out[0..4] = nu, lambda_eff, temperature, entropy, purity */
ob_status ob_thermal_diagnostics(const ob_model* m, double tol, double out[5]);

ob_status ob_symplectic_invariant(double qq, double qp, double pp, double* nu);
ob_status ob_effective_temperature(double nu, double lambda_eff, double* temperature);
ob_status ob_entropy(double nu, double* entropy);

/* ---- thermometer ----------------------------------------------------------- */

/* out[0..5] = zz, pzpz, zpz_residual, nu_z, temperature, degenerate_flag */
ob_status ob_thermometer_moments(const ob_model* m, double tol, double out[6]);
ob_status ob_pole_shift(const ob_model* m, double* re, double* im, int* degenerate);
/* Richardson extrapolation of zz(mu), pzpz(mu) to mu = 0.
 * out[0..3] = zz_limit, pzpz_limit, zz_residual, pzpz_residual */
ob_status ob_extrapolate_mu_to_zero(const double* mus, const double* zzs, const double* pzpzs,
                                    size_t n, double out[4]);

/* ---- correlations ----------------------------------------------------------- */

/* out[0..4] = value, fourier_route, retarded_route, cloud, scale */
ob_status ob_qphi_symmetric(const ob_model* m, double x, double tol, double out[5]);
ob_status ob_qpi_symmetric(const ob_model* m, double x, double tol, double* value);
ob_status ob_commutator_residual(const ob_model* m, double x, double* residual);
/* out[0..2] = kappa, kappa_ci, fit_rms */
ob_status ob_decay_rate_fit(const double* xs, const double* ys, size_t n, double rms_max,
                            double out[3]);

/* ---- config + command runner ------------------------------------------------ */

ob_status ob_config_parse(const char* text, ob_config** out);
ob_status ob_config_parse_file(const char* path, ob_config** out);
void ob_config_free(ob_config* c);
/* Serialized form; owned by the config handle, valid until it is freed. */
const char* ob_config_serialize(ob_config* c);

/* command: moments | temperature | thermometer | correlations | oracle |
 * errata | sweep. Writes artifacts per the config (out_path may override);
 * pass NULL to skip writing. The report handle outlives the call. */
ob_status ob_run(const ob_config* c, const char* command, const char* out_path, ob_report** out);

void ob_report_free(ob_report* r);
const char* ob_report_json(ob_report* r);
const char* ob_report_csv(ob_report* r);
const char* ob_report_summary(ob_report* r);
/* 1 when every internal consistency check of the run passed. */
int ob_report_passed(const ob_report* r);
/* Fetch a numeric leaf by JSON-pointer-ish dotted path ("q_cov.qq",
 * "entries.3.oracle"). */
ob_status ob_report_number(const ob_report* r, const char* dotted_key, double* out);

#ifdef __cplusplus
}
#endif

#endif /* OSCBATH_H */
