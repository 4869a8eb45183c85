#pragma once

#include "errors.hpp"

namespace oscbath {

/// One-mode second moments: qq = <q^2>, qp = <qp+pq>/2, pp = <p^2>.
struct Covariance2 {
    double qq = 0.0;
    double qp = 0.0;
    double pp = 0.0;
};

/// Thermal-state reading of a covariance: symplectic invariant nu, normal-form
/// frequency, effective temperature, entropy (nats) and purity.
struct ThermalDiagnostics {
    double nu = 0.5;
    double lambda_eff = 0.0;
    double temperature = 0.0;
    double entropy = 0.0;
    double purity = 1.0;
};

/// nu = sqrt(qq*pp - qp^2). Invariant under linear symplectic transformations;
/// nu = 1/2 for pure Gaussian states. Throws UnphysicalCovariance when the
/// uncertainty bound is violated beyond 1e-9 (an upstream numerical defect);
/// violations within tolerance clamp to 1/2.
double symplectic_invariant(const Covariance2& c);

/// Frequency of the normal form H = Lambda/2 (p~^2 + q~^2): a p-shear zeroes
/// qp, then Lambda = sqrt(pp'/qq'); after the full transform <q~^2> = <p~^2> = nu.
double normal_form_frequency(const Covariance2& c);

/// T solving nu = coth(Lambda/2T)/2; exactly 0 at nu = 1/2 (values within
/// 1e-12 of 1/2 clamp to zero rather than amplifying quadrature noise).
double effective_temperature(double nu, double lambda_eff);

/// One-mode Gaussian entropy S = (nu+1/2)ln(nu+1/2) - (nu-1/2)ln(nu-1/2).
double entropy(double nu);

/// nu of a thermal state at temperature T and normal-form frequency Lambda.
double nu_of_thermal(double temperature, double lambda_eff);

ThermalDiagnostics thermal_diagnostics(const Covariance2& c);

} // namespace oscbath
