#include "gaussian.hpp"

#include <cmath>
#include <string>

namespace oscbath {

namespace {
constexpr double kUncertaintyTol = 1e-9;
constexpr double kPureClamp = 1e-12;

void require_positive(const Covariance2& c)
{
    if (!(c.qq > 0.0) || !(c.pp > 0.0))
        throw Error(Status::unphysical_covariance,
                    "covariance requires qq > 0 and pp > 0 (qq=" + std::to_string(c.qq) +
                        ", pp=" + std::to_string(c.pp) + ")");
}
} // namespace

double symplectic_invariant(const Covariance2& c)
{
    require_positive(c);
    const double det = c.qq * c.pp - c.qp * c.qp;
    if (det < 0.25 - kUncertaintyTol)
        throw Error(Status::unphysical_covariance,
                    "uncertainty bound violated: qq*pp - qp^2 = " + std::to_string(det) +
                        " < 1/4 (upstream numerical defect)");
    return det <= 0.25 ? 0.5 : std::sqrt(det);
}

double normal_form_frequency(const Covariance2& c)
{
    symplectic_invariant(c); // validates
    const double qq = c.qq;
    const double pp = c.pp - c.qp * c.qp / c.qq; // p -> p - (qp/qq) q zeroes the cross moment
    return std::sqrt(pp / qq);
}

double effective_temperature(double nu, double lambda_eff)
{
    if (nu < 0.5 - kUncertaintyTol)
        throw Error(Status::unphysical_covariance, "nu < 1/2");
    if (nu <= 0.5 + kPureClamp) return 0.0;
    return lambda_eff / (2.0 * std::atanh(1.0 / (2.0 * nu)));
}

double entropy(double nu)
{
    if (nu < 0.5 - kUncertaintyTol)
        throw Error(Status::unphysical_covariance, "nu < 1/2");
    if (nu <= 0.5 + kPureClamp) return 0.0; // 0 ln 0 = 0 convention
    const double a = nu + 0.5, b = nu - 0.5;
    return a * std::log(a) - b * std::log(b);
}

double nu_of_thermal(double temperature, double lambda_eff)
{
    if (temperature <= 0.0) return 0.5;
    return 0.5 / std::tanh(lambda_eff / (2.0 * temperature));
}

ThermalDiagnostics thermal_diagnostics(const Covariance2& c)
{
    ThermalDiagnostics d;
    d.nu = symplectic_invariant(c);
    d.lambda_eff = normal_form_frequency(c);
    d.temperature = effective_temperature(d.nu, d.lambda_eff);
    d.entropy = entropy(d.nu);
    d.purity = 0.5 / d.nu;
    return d;
}

} // namespace oscbath
