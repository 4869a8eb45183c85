#include "model.hpp"

#include <algorithm>
#include <cmath>

namespace oscbath {

ModelParams validate(double omega, double eps, double cutoff, double lambda_th, double mu)
{
    std::vector<std::pair<Status, std::string>> violations;

    if (!(omega > 0.0) || !std::isfinite(omega))
        violations.emplace_back(Status::nonpositive_frequency,
                                "omega must be > 0 (got " + std::to_string(omega) + ")");
    if (!(lambda_th > 0.0) || !std::isfinite(lambda_th))
        violations.emplace_back(Status::nonpositive_frequency,
                                "lambda_th must be > 0 (got " + std::to_string(lambda_th) + ")");
    if (eps < 0.0 || !std::isfinite(eps))
        violations.emplace_back(Status::invalid_argument,
                                "eps must be >= 0 (got " + std::to_string(eps) + ")");
    if (mu < 0.0 || !std::isfinite(mu))
        violations.emplace_back(Status::invalid_argument,
                                "mu must be >= 0 (got " + std::to_string(mu) + ")");
    if (!(cutoff > omega) || !std::isfinite(cutoff))
        violations.emplace_back(Status::cutoff_below_resonance,
                                "cutoff must exceed omega (cutoff=" + std::to_string(cutoff) +
                                    ", omega=" + std::to_string(omega) + ")");
    if (mu * mu >= omega * omega * lambda_th * lambda_th)
        violations.emplace_back(Status::thermometer_unstable,
                                "mu^2 >= omega^2*lambda_th^2: coupled quadratic form unbounded below");

    if (!violations.empty()) {
        std::string msg = "invalid model parameters:";
        for (const auto& [code, text] : violations)
            msg += "\n  - " + text;
        throw Error(violations.front().first, msg);
    }

    ModelParams p;
    p.omega = omega;
    p.eps = eps;
    p.cutoff = cutoff;
    p.lambda_th = lambda_th;
    p.mu = mu;
    p.cutoff_warning = cutoff < 10.0 * std::max(omega, eps * eps);
    return p;
}

Regime classify_regime(const ModelParams& p)
{
    const double lhs = p.eps * p.eps;
    const double rhs = 4.0 * p.omega;
    if (lhs < rhs) return Regime::Underdamped;
    if (lhs > rhs) return Regime::Overdamped;
    return Regime::Critical;
}

const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::Underdamped: return "underdamped";
    case Regime::Critical: return "critical";
    case Regime::Overdamped: return "overdamped";
    }
    return "?";
}

} // namespace oscbath
