#include <doctest.h>

#include <cmath>
#include <random>

#include "gaussian.hpp"

using namespace oscbath;

namespace {

// apply a linear symplectic map S to the covariance: V -> S V S^T
Covariance2 transform(const Covariance2& c, double s00, double s01, double s10, double s11)
{
    Covariance2 o;
    o.qq = s00 * s00 * c.qq + 2 * s00 * s01 * c.qp + s01 * s01 * c.pp;
    o.qp = s00 * s10 * c.qq + (s00 * s11 + s01 * s10) * c.qp + s01 * s11 * c.pp;
    o.pp = s10 * s10 * c.qq + 2 * s10 * s11 * c.qp + s11 * s11 * c.pp;
    return o;
}

} // namespace

TEST_CASE("symplectic invariant on reference covariances")
{
    CHECK(symplectic_invariant({0.5, 0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(symplectic_invariant({0.5, 0.3, 1.0}) ==
          doctest::Approx(0.6403124237432849).epsilon(1e-14));
}

TEST_CASE("invariance under the three symplectic generator transforms")
{
    // q~ = q + 0.7 p, p~ = p
    const Covariance2 c{0.5, 0.1, 0.9};
    const double nu0 = symplectic_invariant(c);
    const auto shear_q = transform(c, 1.0, 0.7, 0.0, 1.0);
    CHECK(symplectic_invariant(shear_q) == doctest::Approx(nu0).epsilon(1e-12));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(-2.0, 2.0), ur(0.1, 2.0), uth(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        // random physical covariance: squeezed thermal state
        const double nu = 0.5 + uth(rng), r = ur(rng), a = ua(rng);
        Covariance2 v{nu * r, 0.0, nu / r};
        v = transform(v, 1.0, a, 0.0, 1.0); // shear in q
        const double nu_ref = symplectic_invariant(v);
        CHECK(nu_ref == doctest::Approx(nu).epsilon(1e-12));

        const double alpha = ua(rng);
        if (std::abs(alpha) > 0.05) {
            const auto scaled = transform(v, alpha, 0.0, 0.0, 1.0 / alpha);
            CHECK(symplectic_invariant(scaled) == doctest::Approx(nu_ref).epsilon(1e-12));
        }
        const auto shear_p = transform(v, 1.0, 0.0, ua(rng), 1.0);
        CHECK(symplectic_invariant(shear_p) == doctest::Approx(nu_ref).epsilon(1e-12));
    }
}

TEST_CASE("normal-form frequency")
{
    CHECK(normal_form_frequency({0.5, 0.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normal_form_frequency({1.0 / 6.0, 0.0, 1.5}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(normal_form_frequency({0.6, 0.0, 1.2}) ==
          doctest::Approx(1.4142135623730951).epsilon(1e-14));
}

TEST_CASE("effective temperature")
{
    CHECK(effective_temperature(0.5, 3.7) == 0.0);
    // forward: nu = coth(1/(2*1))/2 = 1.0819767068693265 at T = 1, Lambda = 1
    CHECK(effective_temperature(1.0819767068693265, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double expected = 1.0 / (2.0 * std::atanh(1.0 / 1.2));
    CHECK(effective_temperature(0.6, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(effective_temperature(0.6, 1.0) == doctest::Approx(0.41703).epsilon(2e-5));
}

TEST_CASE("entropy values and asymptote")
{
    CHECK(entropy(0.5) == 0.0);
    CHECK(entropy(1.0) == doctest::Approx(1.5 * std::log(1.5) - 0.5 * std::log(0.5)).epsilon(1e-15));
    CHECK(entropy(1.0) == doctest::Approx(0.954771).epsilon(1e-6));
    CHECK(std::abs(entropy(10.0) - (std::log(10.0) + 1.0)) < 0.01);
}

TEST_CASE("temperature and entropy are strictly increasing in nu")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.501, 8.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(effective_temperature(a, 1.3) < effective_temperature(b, 1.3));
        CHECK(entropy(a) < entropy(b));
    }
}

TEST_CASE("thermal round trip: nu -> T -> nu")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unu(0.5001, 20.0), ul(0.2, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double nu = unu(rng), lam = ul(rng);
        const double T = effective_temperature(nu, lam);
        const double back = nu_of_thermal(T, lam);
        CHECK(back == doctest::Approx(nu).epsilon(1e-9));
    }
}

TEST_CASE("unphysical covariances are rejected; borderline clamps to pure")
{
    try {
        symplectic_invariant({0.5, 0.0, 0.4}); // det 0.2 < 1/4
        FAIL("expected UnphysicalCovariance");
    } catch (const Error& e) {
        CHECK(e.code() == Status::unphysical_covariance);
    }
    CHECK_THROWS_AS(symplectic_invariant({-0.5, 0.0, 0.5}), const Error&);
    // within the 1e-9 tolerance band: clamp, don't throw
    CHECK(symplectic_invariant({0.5, 0.0, 0.5 - 1e-12}) == 0.5);
    CHECK(effective_temperature(0.5 + 1e-13, 1.0) == 0.0);
}

TEST_CASE("thermal_diagnostics assembles consistently")
{
    const auto d = thermal_diagnostics({0.5, 0.0, 0.5});
    CHECK(d.nu == 0.5);
    CHECK(d.temperature == 0.0);
    CHECK(d.entropy == 0.0);
    CHECK(d.purity == 1.0);

    const auto m = thermal_diagnostics({0.6, 0.05, 1.1});
    CHECK(m.nu > 0.5);
    CHECK(m.temperature > 0.0);
    CHECK(m.entropy > 0.0);
    CHECK(m.purity < 1.0);
    CHECK(m.purity == doctest::Approx(0.5 / m.nu).epsilon(1e-15));
}
