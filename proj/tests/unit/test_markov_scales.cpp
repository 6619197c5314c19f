#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sedres/markov_scales.hpp"

using namespace sedres;

TEST_CASE("Markov time resolution for the electron") {
    const PhysicalConstants c;
    const double dt = markov_timescale(c);
    CHECK(dt == doctest::Approx(2.4e-17).epsilon(0.02));
    CHECK(std::floor(std::log10(dt)) == -17.0);
    // Independent route: hbar / (m alpha^2 c^2) with c from the Compton frequency.
    const double c_light = 299792458.0;
    CHECK(dt == doctest::Approx(c.hbar_si / (c.m_e_si * c.alpha * c.alpha * c_light * c_light)).epsilon(1e-6));
    CHECK(dt * c.alpha * c.alpha * c.omega_c == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("limits and scaling of the time resolution") {
    PhysicalConstants c;
    c.alpha = 0.999999999;
    CHECK(markov_timescale(c) == doctest::Approx(1.0 / c.omega_c));
    CHECK(markov_timescale(c) == doctest::Approx((2 * 3.141592653589793 / c.omega_c) / (2 * 3.141592653589793)));
    PhysicalConstants a, b;
    b.alpha = 2 * a.alpha;
    CHECK(markov_timescale(b) == doctest::Approx(markov_timescale(a) / 4).epsilon(1e-14));
    c.alpha = 1.5;
    CHECK_THROWS_AS(markov_timescale(c), std::invalid_argument);
}

TEST_CASE("dispersion estimates") {
    const auto unit = dispersion_estimates(1.0, 1.0, 1.0);
    CHECK(unit.var_x == 1.0);
    CHECK(unit.product == 1.0);

    const PhysicalConstants c;
    const auto d = dispersion_estimates(c, markov_timescale(c));
    CHECK(d.var_x == doctest::Approx(2.8e-21).epsilon(0.02));
    CHECK(std::sqrt(d.var_x) == doctest::Approx(5.3e-11).epsilon(0.02));
    CHECK(d.product / (c.hbar_si * c.hbar_si) == doctest::Approx(1.0).epsilon(1e-12));

    for (double dt : {1e-3, 0.7, 42.0}) {
        CHECK(dispersion_estimates(1.3, 0.4, 2 * dt).var_x == doctest::Approx(2 * dispersion_estimates(1.3, 0.4, dt).var_x));
        CHECK(dispersion_estimates(1.3, 0.4, dt).product == doctest::Approx(1.69));
    }
    CHECK_THROWS_AS(dispersion_estimates(1.0, 1.0, 0.0), std::invalid_argument);
}
