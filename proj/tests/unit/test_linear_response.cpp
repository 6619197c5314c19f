#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sedres/errors.hpp"
#include "sedres/linear_response.hpp"
#include "sedres/rng.hpp"

using namespace sedres;
using cplx = std::complex<double>;

TEST_CASE("susceptibility special values") {
    const double wk = 1.3, tau = 1e-3;
    CHECK(susceptibility_at(0.0, wk, tau) == cplx(1.0 / (wk * wk), 0.0));
    const cplx on_res = susceptibility_at(wk, wk, tau);
    CHECK(on_res.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(on_res.imag() == doctest::Approx(1.0 / (tau * wk * wk * wk)));
    const cplx far = susceptibility_at(2 * wk, wk, 1e-12);
    CHECK(far.real() == doctest::Approx(-1.0 / (3 * wk * wk)));
    CHECK(std::abs(far.imag()) < 1e-9);
}

TEST_CASE("passivity and reality for both damping conventions") {
    Rng rng(3);
    for (auto conv : {DampingConvention::cubic, DampingConvention::reduced}) {
        for (int k = 0; k < 2000; ++k) {
            const double w = 5.0 * rng.uniform() + 1e-6;
            const double wk = 0.1 + 3.0 * rng.uniform();
            const double tau = 1e-4 + 0.05 * rng.uniform();
            const cplx a = susceptibility_at(w, wk, tau, conv);
            CHECK(a.imag() > 0.0);
            CHECK(susceptibility_at(-w, wk, tau, conv) == std::conj(a));
        }
    }
}

TEST_CASE("damping conventions agree to order tau w0 near resonance") {
    const double wk = 1.0, tau = 1e-3;
    const auto cubic = resonance_grid(wk, tau, 50.0, 2001, DampingConvention::cubic);
    const auto reduced = resonance_grid(wk, tau, 50.0, 2001, DampingConvention::reduced);
    double worst = 0.0;
    for (std::size_t i = 0; i < cubic.values.size(); ++i)
        worst = std::max(worst, std::abs(cubic.values[i] - reduced.values[i]) / std::abs(reduced.values[i]));
    CHECK(worst < 1.1 * tau * wk);
}

TEST_CASE("peak of |chi| and of Im chi coincide") {
    const auto s = resonance_grid(1.0, 1e-3, 50.0, 4001);
    std::size_t i_abs = 0, i_im = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (std::abs(s.values[i]) > std::abs(s.values[i_abs])) i_abs = i;
        if (s.values[i].imag() > s.values[i_im].imag()) i_im = i;
    }
    CHECK(std::abs(static_cast<long>(i_abs) - static_cast<long>(i_im)) <= 1);
}

TEST_CASE("response function of a single resonance") {
    const double w0 = 1.0, tau = 1e-3, gamma = tau * w0 * w0;
    const double dt = 0.25;
    const std::size_t n = 1 << 17;
    for (auto conv : {DampingConvention::reduced, DampingConvention::cubic}) {
        const auto r = response_function({w0}, tau, dt, n, conv);
        CHECK(r.imaginary_fraction < 1e-8);

        const double wd = std::sqrt(w0 * w0 - 0.25 * gamma * gamma);
        double peak = 0.0, worst_pos = 0.0, worst_neg = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = r.t[j];
            peak = std::max(peak, std::abs(r.chi[j]));
            if (t < 0.0) {
                worst_neg = std::max(worst_neg, std::abs(r.chi[j]));
            } else if (t <= 5.0 / gamma) {
                const double envelope = std::exp(-0.5 * gamma * t) / wd;
                const double oracle = envelope * std::sin(wd * t);
                worst_pos = std::max(worst_pos, std::abs(r.chi[j] - oracle) / envelope);
            }
        }
        CHECK(worst_pos < 0.02);
        CHECK(worst_neg < 1e-3 * peak);

        const std::size_t j0 = n / 2;
        CHECK(r.t[j0] == 0.0);
        CHECK(std::abs(r.chi[j0]) < 1e-3 * peak);
        CHECK(r.chi[j0 + 1] / dt == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("two resonances superpose") {
    const double tau = 1e-3, dt = 0.1;
    const std::size_t n = 1 << 18;
    const auto a = response_function({1.0}, tau, dt, n, DampingConvention::reduced);
    const auto b = response_function({1.5}, tau, dt, n, DampingConvention::reduced);
    const auto ab = response_function({1.0, 1.5}, tau, dt, n, DampingConvention::reduced);
    for (std::size_t j = 0; j < n; j += 997) CHECK(ab.chi[j] == doctest::Approx(a.chi[j] + b.chi[j]).scale(1.0));
}

TEST_CASE("small damping keeps the ringing") {
    const double tau = 1e-4;
    const auto r = response_function({1.0}, tau, 0.25, 1 << 20, DampingConvention::reduced);
    const std::size_t j0 = r.t.size() / 2;
    // Largest |chi| in the first and the tenth period.
    auto period_max = [&](int p) {
        double m = 0.0;
        for (std::size_t j = j0; r.t[j] < 2 * pi * (p + 1); ++j)
            if (r.t[j] >= 2 * pi * p) m = std::max(m, std::abs(r.chi[j]));
        return m;
    };
    CHECK(period_max(9) / period_max(0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("response function preconditions") {
    CHECK_THROWS_AS(response_function({1.0}, 1e-3, 0.5, 1 << 16), std::invalid_argument);  // aliasing
    CHECK_THROWS_AS(response_function({1.0}, 1e-3, 0.25, 1 << 10), std::invalid_argument);  // too short
    CHECK_THROWS_AS(response_function({1.0}, 1e-3, 0.25, 1001), std::invalid_argument);
    CHECK_THROWS_AS(response_function({}, 1e-3, 0.25, 1 << 16), std::invalid_argument);
}

TEST_CASE("Kramers-Kronig reconstruction") {
    const double wk = 1.0, tau = 1e-3;
    const auto s = resonance_grid(wk, tau, 50.0, 2001, DampingConvention::reduced);
    const auto kk = kramers_kronig_reconstruct(s);
    CHECK(kk.max_relative_error < 0.02);

    SUBCASE("cubic damping convention also passes") {
        CHECK(kramers_kronig_reconstruct(resonance_grid(wk, tau, 50.0, 2001)).max_relative_error < 0.02);
    }
    SUBCASE("zero absorption gives zero reactive part") {
        auto flat = s;
        for (auto& v : flat.values) v = cplx(v.real(), 0.0);
        for (double r : kramers_kronig_reconstruct(flat).reconstructed_real) CHECK(r == 0.0);
    }
    SUBCASE("refining the grid does not increase the error") {
        double previous = 1e300;
        for (std::size_t n : {101u, 201u, 401u, 801u}) {
            const double e = kramers_kronig_reconstruct(resonance_grid(wk, tau, 50.0, n, DampingConvention::reduced))
                                 .max_relative_error;
            CHECK(e <= previous);
            previous = e;
        }
    }
    SUBCASE("narrow grids are rejected") {
        CHECK_THROWS_AS(kramers_kronig_reconstruct(resonance_grid(wk, tau, 30.0, 601)), CoverageError);
    }
}

TEST_CASE("resonance covariance integral") {
    // Reference integrals from 30-digit adaptive quadrature (mpmath) of the same expression.
    const NaturalUnits u;
    const auto r1 = resonance_covariance(1.0, 1e-3, u);
    CHECK(r1.numeric == doctest::Approx(0.502038706570852676).epsilon(1e-8));
    CHECK(r1.delta_limit == 0.5);
    CHECK(r1.ratio == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r1.quoted == 2 * r1.delta_limit);

    const auto r2 = resonance_covariance(2.0, 1e-3, u);
    CHECK(r2.numeric == doctest::Approx(0.251817113671245887).epsilon(1e-8));
    CHECK(r2.numeric / r1.numeric == doctest::Approx(0.5).epsilon(0.01));

    const auto r3 = resonance_covariance(1.0, 1e-2, u);
    CHECK(r3.numeric == doctest::Approx(0.512968604640206576).epsilon(1e-8));
    CHECK(std::abs(r1.ratio - 1.0) < std::abs(r3.ratio - 1.0));

    CHECK(resonance_covariance(-1.0, 1e-3, u).numeric == r1.numeric);
    CHECK_THROWS_AS(resonance_covariance(1.0, 0.05, u), std::invalid_argument);
}
