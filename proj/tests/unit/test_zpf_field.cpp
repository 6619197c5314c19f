#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sedres/rng.hpp"
#include "sedres/zpf_field.hpp"

using namespace sedres;

namespace {

// Closed form of (2 pi / 3) int_a^b w^3 / (2 pi^2) dw with hbar = c = 1.
double band_power_closed_form(double a, double b) {
    return (std::pow(b, 4) - std::pow(a, 4)) / (12.0 * std::numbers::pi);
}

FieldBand small_band(std::size_t n) {
    FieldBand band;
    band.omega_min = 0.9;
    band.omega_max = 1.1;
    band.n_modes = n;
    return band;
}

} // namespace

TEST_CASE("spectral density values and cubic scaling") {
    const NaturalUnits u;
    CHECK(spectral_density(0.0, u) == 0.0);
    CHECK(spectral_density(1.0, u) == doctest::Approx(0.050660).epsilon(1e-5));
    CHECK(spectral_density(2.0, u) == doctest::Approx(0.405285).epsilon(1e-5));
    for (double w : {0.1, 0.7, 3.3, 12.0}) CHECK(spectral_density(2 * w, u) / spectral_density(w, u) == 8.0);
    CHECK_THROWS_AS(spectral_density(-1.0, u), std::domain_error);
}

TEST_CASE("field_at on hand-built realizations") {
    FieldRealization f;
    f.frequencies = {1.3};
    f.amplitudes = {2.5};
    f.phases = {0.0};
    CHECK(field_at(f, 0.0) == 2.5);
    f.phases = {std::numbers::pi / 2};
    CHECK(std::abs(field_at(f, 0.0)) < 1e-15);

    FieldRealization a{{1.0}, {0.7}, {0.3}, 0};
    FieldRealization b{{2.2}, {1.1}, {4.0}, 0};
    FieldRealization ab{{1.0, 2.2}, {0.7, 1.1}, {0.3, 4.0}, 0};
    for (double t : {0.0, 0.37, 12.5}) CHECK(field_at(ab, t) == doctest::Approx(field_at(a, t) + field_at(b, t)));
}

TEST_CASE("analytic autocorrelation against closed form") {
    const NaturalUnits u;
    const FieldBand band = small_band(64);
    const double phi0 = autocorrelation_analytic(band, u, 0.0);
    CHECK(phi0 == doctest::Approx(band_power_closed_form(0.9, 1.1)).epsilon(1e-10));
    CHECK(phi0 == doctest::Approx(0.0214329).epsilon(1e-5));
    CHECK(field_autocorrelation(band, u, 0.0) == doctest::Approx(2 * phi0));
    for (double lag : {50.0, 200.0, 1000.0}) CHECK(std::abs(autocorrelation_analytic(band, u, lag)) < phi0);
}

TEST_CASE("analytic autocorrelation at nonzero lag against closed form") {
    // int w^3 cos(w s) dw has an elementary antiderivative.
    const double s = 3.7;
    auto F = [s](double w) {
        const double c = std::cos(w * s), sn = std::sin(w * s);
        return w * w * w * sn / s + 3 * w * w * c / (s * s) - 6 * w * sn / (s * s * s) - 6 * c / std::pow(s, 4);
    };
    const double expected = (F(1.1) - F(0.9)) / (3.0 * std::numbers::pi);
    CHECK(autocorrelation_analytic(small_band(16), NaturalUnits{}, s) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("discrete amplitudes reproduce the band integral") {
    const NaturalUnits u;
    for (auto spacing : {GridSpacing::uniform, GridSpacing::uniform_in_cube}) {
        FieldBand band = small_band(512);
        band.spacing = spacing;
        const auto f = sample_realization(band, u, 7);
        CHECK(discrete_autocorrelation(f, 0.0) == doctest::Approx(field_autocorrelation(band, u, 0.0)).epsilon(1e-4));
        // Within 10 periods of the band centre the discrete sum stays on the integral.
        for (double lag = 0.0; lag <= 10 * 2 * std::numbers::pi; lag += 3.1) {
            CHECK(std::abs(discrete_autocorrelation(f, lag) - field_autocorrelation(band, u, lag)) <
                  0.01 * field_autocorrelation(band, u, 0.0));
        }
    }
}

TEST_CASE("realizations are deterministic and amplitudes seed independent") {
    const NaturalUnits u;
    const FieldBand band = small_band(128);
    const auto a = sample_realization(band, u, 99);
    const auto b = sample_realization(band, u, 99);
    const auto c = sample_realization(band, u, 100);
    CHECK(a.phases == b.phases);
    CHECK(a.amplitudes == b.amplitudes);
    CHECK(a.frequencies == b.frequencies);
    CHECK(a.amplitudes == c.amplitudes);
    CHECK(a.phases != c.phases);
    for (double ph : a.phases) CHECK((ph >= 0.0 && ph < 2 * std::numbers::pi));
}

TEST_CASE("ensemble moments of sampled fields") {
    const NaturalUnits u;
    const FieldBand band = small_band(512);
    const std::size_t n_seeds = 10000;
    const double t = 17.3;
    const double lag = 4.0;
    double s1 = 0, s2 = 0, s12 = 0, corr_sum = 0, ph_a = 0, ph_b = 0, ph_aa = 0, ph_bb = 0, ph_ab = 0;
    for (std::size_t k = 0; k < n_seeds; ++k) {
        const auto f = sample_realization(band, u, member_seed(2024, k));
        const double e = field_at(f, t);
        s1 += e;
        s2 += e * e;
        corr_sum += e * field_at(f, t + lag);
        const double pa = f.phases[10], pb = f.phases[11];
        ph_a += pa;
        ph_b += pb;
        ph_aa += pa * pa;
        ph_bb += pb * pb;
        ph_ab += pa * pb;
    }
    const double n = static_cast<double>(n_seeds);
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean) < 3 * std::sqrt(var / n));
    CHECK(s2 / n == doctest::Approx(field_autocorrelation(band, u, 0.0)).epsilon(0.05));
    CHECK(corr_sum / n == doctest::Approx(field_autocorrelation(band, u, lag)).epsilon(0.05));

    const double cov = ph_ab / n - (ph_a / n) * (ph_b / n);
    const double r = cov / std::sqrt((ph_aa / n - ph_a * ph_a / n / n) * (ph_bb / n - ph_b * ph_b / n / n));
    CHECK(std::abs(r) < 3 / std::sqrt(n));
}

TEST_CASE("band validation") {
    FieldBand band;
    band.omega_min = 0.0;
    CHECK_THROWS_AS(sample_realization(band, NaturalUnits{}, 1), std::invalid_argument);
    band.omega_min = 1.2;
    band.omega_max = 1.0;
    CHECK_THROWS_AS(band.validate(), std::invalid_argument);
    band = FieldBand{};
    band.n_modes = 1;
    CHECK_THROWS_AS(band.validate(), std::invalid_argument);
}

TEST_CASE("resonant band defaults") {
    const FieldBand band = resonant_band(1.0, 1e-3);
    CHECK(band.omega_min == doctest::Approx(0.8));
    CHECK(band.omega_max == doctest::Approx(1.2));
    CHECK(band.n_modes == 1600);
}
