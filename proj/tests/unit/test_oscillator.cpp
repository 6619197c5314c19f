#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "sedres/ensemble.hpp"
#include "sedres/errors.hpp"
#include "sedres/oscillator.hpp"
#include "sedres/quadrature.hpp"

using namespace sedres;

namespace {

constexpr double tau_default = 1e-3;

// Band-limited phase averages of the stationary solution by quadrature:
// (e/m)^2 (4 pi / 3) int rho0 |chi|^2 w(omega) d omega.
double band_moment(const OscillatorParams& p, const FieldBand& band, const NaturalUnits& u,
                   double (*weight)(double, const OscillatorParams&)) {
    const double w0 = p.omega0, g = p.damping();
    auto f = [&](double w) {
        const double d = (w0 * w0 - w * w) * (w0 * w0 - w * w) + g * g * w * w;
        return spectral_density(w, u) / d * weight(w, p);
    };
    const double lw = g;
    std::vector<double> cuts;
    for (double k : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) cuts.push_back(w0 + k * lw);
    const auto r = quad::integrate(f, band.omega_min, band.omega_max, cuts, {0.0, 1e-11, 5000});
    return (p.e / p.m) * (p.e / p.m) * (4.0 * std::numbers::pi / 3.0) * r.value;
}

double weight_x(double, const OscillatorParams&) { return 1.0; }
double weight_energy(double w, const OscillatorParams& p) { return 0.5 * p.m * (p.omega0 * p.omega0 + w * w); }

FieldRealization single_mode(double omega, double amplitude, double phase) {
    return FieldRealization{{omega}, {amplitude}, {phase}, 0};
}

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace

TEST_CASE("parameter validation") {
    OscillatorParams p;
    p.tau = 0.2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.tau = 0.05;
    CHECK(p.validate());  // warns above 1e-2
    p.tau = 1e-3;
    CHECK_FALSE(p.validate());
    p.omega0 = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    const auto q = make_oscillator(NaturalUnits{}, 1.0, 1e-3);
    CHECK(2.0 * q.e * q.e / 3.0 == doctest::Approx(1e-3));
}

TEST_CASE("free damped oscillator loses energy at rate tau w0^2") {
    OscillatorParams p;
    p.tau = 1e-2;
    IntegrationOptions opt;
    opt.dt = 0.05;
    opt.x0 = 1.0;
    opt.t_end = 10.0 / p.damping();
    const auto tr = integrate_time_domain(p, FieldRealization{}, opt);
    const double rate = std::log(tr.energy(0) / tr.energy(tr.size() - 1)) / opt.t_end;
    CHECK(rate == doctest::Approx(p.damping()).epsilon(0.02));
}

TEST_CASE("undamped free oscillator conserves energy") {
    OscillatorParams p;
    IntegrationOptions opt;
    opt.dt = 0.01;
    opt.x0 = 1.0;
    opt.t_end = 1e4 * 2.0 * std::numbers::pi;
    opt.record_stride = 1000;
    const auto tr = integrate_time_domain(p, FieldRealization{}, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, std::abs(tr.energy(i) / 0.5 - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("single-mode stationary response") {
    const NaturalUnits u;
    const auto p = make_oscillator(u, 1.0, tau_default);
    const double a = 0.3;

    SUBCASE("at resonance: amplitude (e/m) A / (tau w0^3), lag pi/2") {
        const auto f = single_mode(1.0, a, 0.0);
        const auto tr = steady_state_spectral(p, f, TimeGrid{0.0, std::numbers::pi / 2, 2});
        const double expected = p.e / p.m * a / (p.tau * std::pow(p.omega0, 3));
        CHECK(std::abs(tr.x[0]) < 1e-12 * expected);
        CHECK(tr.x[1] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(reduced_susceptibility(1.0, p) - std::complex<double>(0.0, 1.0 / p.tau)) < 1e-9);
    }
    SUBCASE("far below resonance: static response, no lag") {
        const auto f = single_mode(1e-3, a, 0.0);
        const auto tr = steady_state_spectral(p, f, TimeGrid{0.0, 1.0, 2});
        CHECK(tr.x[0] == doctest::Approx(p.e * a / (p.m * p.omega0 * p.omega0)).epsilon(1e-5));
    }
    SUBCASE("momentum is m dx/dt") {
        const auto f = single_mode(0.97, a, 1.1);
        const double h = 1e-5;
        const auto tr = steady_state_spectral(p, f, TimeGrid{3.0 - h, h, 3});
        CHECK(tr.p[1] == doctest::Approx(p.m * (tr.x[2] - tr.x[0]) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("spectral solution satisfies the reduced equation") {
    const NaturalUnits u;
    for (double tau : {1e-3, 1e-2}) {
        const auto p = make_oscillator(u, 1.0, tau);
        FieldBand band = resonant_band(1.0, tau);
        band.n_modes = 300;
        const auto f = sample_realization(band, u, 5);
        CHECK(spectral_ode_residual(p, f, TimeGrid{10.0, 0.37, 200}) < 1e-8);
    }
}

TEST_CASE("linearity in the field amplitudes") {
    const NaturalUnits u;
    const auto p = make_oscillator(u, 1.0, 1e-2);
    FieldBand band = resonant_band(1.0, 1e-2, 50.0, 2.0);
    auto f = sample_realization(band, u, 11);
    auto g = f;
    const double lambda = 2.5;
    for (auto& amp : g.amplitudes) amp *= lambda;

    const TimeGrid grid{0.0, 0.5, 400};
    const auto a = steady_state_spectral(p, f, grid);
    const auto b = steady_state_spectral(p, g, grid);
    for (std::size_t i = 0; i < grid.n; ++i) {
        CHECK(b.x[i] == doctest::Approx(lambda * a.x[i]).epsilon(1e-12).scale(rms(a.x)));
        CHECK(b.p[i] == doctest::Approx(lambda * a.p[i]).epsilon(1e-12).scale(rms(a.p)));
    }

    const auto c = integrate_time_domain(p, f, 0.1, 600.0, 100.0);
    const auto d = integrate_time_domain(p, g, 0.1, 600.0, 100.0);
    for (std::size_t i = 0; i < c.size(); i += 50)
        CHECK(d.x[i] == doctest::Approx(lambda * c.x[i]).epsilon(1e-9).scale(rms(c.x)));
}

TEST_CASE("time-domain integrator reproduces the spectral oracle") {
    const NaturalUnits u;
    for (double tau : {1e-3, 1e-2}) {
        CAPTURE(tau);
        const auto p = make_oscillator(u, 1.0, tau);
        const FieldBand band = resonant_band(1.0, tau);
        const auto f = sample_realization(band, u, 77);
        double omega_max = band.omega_max;
        IntegrationOptions opt;
        opt.dt = std::min(0.1, 2.0 * std::numbers::pi / omega_max / 20.0);
        opt.transient = 12.0 / p.damping();
        opt.t_end = opt.transient + 4.0 / p.damping();
        opt.record_stride = 5;
        const auto td = integrate_time_domain(p, f, opt);
        const auto sp = steady_state_spectral(p, f, TimeGrid{td.t0, td.dt, td.size()});
        std::vector<double> diff(td.size());
        for (std::size_t i = 0; i < td.size(); ++i) diff[i] = td.x[i] - sp.x[i];
        CHECK(rms(diff) / rms(sp.x) < 0.01);
    }
}

TEST_CASE("equilibrium does not depend on the initial condition") {
    const NaturalUnits u;
    const auto p = make_oscillator(u, 1.0, 1e-2);
    const auto f = sample_realization(resonant_band(1.0, 1e-2), u, 3);
    IntegrationOptions opt;
    opt.dt = 0.1;
    opt.transient = 16.0 / p.damping();
    opt.t_end = opt.transient + 500.0;
    const auto a = integrate_time_domain(p, f, opt);
    opt.x0 = 5.0;
    opt.p0 = -2.0;
    const auto b = integrate_time_domain(p, f, opt);
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a.x[i] - b.x[i];
    CHECK(rms(diff) / rms(a.x) < 0.01);
}

TEST_CASE("step-size precondition and stability guard") {
    const NaturalUnits u;
    const auto p = make_oscillator(u, 1.0, 1e-3);
    const auto f = sample_realization(resonant_band(1.0, 1e-3, 20.0, 2.0), u, 1);
    CHECK_THROWS_AS(integrate_time_domain(p, f, 0.5, 100.0, 0.0), std::invalid_argument);

    IntegrationOptions opt;
    opt.dt = 3.0;
    opt.t_end = 3000.0;
    opt.check_step_bound = false;
    try {
        integrate_time_domain(p, f, opt);
        FAIL("expected an integration failure");
    } catch (const IntegrationError& err) {
        CHECK(err.dt() == 3.0);
        CHECK(std::string(err.what()).find("dt = 3") != std::string::npos);
    }
}

TEST_CASE("stationary moments of the spectral ensemble") {
    const NaturalUnits u;
    const auto p = make_oscillator(u, 1.0, tau_default);
    EnsembleRun run;
    run.params = p;
    run.units = u;
    run.band = resonant_band(1.0, tau_default);
    run.master_seed = 424242;
    run.n_members = 1000;
    run.grid = TimeGrid{0.0, 8.0, 2000};
    const auto members = run_ensemble(run);
    const auto s = ensemble_statistics(members);

    const double var_oracle = band_moment(p, run.band, u, weight_x);
    const double energy_oracle = band_moment(p, run.band, u, weight_energy);
    CHECK(var_oracle == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var_oracle == doctest::Approx(equilibrium_variance_x(p, sample_realization(run.band, u, 0))).epsilon(1e-3));
    CHECK(energy_oracle == doctest::Approx(equilibrium_energy(p, sample_realization(run.band, u, 0))).epsilon(1e-3));

    CHECK(s.var_x == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(s.var_x - var_oracle) < 3 * s.se_var_x);
    CHECK(std::abs(s.mean_energy - energy_oracle) < 3 * s.se_mean_energy);
    CHECK(s.mean_energy == doctest::Approx(0.5).epsilon(0.05));
    CHECK(s.uncertainty_product == doctest::Approx(0.5).epsilon(0.05));
    CHECK(s.var_p / (p.m * p.m * p.omega0 * p.omega0 * s.var_x) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(s.mean_x) < 3 * s.se_mean_x + 1e-12);

    const auto v = variance_x_estimators(members, 16);
    CHECK(std::abs(v.phase_average - v.time_average) <
          2 * std::sqrt(v.se_phase_average * v.se_phase_average + v.se_time_average * v.se_time_average));
}
