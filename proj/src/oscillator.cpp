#include "sedres/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "sedres/errors.hpp"
#include "sedres/phasor_bank.hpp"

namespace sedres {

bool OscillatorParams::validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("oscillator.mass must be positive");
    if (!(omega0 > 0.0)) throw std::invalid_argument("oscillator.omega0 must be positive");
    if (!(tau >= 0.0)) throw std::invalid_argument("oscillator.tau must be non-negative");
    if (!std::isfinite(e)) throw std::invalid_argument("oscillator.charge must be finite");
    if (tau * omega0 > 0.1)
        throw std::invalid_argument("oscillator: tau*omega0 must not exceed 0.1 (got " +
                                    std::to_string(tau * omega0) + ")");
    return tau * omega0 > 1e-2;
}

double charge_for_tau(double tau, double m, const NaturalUnits& units) {
    return std::sqrt(1.5 * m * units.c * units.c * units.c * tau);
}

OscillatorParams make_oscillator(const NaturalUnits& units, double omega0, double tau) {
    OscillatorParams p;
    p.m = units.m;
    p.omega0 = omega0;
    p.tau = tau;
    p.e = charge_for_tau(tau, units.m, units);
    return p;
}

std::complex<double> reduced_susceptibility(double omega, const OscillatorParams& params) {
    const double w0 = params.omega0;
    return 1.0 / std::complex<double>(w0 * w0 - omega * omega, -params.damping() * omega);
}

double Trajectory::acceleration(std::size_t i) const {
    const double w0 = params.omega0;
    return params.e / params.m * e_field[i] - w0 * w0 * x[i] - params.damping() * velocity(i);
}

double Trajectory::energy(std::size_t i) const {
    const double w0 = params.omega0;
    return 0.5 * p[i] * p[i] / params.m + 0.5 * params.m * w0 * w0 * x[i] * x[i];
}

namespace {

std::vector<std::complex<double>> field_phasors(const FieldRealization& field) {
    std::vector<std::complex<double>> c(field.size());
    for (std::size_t a = 0; a < field.size(); ++a) c[a] = std::polar(field.amplitudes[a], field.phases[a]);
    return c;
}

// Response coefficient K_a such that x = sum Re(K_a z_a), z_a = E_a e^{i(w t + phi)}.
// With the e^{+i w t} convention the response is the conjugate susceptibility.
std::complex<double> response_coefficient(double omega, const OscillatorParams& params) {
    return params.e / params.m * std::conj(reduced_susceptibility(omega, params));
}

} // namespace

double equilibrium_variance_x(const OscillatorParams& params, const FieldRealization& field) {
    double var = 0.0;
    for (std::size_t a = 0; a < field.size(); ++a) {
        const double amp = std::abs(response_coefficient(field.frequencies[a], params)) * field.amplitudes[a];
        var += 0.5 * amp * amp;
    }
    return var;
}

double equilibrium_energy(const OscillatorParams& params, const FieldRealization& field) {
    double energy = 0.0;
    const double w0 = params.omega0;
    for (std::size_t a = 0; a < field.size(); ++a) {
        const double w = field.frequencies[a];
        const double amp = std::abs(response_coefficient(w, params)) * field.amplitudes[a];
        energy += 0.25 * params.m * amp * amp * (w0 * w0 + w * w);
    }
    return energy;
}

Trajectory integrate_time_domain(const OscillatorParams& params, const FieldRealization& field,
                                 const IntegrationOptions& opt) {
    params.validate();
    field.validate();
    if (!(opt.dt > 0.0)) throw std::invalid_argument("integration.dt must be positive");
    if (!(opt.t_end > opt.transient) || opt.transient < 0.0)
        throw std::invalid_argument("integration: need 0 <= transient < t_end");
    if (opt.record_stride == 0) throw std::invalid_argument("integration.record_stride must be positive");

    double omega_max = params.omega0;
    for (double w : field.frequencies) omega_max = std::max(omega_max, w);
    if (opt.check_step_bound && opt.dt > two_pi / omega_max / 20.0) {
        std::ostringstream msg;
        msg << "integration.dt = " << opt.dt << " exceeds (2 pi / omega_max) / 20 = " << two_pi / omega_max / 20.0;
        throw std::invalid_argument(msg.str());
    }

    const double m = params.m;
    const double w0sq = params.omega0 * params.omega0;
    const double gamma = params.damping();
    const double q_over_m = params.e / m;

    const auto total_steps = static_cast<std::size_t>(std::llround(opt.t_end / opt.dt));
    auto first_kept = static_cast<std::size_t>(std::ceil(opt.transient / opt.dt - 1e-9));
    if (first_kept > total_steps) first_kept = total_steps;

    const double initial_energy = 0.5 * opt.p0 * opt.p0 / m + 0.5 * m * w0sq * opt.x0 * opt.x0;
    const double reference_energy = std::max({initial_energy, equilibrium_energy(params, field), 1e-300});
    // Stationary energy is exponentially distributed, so a fluctuation above k times
    // the mean has probability e^-k per correlation time; instabilities grow geometrically.
    const double energy_limit = 100.0 * reference_energy;

    // Field on the half-step grid: RK4 needs E(t), E(t + dt/2), E(t + dt).
    const auto coeff = field_phasors(field);
    PhasorBank bank(field.frequencies, coeff, 0.0, 0.5 * opt.dt);

    Trajectory traj;
    traj.params = params;
    traj.source = TrajectorySource::time_domain;
    traj.dt = opt.dt * static_cast<double>(opt.record_stride);
    traj.t0 = static_cast<double>(first_kept) * opt.dt;
    const std::size_t n_keep = (total_steps - first_kept) / opt.record_stride + 1;
    traj.x.reserve(n_keep);
    traj.p.reserve(n_keep);
    traj.e_field.reserve(n_keep);

    double x = opt.x0;
    double v = opt.p0 / m;
    double e_now = bank.real_sum();
    auto accel = [&](double e, double xx, double vv) { return q_over_m * e - w0sq * xx - gamma * vv; };
    const double h = opt.dt;

    for (std::size_t k = 0;; ++k) {
        if (k >= first_kept && (k - first_kept) % opt.record_stride == 0) {
            traj.x.push_back(x);
            traj.p.push_back(m * v);
            traj.e_field.push_back(e_now);
        }
        if (k == total_steps) break;

        bank.advance();
        const double e_mid = bank.real_sum();
        bank.advance();
        const double e_next = bank.real_sum();

        const double k1x = v;
        const double k1v = accel(e_now, x, v);
        const double k2x = v + 0.5 * h * k1v;
        const double k2v = accel(e_mid, x + 0.5 * h * k1x, k2x);
        const double k3x = v + 0.5 * h * k2v;
        const double k3v = accel(e_mid, x + 0.5 * h * k2x, k3x);
        const double k4x = v + h * k3v;
        const double k4v = accel(e_next, x + h * k3x, k4x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        e_now = e_next;

        const double energy = 0.5 * m * v * v + 0.5 * m * w0sq * x * x;
        if (!(energy <= energy_limit)) {
            std::ostringstream msg;
            msg << "time-domain integration unstable with dt = " << opt.dt << ": energy " << energy
                << " exceeds 100x the equilibrium estimate " << reference_energy << " at t = "
                << static_cast<double>(k + 1) * h;
            throw IntegrationError(msg.str(), opt.dt);
        }
    }
    return traj;
}

Trajectory integrate_time_domain(const OscillatorParams& params, const FieldRealization& field, double dt,
                                 double t_end, double transient) {
    IntegrationOptions opt;
    opt.dt = dt;
    opt.t_end = t_end;
    opt.transient = transient;
    return integrate_time_domain(params, field, opt);
}

Trajectory steady_state_spectral(const OscillatorParams& params, const FieldRealization& field,
                                 const TimeGrid& grid) {
    params.validate();
    field.validate();
    if (grid.n < 2) throw std::invalid_argument("steady_state_spectral: time grid needs at least 2 points");

    const std::size_t n_modes = field.size();
    std::vector<double> kx_re(n_modes), kx_im(n_modes), kp_re(n_modes), kp_im(n_modes);
    for (std::size_t a = 0; a < n_modes; ++a) {
        const double w = field.frequencies[a];
        const std::complex<double> kx = response_coefficient(w, params);
        const std::complex<double> kp = std::complex<double>(0.0, params.m * w) * kx;
        kx_re[a] = kx.real();
        kx_im[a] = kx.imag();
        kp_re[a] = kp.real();
        kp_im[a] = kp.imag();
    }

    PhasorBank bank(field.frequencies, field_phasors(field), grid.t0, grid.dt);
    Trajectory traj;
    traj.params = params;
    traj.source = TrajectorySource::spectral;
    traj.dt = grid.dt;
    traj.t0 = grid.t0;
    traj.x.resize(grid.n);
    traj.p.resize(grid.n);
    traj.e_field.resize(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        bank.real_sums(kx_re, kx_im, kp_re, kp_im, traj.e_field[k], traj.x[k], traj.p[k]);
        if (k + 1 < grid.n) bank.advance();
    }
    return traj;
}

double spectral_ode_residual(const OscillatorParams& params, const FieldRealization& field,
                             const TimeGrid& grid) {
    params.validate();
    const double w0sq = params.omega0 * params.omega0;
    const double gamma = params.damping();
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double t = grid.t0 + static_cast<double>(k) * grid.dt;
        double x = 0.0, v = 0.0, acc = 0.0, e = 0.0;
        for (std::size_t a = 0; a < field.size(); ++a) {
            const double w = field.frequencies[a];
            const std::complex<double> z = std::polar(field.amplitudes[a], w * t + field.phases[a]);
            const std::complex<double> kz = response_coefficient(w, params) * z;
            const std::complex<double> iw(0.0, w);
            e += z.real();
            x += kz.real();
            v += (iw * kz).real();
            acc += (iw * iw * kz).real();
        }
        const double scale =
            std::max({std::abs(acc), std::abs(w0sq * x), std::abs(params.e / params.m * e), 1e-300});
        const double residual = acc + gamma * v + w0sq * x - params.e / params.m * e;
        worst = std::max(worst, std::abs(residual) / scale);
    }
    return worst;
}

} // namespace sedres
