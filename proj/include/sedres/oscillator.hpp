#pragma once

// Harmonically bound charge driven by a field realization:
//
//     m x'' + m w0^2 x - m tau x''' = e E(t)
//
// with the third derivative reduced to first order in tau (x''' -> -w0^2 x'),
// i.e. a damped driven oscillator with damping rate gamma = tau w0^2.

#include <complex>
#include <cstddef>
#include <vector>

#include "sedres/units.hpp"
#include "sedres/zpf_field.hpp"

namespace sedres {

struct OscillatorParams {
    double m = 1.0;
    double e = 0.0;
    double omega0 = 1.0;
    double tau = 0.0;

    double damping() const { return tau * omega0 * omega0; }
    // Throws std::invalid_argument; returns true when tau w0 is above 1e-2.
    bool validate() const;

    friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;
};

// Charge consistent with tau = 2 e^2 / (3 m c^3).
double charge_for_tau(double tau, double m, const NaturalUnits& units);

OscillatorParams make_oscillator(const NaturalUnits& units, double omega0, double tau);

// Susceptibility of the reduced equation, 1 / (w0^2 - w^2 - i gamma w), for
// fields written as Re(E e^{-i w t}).
std::complex<double> reduced_susceptibility(double omega, const OscillatorParams& params);

enum class TrajectorySource { time_domain, spectral };

struct Trajectory {
    double dt = 0.0;
    double t0 = 0.0;
    std::vector<double> x;
    std::vector<double> p;
    std::vector<double> e_field;
    OscillatorParams params;
    TrajectorySource source = TrajectorySource::time_domain;

    std::size_t size() const { return x.size(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double velocity(std::size_t i) const { return p[i] / params.m; }
    // From the reduced equation of motion.
    double acceleration(std::size_t i) const;
    double energy(std::size_t i) const;
};

struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 0;
};

struct IntegrationOptions {
    double dt = 0.1;
    double t_end = 0.0;
    double transient = 0.0;
    double x0 = 0.0;
    double p0 = 0.0;
    std::size_t record_stride = 1;
    // Reject dt above (2 pi / w_max) / 20. Disabling it leaves only the energy guard.
    bool check_step_bound = true;
};

// Fixed-step classical RK4. Samples from t >= transient up to t_end are kept.
// Throws IntegrationError if the energy exceeds 100 times the larger of the
// initial energy and the equilibrium estimate.
Trajectory integrate_time_domain(const OscillatorParams& params, const FieldRealization& field,
                                 const IntegrationOptions& options);

Trajectory integrate_time_domain(const OscillatorParams& params, const FieldRealization& field, double dt,
                                 double t_end, double transient);

// Exact stationary solution of the reduced equation, mode by mode:
// x(t) = sum_a (e/m) |chi(w_a)| E_a cos(w_a t + phi_a - arg chi(w_a)).
Trajectory steady_state_spectral(const OscillatorParams& params, const FieldRealization& field,
                                 const TimeGrid& grid);

// Max of |x'' + gamma x' + w0^2 x - (e/m) E| over the grid, relative to the
// largest single term, with all derivatives taken analytically per mode.
double spectral_ode_residual(const OscillatorParams& params, const FieldRealization& field,
                             const TimeGrid& grid);

// Phase-averaged energy of the stationary solution for this mode set.
double equilibrium_energy(const OscillatorParams& params, const FieldRealization& field);

// Phase-averaged <x^2> of the stationary solution for this mode set.
double equilibrium_variance_x(const OscillatorParams& params, const FieldRealization& field);

} // namespace sedres
