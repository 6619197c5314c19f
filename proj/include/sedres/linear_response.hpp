#pragma once

// Susceptibility of a single resonance, its time-domain response function,
// the Kramers-Kronig check, and the resonance covariance integral.

#include <complex>
#include <cstddef>
#include <vector>

#include "sedres/units.hpp"

namespace sedres {

// cubic: 1 / (w_kn^2 - w^2 - i tau w^3).
// reduced: 1 / (w_kn^2 - w^2 - i tau w_kn^2 w), the damped-oscillator form used by the dynamics.
enum class DampingConvention { cubic, reduced };

std::complex<double> susceptibility_at(double omega, double omega_kn, double tau,
                                       DampingConvention convention = DampingConvention::cubic);

struct Susceptibility {
    double omega_kn = 1.0;
    double tau = 0.0;
    DampingConvention convention = DampingConvention::cubic;
    std::vector<double> omega;
    std::vector<std::complex<double>> values;
};

Susceptibility tabulate_susceptibility(double omega_kn, double tau, std::vector<double> omega,
                                       DampingConvention convention = DampingConvention::cubic);

// Uniform grid of n_points over w_kn +- half_width linewidths (tau w_kn^2).
Susceptibility resonance_grid(double omega_kn, double tau, double half_width_linewidths, std::size_t n_points,
                              DampingConvention convention = DampingConvention::cubic);

struct ResponseFunction {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> chi;
    // max |Im chi(t)| / max |Re chi(t)| of the inverse transform.
    double imaginary_fraction = 0.0;
};

// chi(t) = (1/2pi) int sum_k chi_kn(w) e^{-i w t} dw on t_j = (j - n/2) dt, j < n, by FFT.
// The -1/w^2 tail of each term is transformed analytically. n must be even;
// pi/dt must be at least 10 max |w_kn| (aliasing guard), and n dt / 2 at least
// 5 damping times. The transform is periodic in n dt, so values at t < 0 stay
// below 1e-3 of the peak only when n dt exceeds about 28 damping times.
ResponseFunction response_function(const std::vector<double>& omega_kn, double tau, double dt, std::size_t n,
                                   DampingConvention convention = DampingConvention::cubic);

struct KramersKronig {
    std::vector<double> omega;
    std::vector<double> reconstructed_real;
    // max |reconstructed - Re chi| / max |Re chi| over the inner 80% of the grid.
    double max_relative_error = 0.0;
};

// Re chi(w) = (1/pi) PV int_0^inf Im chi(w') [1/(w' - w) + 1/(w' + w)] dw', with
// Im chi taken piecewise linear on the (positive, uniform) grid and each
// interval integrated in closed form. Throws CoverageError unless the grid
// spans w_kn +- 50 linewidths.
KramersKronig kramers_kronig_reconstruct(const Susceptibility& s);

struct ResonanceCovariance {
    double numeric = 0.0;
    double abs_error = 0.0;
    // Narrow-line limit hbar / (2 m |w_kn|).
    double delta_limit = 0.0;
    double ratio = 0.0;
    // The closed form hbar / (m |w_kn|), twice the narrow-line limit; reported only.
    double quoted = 0.0;
};

// (hbar tau / pi m) int_0^inf w^3 / ((w_kn^2 - w^2)^2 + tau^2 w^6) dw. Requires tau |w_kn| <= 1e-2.
ResonanceCovariance resonance_covariance(double omega_kn, double tau, const NaturalUnits& units);

} // namespace sedres
