#pragma once

// Coarse-graining scales of the diffusive (Markov) description of the electron.

#include <string>

namespace sedres {

struct PhysicalConstants {
    double alpha = 7.2973525693e-3;
    // Compton angular frequency m c^2 / hbar in 1/s.
    double omega_c = 7.76344071e20;
    double hbar_si = 1.054571817e-34;
    double m_e_si = 9.1093837015e-31;

    void validate() const;
};

// dt = 1 / (alpha^2 w_C).
double markov_timescale(const PhysicalConstants& c);

struct DispersionEstimates {
    double var_x = 0.0;
    // (m v)^2 with v^2 = var_x / dt^2.
    double var_p = 0.0;
    // var_x * var_p, which equals hbar^2 under these definitions.
    double product = 0.0;
};

// var_x = (hbar / m) dt, diffusion coefficient hbar / 2m.
DispersionEstimates dispersion_estimates(double hbar, double m, double delta_t);
DispersionEstimates dispersion_estimates(const PhysicalConstants& c, double delta_t);

std::string scales_summary(const PhysicalConstants& c);

} // namespace sedres
