#include "sedres/markov_scales.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sedres {

void PhysicalConstants::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("constants: alpha must lie in (0, 1)");
    if (!(omega_c > 0.0) || !(hbar_si > 0.0) || !(m_e_si > 0.0))
        throw std::invalid_argument("constants: omega_c, hbar and m_e must be positive");
}

double markov_timescale(const PhysicalConstants& c) {
    c.validate();
    return 1.0 / (c.alpha * c.alpha * c.omega_c);
}

DispersionEstimates dispersion_estimates(double hbar, double m, double delta_t) {
    if (!(delta_t > 0.0)) throw std::invalid_argument("dispersion_estimates: delta_t must be positive");
    if (!(hbar > 0.0) || !(m > 0.0)) throw std::invalid_argument("dispersion_estimates: hbar and m must be positive");
    DispersionEstimates d;
    d.var_x = hbar / m * delta_t;
    const double v2 = d.var_x / (delta_t * delta_t);
    d.var_p = m * m * v2;
    d.product = d.var_x * d.var_p;
    return d;
}

DispersionEstimates dispersion_estimates(const PhysicalConstants& c, double delta_t) {
    c.validate();
    return dispersion_estimates(c.hbar_si, c.m_e_si, delta_t);
}

std::string scales_summary(const PhysicalConstants& c) {
    const double dt = markov_timescale(c);
    const auto d = dispersion_estimates(c, dt);
    std::ostringstream os;
    os.precision(6);
    os << "alpha                      " << c.alpha << "\n"
       << "Compton angular frequency  " << c.omega_c << " 1/s\n"
       << "Markov time resolution dt  " << dt << " s (order 1e-17 s)\n"
       << "position variance          " << d.var_x << " m^2\n"
       << "position spread            " << std::sqrt(d.var_x) << " m\n"
       << "momentum variance (order)  " << d.var_p << " kg^2 m^2/s^2\n"
       << "product / hbar^2           " << d.product / (c.hbar_si * c.hbar_si)
       << " (order-of-magnitude estimate; the simulated ground state gives 1/4)\n";
    return os.str();
}

} // namespace sedres
