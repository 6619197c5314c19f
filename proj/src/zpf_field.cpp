#include "sedres/zpf_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sedres/phasor_bank.hpp"
#include "sedres/quadrature.hpp"
#include "sedres/rng.hpp"

namespace sedres {
namespace {

// Fixed stream for the grid jitter: the grid is a property of the band, not of a realization.
constexpr std::uint64_t grid_jitter_seed = 0x6a09e667f3bcc909ULL;

double to_grid_variable(double omega, GridSpacing s) {
    return s == GridSpacing::uniform ? omega : omega * omega * omega;
}

double from_grid_variable(double u, GridSpacing s) {
    return s == GridSpacing::uniform ? u : std::cbrt(u);
}

} // namespace

void FieldBand::validate() const {
    if (!(omega_min > 0.0)) throw std::invalid_argument("band.omega_min must be positive");
    if (!(omega_max > omega_min)) throw std::invalid_argument("band.omega_max must exceed band.omega_min");
    if (n_modes < 2) throw std::invalid_argument("band.n_modes must be at least 2");
    if (!(jitter >= 0.0 && jitter < 1.0)) throw std::invalid_argument("band.jitter must lie in [0, 1)");
}

FieldBand resonant_band(double omega0, double tau, double half_width_linewidths,
                        double modes_per_linewidth) {
    if (!(omega0 > 0.0) || !(tau > 0.0)) throw std::invalid_argument("resonant_band: need omega0 > 0, tau > 0");
    const double linewidth = tau * omega0 * omega0;
    FieldBand band;
    band.omega_min = std::max(omega0 - half_width_linewidths * linewidth, 0.05 * omega0);
    band.omega_max = omega0 + half_width_linewidths * linewidth;
    const double count = (band.omega_max - band.omega_min) / linewidth * modes_per_linewidth;
    band.n_modes = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(count)));
    return band;
}

ModeGrid mode_grid(const FieldBand& band) {
    band.validate();
    const std::size_t n = band.n_modes;
    const double u_lo = to_grid_variable(band.omega_min, band.spacing);
    const double u_hi = to_grid_variable(band.omega_max, band.spacing);
    const double step = (u_hi - u_lo) / static_cast<double>(n);

    Rng rng(grid_jitter_seed);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double offset = (rng.uniform() - 0.5) * band.jitter * step;
        u[i] = u_lo + (static_cast<double>(i) + 0.5) * step + offset;
    }

    ModeGrid grid;
    grid.omega.resize(n);
    grid.width.resize(n);
    double lower = band.omega_min;
    for (std::size_t i = 0; i < n; ++i) {
        const double upper =
            i + 1 < n ? from_grid_variable(0.5 * (u[i] + u[i + 1]), band.spacing) : band.omega_max;
        grid.omega[i] = from_grid_variable(u[i], band.spacing);
        grid.width[i] = upper - lower;
        lower = upper;
    }
    return grid;
}

void FieldRealization::validate() const {
    if (frequencies.size() != amplitudes.size() || frequencies.size() != phases.size())
        throw std::invalid_argument("FieldRealization: frequency, amplitude and phase lists differ in length");
}

double spectral_density(double omega, const NaturalUnits& units) {
    if (omega < 0.0) throw std::domain_error("spectral_density: negative frequency " + std::to_string(omega));
    return units.hbar * omega * omega * omega / (2.0 * pi * pi * units.c * units.c * units.c);
}

FieldRealization sample_realization(const FieldBand& band, const NaturalUnits& units, std::uint64_t seed) {
    units.validate();
    const ModeGrid grid = mode_grid(band);
    FieldRealization out;
    out.seed = seed;
    out.frequencies = grid.omega;
    out.amplitudes.resize(grid.omega.size());
    out.phases.resize(grid.omega.size());
    for (std::size_t a = 0; a < grid.omega.size(); ++a) {
        const double half_square = (4.0 * pi / 3.0) * spectral_density(grid.omega[a], units) * grid.width[a];
        out.amplitudes[a] = std::sqrt(2.0 * half_square);
    }
    Rng rng(seed);
    for (auto& phi : out.phases) phi = two_pi * rng.uniform();
    return out;
}

double field_at(const FieldRealization& field, double t) {
    double e = 0.0;
    for (std::size_t a = 0; a < field.size(); ++a)
        e += field.amplitudes[a] * std::cos(field.frequencies[a] * t + field.phases[a]);
    return e;
}

std::vector<double> field_series(const FieldRealization& field, double t0, double dt, std::size_t n) {
    field.validate();
    std::vector<std::complex<double>> coeff(field.size());
    for (std::size_t a = 0; a < field.size(); ++a) coeff[a] = std::polar(field.amplitudes[a], field.phases[a]);
    PhasorBank bank(field.frequencies, coeff, t0, dt);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = bank.real_sum();
        if (k + 1 < n) bank.advance();
    }
    return out;
}

double autocorrelation_analytic(const FieldBand& band, const NaturalUnits& units, double lag) {
    band.validate();
    units.validate();
    auto integrand = [&](double w) { return spectral_density(w, units) * std::cos(w * lag); };
    // Split so each panel holds a bounded number of oscillations.
    std::vector<double> cuts;
    const double period = lag != 0.0 ? two_pi / std::abs(lag) : 0.0;
    if (period > 0.0) {
        const double width = band.omega_max - band.omega_min;
        const auto panels = static_cast<std::size_t>(std::min(1.0e5, std::ceil(width / period)));
        for (std::size_t i = 1; i < panels; ++i)
            cuts.push_back(band.omega_min + width * static_cast<double>(i) / static_cast<double>(panels));
    }
    quad::Options opts;
    opts.rel_tol = 1e-11;
    opts.abs_tol = 1e-15 * spectral_density(band.omega_max, units) * (band.omega_max - band.omega_min);
    opts.max_intervals = 20000 + 4 * cuts.size();
    const auto r = quad::integrate(integrand, band.omega_min, band.omega_max, cuts, opts);
    return (2.0 * pi / 3.0) * r.value;
}

double field_autocorrelation(const FieldBand& band, const NaturalUnits& units, double lag) {
    return 2.0 * autocorrelation_analytic(band, units, lag);
}

double discrete_autocorrelation(const FieldRealization& field, double lag) {
    double s = 0.0;
    for (std::size_t a = 0; a < field.size(); ++a)
        s += 0.5 * field.amplitudes[a] * field.amplitudes[a] * std::cos(field.frequencies[a] * lag);
    return s;
}

std::complex<double> normal_amplitude(const FieldRealization& field, std::size_t mode) {
    return std::polar(1.0 / std::sqrt(2.0), -field.phases.at(mode));
}

} // namespace sedres
