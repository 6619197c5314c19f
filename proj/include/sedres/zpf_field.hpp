#pragma once

// Zero-point field as a band-limited sum of cosine modes with random phases.
//
// A realization is E(t) = sum_a E_a cos(w_a t + phi_a). The frequency grid and
// the amplitudes depend only on the band and the units; the phases are i.i.d.
// uniform on [0, 2pi) drawn from the realization seed. Amplitudes are fixed by
//
//     E_a^2 / 2 = (4 pi / 3) rho0(w_a) dw_a,     rho0(w) = hbar w^3 / (2 pi^2 c^3),
//
// so the ensemble autocorrelation of one Cartesian component is the even
// (two-sided) extension of (2 pi / 3) int rho0(w) cos(w s) dw over the band.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sedres/units.hpp"

namespace sedres {

enum class GridSpacing { uniform, uniform_in_cube };

struct FieldBand {
    double omega_min = 0.8;
    double omega_max = 1.2;
    std::size_t n_modes = 1600;
    GridSpacing spacing = GridSpacing::uniform;
    // Fraction of the local grid step over which each node is displaced.
    double jitter = 0.1;

    void validate() const;
    double center() const { return 0.5 * (omega_min + omega_max); }

    friend bool operator==(const FieldBand&, const FieldBand&) = default;
};

// Band of +-half_width linewidths (tau w0^2) around w0 with `modes_per_linewidth`
// grid nodes per linewidth. The lower edge is clamped to 5% of w0.
FieldBand resonant_band(double omega0, double tau, double half_width_linewidths = 200.0,
                        double modes_per_linewidth = 4.0);

struct ModeGrid {
    std::vector<double> omega;
    std::vector<double> width;
};

// Deterministic node positions and cell widths for a band (jitter included).
ModeGrid mode_grid(const FieldBand& band);

struct FieldRealization {
    std::vector<double> frequencies;
    std::vector<double> amplitudes;
    std::vector<double> phases;
    std::uint64_t seed = 0;

    std::size_t size() const { return frequencies.size(); }
    void validate() const;
};

// Energy per unit volume per unit angular frequency. Throws std::domain_error for omega < 0.
double spectral_density(double omega, const NaturalUnits& units);

FieldRealization sample_realization(const FieldBand& band, const NaturalUnits& units,
                                    std::uint64_t seed);

double field_at(const FieldRealization& field, double t);

// Samples E on t_k = t0 + k dt, k < n.
std::vector<double> field_series(const FieldRealization& field, double t0, double dt, std::size_t n);

// (2 pi / 3) int_band rho0(w) cos(w lag) dw by adaptive quadrature.
double autocorrelation_analytic(const FieldBand& band, const NaturalUnits& units, double lag);

// Correlation <E(t) E(t + lag)> of the sampled field: the same integrand taken
// over both signs of frequency, i.e. twice autocorrelation_analytic.
double field_autocorrelation(const FieldBand& band, const NaturalUnits& units, double lag);

// Exact phase average of E(t) E(t + lag) for the discrete mode set.
double discrete_autocorrelation(const FieldRealization& field, double lag);

// Canonical normal amplitude of mode a. A mode of energy hbar w |a|^2 has
// unit-modulus phase factor; the zero-point mode carries hbar w / 2, so
// |a| = 1/sqrt(2). Positive-frequency part of E is sqrt(2) E_a a e^{-i w t}.
std::complex<double> normal_amplitude(const FieldRealization& field, std::size_t mode);

} // namespace sedres
