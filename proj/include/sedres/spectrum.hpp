#pragma once

// Segment-averaged (Welch) power spectrum and the split of the stationary
// covariance into its even part and the odd part tied to the response function.

#include <cstddef>
#include <string>
#include <vector>

#include "sedres/oscillator.hpp"
#include "sedres/units.hpp"

namespace sedres {

struct WelchOptions {
    std::size_t segment_length = 4096;
    double overlap = 0.5;
    bool remove_segment_mean = true;
};

// One-sided spectral density per unit angular frequency, normalized so that
// sum_k S_k d_omega equals the window-weighted mean square of the data.
struct SpectrumEstimate {
    std::vector<double> omega;
    std::vector<double> S;
    double d_omega = 0.0;
    std::size_t segment_length = 0;
    double overlap = 0.0;
    std::string window = "hann";
    std::size_t n_members = 0;
    std::size_t n_segments = 0;

    double integral() const;
};

// Hann-windowed periodograms averaged over all segments of all series.
SpectrumEstimate welch_psd(const std::vector<std::vector<double>>& series, double dt, const WelchOptions& options);

struct LineShape {
    std::size_t peak_index = 0;
    double peak_omega = 0.0;
    double peak_value = 0.0;
    // Full width at half maximum from linear interpolation of the half-power crossings.
    double fwhm = 0.0;
    // Midpoint of the two half-power crossings. Less sensitive to bin noise than
    // the maximum, since it uses the whole upper half of the line.
    double center_omega = 0.0;
};

LineShape line_shape(const SpectrumEstimate& s);

// Throws StationarityError if the ensemble mean of x or x^2 over the first
// quarter of the members differs from that over the last quarter by more than
// `sigmas` standard errors.
void check_stationarity(const std::vector<Trajectory>& members, double sigmas = 3.0);

struct SpectrumDecomposition {
    SpectrumEstimate spectrum;
    std::vector<double> lag;
    // int S cos(w s) dw and int S sin(w s) dw, corrected for the window's own correlation.
    std::vector<double> symmetric;
    std::vector<double> antisymmetric;
    // <x(t) x(t+s)> estimated directly from the series.
    std::vector<double> direct;
    // (hbar / 2m) (chi(s) - chi(-s)) for the reduced oscillator, unit-mass chi.
    std::vector<double> response_reference;
    // sqrt(sum (a - b)^2 / sum b^2) over the lags.
    double symmetric_rms_deviation = 0.0;
    double antisymmetric_rms_deviation = 0.0;
    double var_x = 0.0;
};

// Requires at least `min_members` members (default 100) and a stationary ensemble.
// Lags run from -max_lag to max_lag samples; max_lag must stay below a quarter segment.
SpectrumDecomposition spectrum_decompose(const std::vector<Trajectory>& members, const NaturalUnits& units,
                                         const WelchOptions& options, std::size_t max_lag,
                                         std::size_t min_members = 100);

} // namespace sedres
