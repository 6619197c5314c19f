#pragma once

// Minimal FFTW front end. Plans use FFTW_ESTIMATE so the algorithm (and the
// rounding) does not depend on timing measurements; planning is serialized.

#include <complex>
#include <vector>

namespace sedres::fft {

// X_k = sum_j x_j exp(-2 pi i j k / n).
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& x);

// X_k for k = 0 .. n/2 of a real series.
std::vector<std::complex<double>> forward_real(const std::vector<double>& x);

// x_j = sum_k X_k exp(+2 pi i j k / n), no 1/n factor.
std::vector<std::complex<double>> backward(const std::vector<std::complex<double>>& x);

} // namespace sedres::fft
