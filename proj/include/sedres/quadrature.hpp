#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace sedres::quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Throws NumericalError
// when the error target is not reached within max_intervals.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

// Same, with the initial partition split at the given interior points
// (sharp peaks, kinks). Points outside (a, b) are ignored.
Result integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 const Options& opts = {});

// Integral over [a, inf) via the map x = a + s/(1-s). Breakpoints are given in x.
Result integrate_to_infinity(const Integrand& f, double a, std::span<const double> breakpoints,
                             const Options& opts = {});

} // namespace sedres::quad
