#pragma once

#include <numbers>
#include <stdexcept>

namespace sedres {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Scales for action, mass and speed. Natural units set all three to one.
struct NaturalUnits {
    double hbar = 1.0;
    double m = 1.0;
    double c = 1.0;

    void validate() const {
        if (!(hbar > 0.0)) throw std::invalid_argument("units.hbar must be positive");
        if (!(m > 0.0)) throw std::invalid_argument("units.m must be positive");
        if (!(c > 0.0)) throw std::invalid_argument("units.c must be positive");
    }

    friend bool operator==(const NaturalUnits&, const NaturalUnits&) = default;
};

} // namespace sedres
