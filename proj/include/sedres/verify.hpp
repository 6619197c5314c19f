#pragma once

// The verification suite: every named check, its default tolerance, and the
// runner that evaluates all of them for a configuration.

#include <map>
#include <string>
#include <vector>

#include "sedres/report.hpp"

namespace sedres {

struct RunConfig;

struct VerifyCheck {
    std::string name;
    // Acceptance criterion (1-12) the check belongs to.
    int criterion = 0;
    double tolerance = 0.0;
    ToleranceMode mode = ToleranceMode::absolute;
};

const std::vector<VerifyCheck>& verify_registry();
const std::map<std::string, double>& default_tolerances();
const VerifyCheck* find_check(const std::string& name);

// Tolerance in effect: the override if one is configured, otherwise the
// default multiplied by analysis.tolerance_scale.
double effective_tolerance(const RunConfig& config, const VerifyCheck& check);

// Runs every check in registry order. Uses the configured units, oscillator,
// default band, ensemble size, seed, spectral sampling grid and n_max; the
// remaining experiment sizes are fixed multiples of 1/omega0 and 1/gamma.
CheckReport run_verify(const RunConfig& config);

} // namespace sedres
