#pragma once

// Flat `key = value` run configuration. Lines starting with `#` (or the part of
// a line after `#`) are comments. Every key is optional; unknown keys are errors.
//
//   units.hbar, units.m, units.c                natural units by default
//   oscillator.mass                             defaults to units.m
//   oscillator.omega0, oscillator.tau           1, 1e-3
//   oscillator.charge                           defaults to the value fixed by tau
//   band.omega_min, band.omega_max, band.n_modes,
//   band.spacing (uniform | uniform_in_cube), band.jitter
//                                               defaults: +-200 linewidths, 4 modes per linewidth
//   ensemble.n_members, ensemble.master_seed    200, 1
//   integration.dt, integration.t_end, integration.transient, integration.record_stride
//   simulate.path (spectral | time_domain)
//   analysis.n_max                              20
//   analysis.tolerance_scale                    multiplies every verify tolerance
//   analysis.allow_tighten                      permits overrides below the defaults
//   analysis.tolerance.<check name>             per-check tolerance override
//   output.dir

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "sedres/ensemble.hpp"
#include "sedres/oscillator.hpp"
#include "sedres/units.hpp"
#include "sedres/zpf_field.hpp"

namespace sedres {

struct EnsembleSettings {
    std::size_t n_members = 200;
    std::uint64_t master_seed = 1;

    friend bool operator==(const EnsembleSettings&, const EnsembleSettings&) = default;
};

struct IntegrationSettings {
    // Time-domain step. The spectral path samples every dt * record_stride.
    double dt = 0.25;
    double t_end = 40000.0;
    double transient = 8000.0;
    std::size_t record_stride = 32;

    double sample_interval() const { return dt * static_cast<double>(record_stride); }

    friend bool operator==(const IntegrationSettings&, const IntegrationSettings&) = default;
};

struct AnalysisSettings {
    int n_max = 20;
    double tolerance_scale = 1.0;
    bool allow_tighten = false;
    std::map<std::string, double> tolerance;

    friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

struct RunConfig {
    NaturalUnits units;
    OscillatorParams oscillator = make_oscillator(NaturalUnits{}, 1.0, 1e-3);
    FieldBand band = resonant_band(1.0, 1e-3);
    EnsembleSettings ensemble;
    IntegrationSettings integration;
    SimulationPath simulate_path = SimulationPath::spectral;
    AnalysisSettings analysis;
    std::string output_dir = "sedres_out";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError naming the offending key and line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Every key written explicitly, so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// Spectral-path time grid: samples from the transient to t_end.
TimeGrid sample_grid(const RunConfig& config);

EnsembleRun ensemble_run(const RunConfig& config);

const char* to_string(SimulationPath path);
const char* to_string(GridSpacing spacing);

} // namespace sedres
