#pragma once

// Ensemble runs over field realizations and the estimators built on them:
// moments, power balance, diffusion products and the mean-evolution check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sedres/oscillator.hpp"
#include "sedres/zpf_field.hpp"

namespace sedres {

struct EnsembleStats {
    std::size_t n_members = 0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double mean_energy = 0.0;
    double uncertainty_product = 0.0;
    double se_mean_x = 0.0;
    double se_mean_p = 0.0;
    double se_var_x = 0.0;
    double se_var_p = 0.0;
    double se_mean_energy = 0.0;
    double se_uncertainty_product = 0.0;
};

// Time averages within each member, then the ensemble average; standard
// errors by leave-one-member-out jackknife. Throws on an empty list or on
// members with different grids or parameters.
EnsembleStats ensemble_statistics(const std::vector<Trajectory>& members);

struct VarianceEstimates {
    double phase_average = 0.0;
    double se_phase_average = 0.0;
    double time_average = 0.0;
    double se_time_average = 0.0;
};

// var_x across members at `n_probes` fixed times (then averaged over those
// times), and var_x from time averages within members.
VarianceEstimates variance_x_estimators(const std::vector<Trajectory>& members, std::size_t n_probes = 16);

struct PowerBalance {
    double absorbed = 0.0;
    double radiated = 0.0;
    double ratio = 0.0;
    bool ratio_defined = false;
};

// absorbed = e <x' E>, radiated = m tau <x''^2>, with x'' from the equation of motion.
// Requires at least 100 periods of data.
PowerBalance power_balance(const Trajectory& trajectory);

struct EnsemblePowerBalance {
    double absorbed = 0.0;
    double se_absorbed = 0.0;
    double radiated = 0.0;
    double se_radiated = 0.0;
    double ratio = 0.0;
    double se_ratio = 0.0;
    bool ratio_defined = false;
};

EnsemblePowerBalance power_balance(const std::vector<Trajectory>& members);

struct DiffusionEstimates {
    double d_px = 0.0;
    double se_d_px = 0.0;
    double d_pp = 0.0;
    double se_d_pp = 0.0;
};

// D_px = e <x E>, D_pp = e <p E> over the ensemble.
DiffusionEstimates diffusion_estimators(const std::vector<Trajectory>& members);

enum class Observable { energy, x_squared, p_squared };

struct MeanEvolution {
    // d<G>/dt from the end points of each member.
    double lhs = 0.0;
    // Non-radiative, radiative and field contributions, averaged along the members.
    double non_radiative = 0.0;
    double radiative = 0.0;
    double field = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double se_residual = 0.0;
    double se_lhs = 0.0;
};

MeanEvolution mean_evolution_check(const std::vector<Trajectory>& members, Observable g);

enum class SimulationPath { time_domain, spectral };

struct EnsembleRun {
    OscillatorParams params;
    FieldBand band;
    NaturalUnits units;
    std::uint64_t master_seed = 1;
    std::size_t n_members = 1;
    SimulationPath path = SimulationPath::spectral;
    // Used by the time-domain path.
    IntegrationOptions integration;
    // Used by the spectral path.
    TimeGrid grid;
};

// Member i is driven by sample_realization(band, units, member_seed(master_seed, i)).
// Integration failures are rethrown with the member index in the message.
std::vector<Trajectory> run_ensemble(const EnsembleRun& run);

} // namespace sedres
