#pragma once

// Subcommand drivers. Each writes its products into config.output_dir from the
// calling thread only, after all parallel work has finished.

#include <string>

#include "sedres/config.hpp"
#include "sedres/ensemble.hpp"
#include "sedres/report.hpp"

namespace sedres {

// traj_<idx>.csv per member, stats.json, and realization_0.json for the first
// member's field (the others follow from the seed).
EnsembleStats run_simulate(const RunConfig& config);

// susceptibility.csv, response_function.csv, kramers_kronig.csv, respond.json.
// Returns a short human-readable summary.
std::string run_respond(const RunConfig& config);

// response_matrix.json and brackets.json. Returns the bracket checks.
CheckReport run_brackets(const RunConfig& config);

// scales.json. Returns the summary table.
std::string run_scales(const RunConfig& config);

// report.json and report.txt. Returns the report.
CheckReport run_verify_to_disk(const RunConfig& config);

} // namespace sedres
