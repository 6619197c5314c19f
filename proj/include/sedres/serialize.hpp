#pragma once

// Text renderings of the data products. CSV uses ',' and LF; numbers are the
// shortest decimal that reads back to the same double.

#include <filesystem>
#include <string>

#include "sedres/bracket_algebra.hpp"
#include "sedres/ensemble.hpp"
#include "sedres/linear_response.hpp"
#include "sedres/spectrum.hpp"
#include "sedres/zpf_field.hpp"

namespace sedres {

// Header `t,x,p,E`, E being the energy of the oscillator.
std::string trajectory_csv(const Trajectory& trajectory);

std::string stats_json(const EnsembleStats& stats);

// {seed, omega[], amplitude[], phase[]}
std::string realization_json(const FieldRealization& field);

// {n_max, X, P, omega}; complex entries as [re, im] pairs, rows in order.
std::string response_matrix_json(const ResponseMatrix& m);

// Header `omega,re,im`.
std::string susceptibility_csv(const Susceptibility& s);

// Header `omega,S`.
std::string spectrum_csv(const SpectrumEstimate& s);

// Header `t,chi`.
std::string response_function_csv(const ResponseFunction& r);

// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace sedres
