#pragma once

// Response expansions x_n(t) = sum_k x_nk a_nk e^{-i w_kn t} + c.c. of stationary
// states, the Poisson bracket over the field normal amplitudes, the response
// matrices built from the coefficients, and the ordered covariances.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sedres/oscillator.hpp"
#include "sedres/report.hpp"
#include "sedres/units.hpp"
#include "sedres/zpf_field.hpp"

namespace sedres {

using complex = std::complex<double>;

struct Transition {
    int k = 0;
    double omega_kn = 0.0;
    complex x_nk;
    complex p_nk;
};

struct ResponseExpansion {
    int n = 0;
    complex x_nn;
    complex p_nn;
    std::vector<Transition> transitions;
};

// Harmonic oscillator: transitions to n +- 1 only, w_{n+-1,n} = +-w0,
// |x_{n,n+1}|^2 = (n+1) hbar / 2 m w0, |x_{n,n-1}|^2 = n hbar / 2 m w0, real
// non-negative x_nk, p_nk = -i m w_kn x_nk.
ResponseExpansion build_ho_expansion(int n, const NaturalUnits& units, double omega0);

// sum_k w_kn |x_nk|^2.
double sum_rule(const ResponseExpansion& e);

// Every coefficient multiplied by lambda.
ResponseExpansion scaled(const ResponseExpansion& e, double lambda);

// {x, p} with respect to the normal amplitudes: sum_k (x_nk p_nk^* - p_nk x_nk^*)
// (= 2 i m sum_k w_kn |x_nk|^2) for equal states, 0 for different states (the
// phases of different states are independent). x is taken from `ex` and p from
// `ep`; throws std::invalid_argument if their transition sets differ.
complex poisson_bracket_aa(const ResponseExpansion& ex, const ResponseExpansion& ep);

struct ResponseMatrix {
    int n_max = 0;
    Eigen::MatrixXcd X;
    Eigen::MatrixXcd P;
    Eigen::MatrixXd omega;
};

// X_nk = x_nk, P_nk = p_nk for states 0..n_max; transitions leaving the range are dropped.
ResponseMatrix build_ho_matrices(int n_max, const NaturalUnits& units, double omega0);

// X P - P X. Throws std::invalid_argument on dimension mismatch.
Eigen::MatrixXcd commutator_matrix(const ResponseMatrix& m);
Eigen::MatrixXcd anticommutator_matrix(const ResponseMatrix& m);

struct OrderedCovariances {
    complex c_xp;
    complex c_px;
};

// C_xp = sum_k x_nk p_nk^*, C_px = sum_k p_nk x_nk^*.
OrderedCovariances ordered_covariances(const ResponseExpansion& e);

// Same from the time-dependent terms x_nk e^{-i w_kn t}; the phases cancel.
OrderedCovariances ordered_covariances_at(const ResponseExpansion& e, double t);

// Entries: bracket vs commutator diagonal, C_xp vs (XP)_nn, C_px vs (PX)_nn,
// symmetrized covariance vs anticommutator diagonal minus 2 x_nn p_nn.
std::vector<CheckEntry> correspondence_check(const ResponseExpansion& e, const ResponseMatrix& m,
                                             double tolerance = 1e-10);

struct PhaseSpacePoint {
    double x = 0.0;
    double p = 0.0;
};

// (x, p) at a fixed time as a function of the normal amplitudes.
using ResponseMap = std::function<PhaseSpacePoint(const std::vector<complex>& a)>;

// Stationary response of the oscillator to the modes of `field` at time t with
// amplitudes a_alpha in place of the realization's e^{-i phi}/sqrt(2). Throws
// CoverageError if w0 lies outside the band of modes.
ResponseMap spectral_response_map(const OscillatorParams& params, const FieldRealization& field, double t);

// Normal amplitudes of the realization (see normal_amplitude).
std::vector<complex> normal_amplitudes(const FieldRealization& field);

// Closed-form bracket of the mode superposition: i m sum_a w_a E_a^2 |K_a|^2,
// K_a = (e/m) chi(w_a).
complex analytic_mode_bracket(const OscillatorParams& params, const FieldRealization& field);

struct NumericBracket {
    complex value;
    double superposition_residual = 0.0;
};

// {x, p} = sum_a (dx/da dp/da* - dx/da* dp/da) from central differences in
// (Re a, Im a) with step h. Throws std::invalid_argument if the map fails the
// superposition test (relative residual above 1e-6).
NumericBracket poisson_bracket_numeric(const std::vector<complex>& a, const ResponseMap& map, double h = 1e-3);

} // namespace sedres
