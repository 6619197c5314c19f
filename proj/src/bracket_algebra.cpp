#include "sedres/bracket_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "sedres/errors.hpp"
#include "sedres/rng.hpp"

namespace sedres {

ResponseExpansion build_ho_expansion(int n, const NaturalUnits& units, double omega0) {
    units.validate();
    if (n < 0) throw std::invalid_argument("build_ho_expansion: state index must be non-negative");
    if (!(omega0 > 0.0)) throw std::invalid_argument("build_ho_expansion: omega0 must be positive");
    const double unit = units.hbar / (2.0 * units.m * omega0);
    const complex minus_i_m(0.0, -units.m);

    ResponseExpansion e;
    e.n = n;
    if (n > 0) {
        const double x = std::sqrt(n * unit);
        e.transitions.push_back({n - 1, -omega0, x, minus_i_m * (-omega0) * x});
    }
    const double x = std::sqrt((n + 1) * unit);
    e.transitions.push_back({n + 1, omega0, x, minus_i_m * omega0 * x});
    return e;
}

double sum_rule(const ResponseExpansion& e) {
    double s = 0.0;
    for (const auto& t : e.transitions) s += t.omega_kn * std::norm(t.x_nk);
    return s;
}

ResponseExpansion scaled(const ResponseExpansion& e, double lambda) {
    ResponseExpansion out = e;
    out.x_nn *= lambda;
    out.p_nn *= lambda;
    for (auto& t : out.transitions) {
        t.x_nk *= lambda;
        t.p_nk *= lambda;
    }
    return out;
}

complex poisson_bracket_aa(const ResponseExpansion& ex, const ResponseExpansion& ep) {
    if (ex.n != ep.n) return 0.0;
    if (ex.transitions.size() != ep.transitions.size())
        throw std::invalid_argument("poisson_bracket_aa: expansions have different transition sets");
    complex s = 0.0;
    for (std::size_t i = 0; i < ex.transitions.size(); ++i) {
        const auto& a = ex.transitions[i];
        const auto& b = ep.transitions[i];
        if (a.k != b.k || a.omega_kn != b.omega_kn)
            throw std::invalid_argument("poisson_bracket_aa: expansions have different transition sets");
        s += a.x_nk * std::conj(b.p_nk) - b.p_nk * std::conj(a.x_nk);
    }
    return s;
}

ResponseMatrix build_ho_matrices(int n_max, const NaturalUnits& units, double omega0) {
    if (n_max < 1) throw std::invalid_argument("build_ho_matrices: n_max must be at least 1");
    const int dim = n_max + 1;
    ResponseMatrix m;
    m.n_max = n_max;
    m.X = Eigen::MatrixXcd::Zero(dim, dim);
    m.P = Eigen::MatrixXcd::Zero(dim, dim);
    m.omega = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= n_max; ++n) {
        const ResponseExpansion e = build_ho_expansion(n, units, omega0);
        m.X(n, n) = e.x_nn;
        m.P(n, n) = e.p_nn;
        for (const auto& t : e.transitions) {
            if (t.k > n_max) continue;
            m.X(n, t.k) = t.x_nk;
            m.P(n, t.k) = t.p_nk;
            m.omega(n, t.k) = t.omega_kn;
        }
    }
    return m;
}

namespace {

void check_shapes(const ResponseMatrix& m) {
    if (m.X.rows() != m.X.cols() || m.P.rows() != m.P.cols() || m.X.rows() != m.P.rows())
        throw std::invalid_argument("response matrices must be square and of equal dimension");
}

} // namespace

Eigen::MatrixXcd commutator_matrix(const ResponseMatrix& m) {
    check_shapes(m);
    return m.X * m.P - m.P * m.X;
}

Eigen::MatrixXcd anticommutator_matrix(const ResponseMatrix& m) {
    check_shapes(m);
    return m.X * m.P + m.P * m.X;
}

OrderedCovariances ordered_covariances(const ResponseExpansion& e) {
    OrderedCovariances c;
    for (const auto& t : e.transitions) {
        c.c_xp += t.x_nk * std::conj(t.p_nk);
        c.c_px += t.p_nk * std::conj(t.x_nk);
    }
    return c;
}

OrderedCovariances ordered_covariances_at(const ResponseExpansion& e, double t) {
    OrderedCovariances c;
    for (const auto& tr : e.transitions) {
        const complex phase = std::polar(1.0, -tr.omega_kn * t);
        const complex x = tr.x_nk * phase, p = tr.p_nk * phase;
        c.c_xp += x * std::conj(p);
        c.c_px += p * std::conj(x);
    }
    return c;
}

std::vector<CheckEntry> correspondence_check(const ResponseExpansion& e, const ResponseMatrix& m, double tolerance) {
    check_shapes(m);
    if (e.n < 0 || e.n > m.n_max) throw std::invalid_argument("correspondence_check: state outside the matrices");
    const Eigen::MatrixXcd comm = commutator_matrix(m);
    const Eigen::MatrixXcd anti = anticommutator_matrix(m);
    const Eigen::MatrixXcd xp = m.X * m.P;
    const Eigen::MatrixXcd px = m.P * m.X;
    const int n = e.n;
    const auto cov = ordered_covariances(e);
    const std::string tag = "[n=" + std::to_string(n) + "]";

    std::vector<CheckEntry> out;
    out.push_back(make_check("bracket_vs_commutator" + tag, poisson_bracket_aa(e, e), comm(n, n), tolerance,
                             ToleranceMode::absolute, "{x(t),p(t)}_n = [x,p]_nn"));
    out.push_back(make_check("ordered_xp_vs_matrix" + tag, cov.c_xp, xp(n, n), tolerance, ToleranceMode::absolute,
                             "C_n(xp) = (x p)_nn"));
    out.push_back(make_check("ordered_px_vs_matrix" + tag, cov.c_px, px(n, n), tolerance, ToleranceMode::absolute,
                             "C_n(px) = (p x)_nn"));
    out.push_back(make_check("symmetrized_vs_anticommutator" + tag, cov.c_xp + cov.c_px,
                             anti(n, n) - 2.0 * m.X(n, n) * m.P(n, n), tolerance, ToleranceMode::absolute,
                             "C_n(xp) + C_n(px) = (xp + px)_nn - 2 x_nn p_nn"));
    return out;
}

namespace {

// Per mode: x = Re(c_x a^*), p = Re(c_p a^*) with c_x = sqrt(2) E_a K_a e^{i w t}, c_p = i m w c_x.
struct ModeCoefficients {
    std::vector<complex> cx;
    std::vector<complex> cp;
};

ModeCoefficients mode_coefficients(const OscillatorParams& params, const FieldRealization& field, double t) {
    ModeCoefficients c;
    c.cx.resize(field.size());
    c.cp.resize(field.size());
    for (std::size_t a = 0; a < field.size(); ++a) {
        const double w = field.frequencies[a];
        const complex k = params.e / params.m * std::conj(reduced_susceptibility(w, params));
        c.cx[a] = std::sqrt(2.0) * field.amplitudes[a] * k * std::polar(1.0, w * t);
        c.cp[a] = complex(0.0, params.m * w) * c.cx[a];
    }
    return c;
}

} // namespace

ResponseMap spectral_response_map(const OscillatorParams& params, const FieldRealization& field, double t) {
    params.validate();
    field.validate();
    if (field.size() == 0) throw CoverageError("spectral_response_map: no field modes");
    const auto [lo, hi] = std::minmax_element(field.frequencies.begin(), field.frequencies.end());
    if (params.omega0 < *lo || params.omega0 > *hi) {
        std::ostringstream msg;
        msg << "spectral_response_map: resonance " << params.omega0 << " lies outside the mode band [" << *lo << ", "
            << *hi << "]";
        throw CoverageError(msg.str());
    }
    auto coeff = std::make_shared<ModeCoefficients>(mode_coefficients(params, field, t));
    return [coeff](const std::vector<complex>& a) {
        if (a.size() != coeff->cx.size()) throw std::invalid_argument("response map: wrong number of amplitudes");
        PhaseSpacePoint r;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const complex ac = std::conj(a[i]);
            r.x += (coeff->cx[i] * ac).real();
            r.p += (coeff->cp[i] * ac).real();
        }
        return r;
    };
}

std::vector<complex> normal_amplitudes(const FieldRealization& field) {
    std::vector<complex> a(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) a[i] = normal_amplitude(field, i);
    return a;
}

complex analytic_mode_bracket(const OscillatorParams& params, const FieldRealization& field) {
    double s = 0.0;
    for (std::size_t a = 0; a < field.size(); ++a) {
        const double w = field.frequencies[a];
        const double k2 = std::norm(params.e / params.m * reduced_susceptibility(w, params));
        s += w * field.amplitudes[a] * field.amplitudes[a] * k2;
    }
    return {0.0, params.m * s};
}

NumericBracket poisson_bracket_numeric(const std::vector<complex>& a, const ResponseMap& map, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("poisson_bracket_numeric: step must be positive");
    const std::size_t n = a.size();

    // Superposition test on two random amplitude sets.
    NumericBracket out;
    {
        Rng rng(0x5eed);
        std::vector<complex> u(n), v(n), uv(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = {rng.normal(), rng.normal()};
            v[i] = {rng.normal(), rng.normal()};
            uv[i] = 2.0 * u[i] - 3.0 * v[i];
        }
        const auto fu = map(u), fv = map(v), fuv = map(uv), f0 = map(std::vector<complex>(n));
        const double scale =
            std::max({std::abs(fu.x), std::abs(fv.x), std::abs(fu.p), std::abs(fv.p), 1e-300});
        const double rx = std::abs(fuv.x - 2.0 * fu.x + 3.0 * fv.x) + std::abs(f0.x);
        const double rp = std::abs(fuv.p - 2.0 * fu.p + 3.0 * fv.p) + std::abs(f0.p);
        out.superposition_residual = std::max(rx, rp) / (5.0 * scale);
        if (out.superposition_residual > 1e-6) {
            std::ostringstream msg;
            msg << "poisson_bracket_numeric: response map is not linear (superposition residual "
                << out.superposition_residual << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    // Wirtinger derivatives: d/da = (d/du - i d/dv)/2, d/da* = (d/du + i d/dv)/2,
    // so the bracket per mode is (i/2)(x_u p_v - x_v p_u).
    std::vector<complex> probe = a;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const complex saved = probe[i];
        probe[i] = saved + h;
        const auto up = map(probe);
        probe[i] = saved - h;
        const auto um = map(probe);
        probe[i] = saved + complex(0.0, h);
        const auto vp = map(probe);
        probe[i] = saved - complex(0.0, h);
        const auto vm = map(probe);
        probe[i] = saved;
        const double xu = (up.x - um.x) / (2 * h), pu = (up.p - um.p) / (2 * h);
        const double xv = (vp.x - vm.x) / (2 * h), pv = (vp.p - vm.p) / (2 * h);
        total += xu * pv - xv * pu;
    }
    out.value = {0.0, 0.5 * total};
    return out;
}

} // namespace sedres
