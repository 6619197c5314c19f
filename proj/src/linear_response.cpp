#include "sedres/linear_response.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sedres/errors.hpp"
#include "sedres/fft.hpp"
#include "sedres/quadrature.hpp"

namespace sedres {

std::complex<double> susceptibility_at(double omega, double omega_kn, double tau, DampingConvention convention) {
    const double damping = convention == DampingConvention::cubic ? tau * omega * omega * omega
                                                                  : tau * omega_kn * omega_kn * omega;
    return 1.0 / std::complex<double>(omega_kn * omega_kn - omega * omega, -damping);
}

Susceptibility tabulate_susceptibility(double omega_kn, double tau, std::vector<double> omega,
                                       DampingConvention convention) {
    Susceptibility s;
    s.omega_kn = omega_kn;
    s.tau = tau;
    s.convention = convention;
    s.values.reserve(omega.size());
    for (double w : omega) s.values.push_back(susceptibility_at(w, omega_kn, tau, convention));
    s.omega = std::move(omega);
    return s;
}

Susceptibility resonance_grid(double omega_kn, double tau, double half_width_linewidths, std::size_t n_points,
                              DampingConvention convention) {
    if (n_points < 2) throw std::invalid_argument("resonance_grid: need at least 2 points");
    const double lw = tau * omega_kn * omega_kn;
    const double lo = omega_kn - half_width_linewidths * lw;
    const double hi = omega_kn + half_width_linewidths * lw;
    std::vector<double> omega(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        omega[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return tabulate_susceptibility(omega_kn, tau, std::move(omega), convention);
}

ResponseFunction response_function(const std::vector<double>& omega_kn, double tau, double dt, std::size_t n,
                                   DampingConvention convention) {
    if (omega_kn.empty()) throw std::invalid_argument("response_function: no resonances given");
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("response_function: n must be even and >= 4");
    if (!(dt > 0.0)) throw std::invalid_argument("response_function: dt must be positive");
    double w_max = 0.0;
    for (double w : omega_kn) {
        if (w == 0.0) throw std::invalid_argument("response_function: zero resonance frequency");
        w_max = std::max(w_max, std::abs(w));
    }
    if (!(tau > 0.0)) throw std::invalid_argument("response_function: tau must be positive");
    double gamma_min = tau * w_max * w_max;
    for (double w : omega_kn) gamma_min = std::min(gamma_min, tau * w * w);
    if (0.5 * static_cast<double>(n) * dt < 5.0 / gamma_min)
        throw std::invalid_argument("response_function: time grid shorter than 5 damping times each side");
    if (pi / dt < 10.0 * w_max) {
        std::ostringstream msg;
        msg << "response_function: Nyquist frequency " << pi / dt << " is below 10 x max |omega_kn| = "
            << 10.0 * w_max;
        throw std::invalid_argument(msg.str());
    }

    // Each term behaves as -1/w^2 at large |w|; -1/(w^2 + b^2) with b = |w_kn|
    // has the same tail and the transform -exp(-b|t|)/(2b), so only the smooth
    // remainder goes through the FFT.
    const double d_omega = two_pi / (static_cast<double>(n) * dt);
    std::vector<std::complex<double>> spectrum(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long q = k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        const double w = static_cast<double>(q) * d_omega;
        std::complex<double> v = 0.0;
        for (double wk : omega_kn) v += susceptibility_at(w, wk, tau, convention) + 1.0 / (w * w + wk * wk);
        // The unpaired Nyquist bin keeps only its even (real) part.
        if (static_cast<std::size_t>(std::abs(q)) == n / 2) v = v.real();
        // Shift so output index j sits at t = (j - n/2) dt.
        spectrum[k] = (q % 2 == 0 ? 1.0 : -1.0) * v;
    }
    const auto raw = fft::forward(spectrum);

    ResponseFunction out;
    out.dt = dt;
    out.t.resize(n);
    out.chi.resize(n);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = (static_cast<double>(j) - static_cast<double>(n / 2)) * dt;
        double tail = 0.0;
        for (double wk : omega_kn) {
            const double b = std::abs(wk);
            tail -= std::exp(-b * std::abs(t)) / (2.0 * b);
        }
        const std::complex<double> v = raw[j] / (static_cast<double>(n) * dt);
        out.t[j] = t;
        out.chi[j] = v.real() + tail;
        max_re = std::max(max_re, std::abs(out.chi[j]));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    out.imaginary_fraction = max_re > 0.0 ? max_im / max_re : 0.0;
    return out;
}

namespace {

// PV int_a^b f(w') / (w' - w) dw' for f linear between f_a and f_b, w outside [a, b].
double linear_over_pole(double a, double b, double fa, double fb, double w) {
    const double slope = (fb - fa) / (b - a);
    const double f_at_pole = fa + slope * (w - a);
    return f_at_pole * std::log(std::abs((b - w) / (a - w))) + slope * (b - a);
}

} // namespace

KramersKronig kramers_kronig_reconstruct(const Susceptibility& s) {
    const auto& w = s.omega;
    const std::size_t n = w.size();
    if (n < 3 || s.values.size() != n) throw std::invalid_argument("kramers_kronig: malformed susceptibility grid");
    if (!(w.front() > 0.0)) throw std::invalid_argument("kramers_kronig: grid must lie on positive frequencies");
    for (std::size_t i = 1; i < n; ++i)
        if (!(w[i] > w[i - 1])) throw std::invalid_argument("kramers_kronig: grid must be increasing");

    const double lw = s.tau * s.omega_kn * s.omega_kn;
    const double need_lo = s.omega_kn - 50.0 * lw, need_hi = s.omega_kn + 50.0 * lw;
    const double slack = 1e-9 * (need_hi - need_lo);
    if (w.front() > need_lo + slack || w.back() < need_hi - slack) {
        std::ostringstream msg;
        msg << "kramers_kronig: grid [" << w.front() << ", " << w.back() << "] does not cover omega_kn +- 50 "
            << "linewidths [" << need_lo << ", " << need_hi << "]";
        throw CoverageError(msg.str());
    }

    std::vector<double> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = s.values[i].imag();

    KramersKronig out;
    out.omega = w;
    out.reconstructed_real.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double wj = w[j];
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (i == j || i + 1 == j) continue;  // intervals touching the pole, handled below
            sum += linear_over_pole(w[i], w[i + 1], im[i], im[i + 1], wj);
        }
        // Intervals with an endpoint at the pole: the logarithms of the two
        // neighbours combine to f(w_j) ln(h_right / h_left) in the principal value.
        const bool has_left = j > 0, has_right = j + 1 < n;
        if (has_left) sum += (im[j] - im[j - 1]);  // slope * h
        if (has_right) sum += (im[j + 1] - im[j]);
        if (has_left && has_right) {
            sum += im[j] * std::log((w[j + 1] - wj) / (wj - w[j - 1]));
        } else if (has_right) {
            // Grid edge: the integral diverges; keep the finite part (edges are not scored).
            sum += im[j] * std::log(w[j + 1] - wj);
        } else if (has_left) {
            sum -= im[j] * std::log(wj - w[j - 1]);
        }
        // Mirror term 1/(w' + w): regular for w > 0.
        for (std::size_t i = 0; i + 1 < n; ++i) sum += linear_over_pole(w[i], w[i + 1], im[i], im[i + 1], -wj);
        out.reconstructed_real[j] = sum / pi;
    }

    const std::size_t skip = n / 10;
    double max_exact = 0.0, max_dev = 0.0;
    for (std::size_t j = skip; j < n - skip; ++j) {
        max_exact = std::max(max_exact, std::abs(s.values[j].real()));
        max_dev = std::max(max_dev, std::abs(out.reconstructed_real[j] - s.values[j].real()));
    }
    out.max_relative_error = max_exact > 0.0 ? max_dev / max_exact : max_dev;
    return out;
}

ResonanceCovariance resonance_covariance(double omega_kn, double tau, const NaturalUnits& units) {
    units.validate();
    const double wk = std::abs(omega_kn);
    if (!(wk > 0.0)) throw std::invalid_argument("resonance_covariance: omega_kn must be nonzero");
    if (!(tau > 0.0) || tau * wk > 1e-2)
        throw std::invalid_argument("resonance_covariance: need 0 < tau |omega_kn| <= 1e-2");

    auto f = [&](double w) {
        const double d = wk * wk - w * w;
        return w * w * w / (d * d + tau * tau * w * w * w * w * w * w);
    };
    const double lw = tau * wk * wk;
    std::vector<double> cuts;
    for (double k : {-100.0, -10.0, -1.0, 0.0, 1.0, 10.0, 100.0})
        if (wk + k * lw > 0.0) cuts.push_back(wk + k * lw);
    for (double x : {2.0 * wk, 1.0 / tau, 10.0 / tau}) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());

    quad::Options opts;
    opts.rel_tol = 1e-10;
    opts.max_intervals = 10000;
    const auto r = quad::integrate_to_infinity(f, 0.0, cuts, opts);

    const double pref = units.hbar * tau / (pi * units.m);
    ResonanceCovariance out;
    out.numeric = pref * r.value;
    out.abs_error = pref * r.abs_error;
    out.delta_limit = units.hbar / (2.0 * units.m * wk);
    out.ratio = out.numeric / out.delta_limit;
    out.quoted = units.hbar / (units.m * wk);
    return out;
}

} // namespace sedres
