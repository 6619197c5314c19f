#include "sedres/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sedres/bracket_algebra.hpp"
#include "sedres/config.hpp"
#include "sedres/ensemble.hpp"
#include "sedres/linear_response.hpp"
#include "sedres/markov_scales.hpp"
#include "sedres/rng.hpp"
#include "sedres/serialize.hpp"
#include "sedres/spectrum.hpp"

namespace sedres {

namespace {

using M = ToleranceMode;

// Stream tags for the independent ensembles of the suite.
enum Stream : std::uint64_t {
    time_domain_stream = 0x100,
    bracket_stream,
    spectrum_stream,
    oracle_stream,
    determinism_stream,
};

std::uint64_t stream_seed(std::uint64_t master, Stream s) { return member_seed(master, s); }

class Suite {
public:
    explicit Suite(const RunConfig& config) : c_(config) {}

    void add(const std::string& name, double value, double reference, std::string provenance, std::string note = {}) {
        add_entry(name, value, reference, false, std::move(provenance), std::move(note));
    }

    void add_complex(const std::string& name, std::complex<double> value, std::complex<double> reference,
                     std::string provenance, std::string note = {}) {
        add_entry(name, value, reference, true, std::move(provenance), std::move(note));
    }

    CheckReport take() { return std::move(report_); }

private:
    void add_entry(const std::string& name, std::complex<double> value, std::complex<double> reference,
                   bool is_complex, std::string provenance, std::string note) {
        const VerifyCheck* check = find_check(name);
        if (!check) throw std::logic_error("verify: unregistered check " + name);
        const double tol = effective_tolerance(c_, *check);
        auto entry = is_complex ? make_check(name, value, reference, tol, check->mode, std::move(provenance), std::move(note))
                                : make_check(name, value.real(), reference.real(), tol, check->mode,
                                             std::move(provenance), std::move(note));
        report_.entries.push_back(std::move(entry));
    }

    const RunConfig& c_;
    CheckReport report_;
};

std::string se_note(double se, std::size_t members) {
    return "jackknife standard error " + format_double(se) + " over " + std::to_string(members) + " members";
}

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

void stationary_ensemble_checks(const RunConfig& c, Suite& s) {
    const auto run = [&] {
        auto r = ensemble_run(c);
        r.path = SimulationPath::spectral;
        return r;
    }();
    const auto members = run_ensemble(run);
    const auto stats = ensemble_statistics(members);
    const double hbar = c.units.hbar;
    const double w0 = c.oscillator.omega0;

    s.add("stationary_energy_spectral", stats.mean_energy, 0.5 * hbar * w0,
          "driven oscillator stays in a stationary state of energy hbar w0 / 2",
          se_note(stats.se_mean_energy, stats.n_members));

    const auto pb = power_balance(members);
    s.add("power_balance_ratio", pb.ratio, 1.0,
          "power absorbed from the field equals power radiated (fluctuation-dissipation balance)",
          "absorbed " + format_double(pb.absorbed) + ", radiated " + format_double(pb.radiated) + ", se " +
              format_double(pb.se_ratio));
    const auto diff = diffusion_estimators(members);
    s.add("diffusion_pp_vs_radiated", diff.d_pp / c.oscillator.m / pb.radiated, 1.0,
          "momentum diffusion coefficient e<pE> / m balances the radiated power m tau <x''^2>",
          "D_pp " + format_double(diff.d_pp) + " +- " + format_double(diff.se_d_pp));

    s.add("uncertainty_product", stats.uncertainty_product, 0.5 * hbar,
          "ground-state spread dx dp = hbar / 2", se_note(stats.se_uncertainty_product, stats.n_members));
    s.add("uncertainty_product_order_estimate", stats.var_x * stats.var_p, hbar * hbar,
          "order estimate <dx^2><dp^2> ~ hbar^2",
          "reported for comparison: the stationary ensemble gives hbar^2 / 4");
}

void time_domain_energy_check(const RunConfig& c, Suite& s) {
    EnsembleRun run;
    run.params = c.oscillator;
    run.units = c.units;
    const double w0 = c.oscillator.omega0;
    const double gamma = c.oscillator.damping();
    run.band = resonant_band(w0, c.oscillator.tau, 50.0, 4.0);
    run.master_seed = stream_seed(c.ensemble.master_seed, time_domain_stream);
    run.n_members = c.ensemble.n_members;
    run.path = SimulationPath::time_domain;
    run.integration.dt = 0.25 / w0;
    run.integration.transient = 8.0 / gamma;
    run.integration.t_end = run.integration.transient + 20.0 / gamma;
    run.integration.record_stride = 4;
    const auto stats = ensemble_statistics(run_ensemble(run));
    s.add("stationary_energy_time_domain", stats.mean_energy, 0.5 * c.units.hbar * w0,
          "driven oscillator stays in a stationary state of energy hbar w0 / 2",
          se_note(stats.se_mean_energy, stats.n_members) + "; band +-50 linewidths, RK4 dt 0.25/w0");
}

void bracket_checks(const RunConfig& c, Suite& s) {
    const auto& u = c.units;
    const double hbar = u.hbar;
    const double w0 = c.oscillator.omega0;
    const int n_max = c.analysis.n_max;
    const complex i_hbar(0.0, hbar);

    std::vector<ResponseExpansion> ex;
    for (int n = 0; n <= n_max; ++n) ex.push_back(build_ho_expansion(n, u, w0));

    double sum_dev = 0.0;
    for (const auto& e : ex) sum_dev = std::max(sum_dev, std::abs(sum_rule(e) - hbar / (2 * u.m)) / (hbar / (2 * u.m)));
    s.add("sum_rule", sum_dev, 0.0, "sum_k w_kn |x_nk|^2 = hbar / 2m",
          "max relative deviation over n = 0.." + std::to_string(n_max));

    double diag = 0.0;
    double off = 0.0;
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n_max; ++k) {
            const complex b = poisson_bracket_aa(ex[n], ex[k]);
            if (n == k)
                diag = std::max(diag, std::abs(b - i_hbar) / hbar);
            else
                off = std::max(off, std::abs(b) / hbar);
        }
    s.add("bracket_analytic_diagonal", diag, 0.0, "Poisson bracket over the normal amplitudes {x, p} = i hbar",
          "max |{x_n, p_n} - i hbar| / hbar");
    s.add("bracket_analytic_off_diagonal", off, 0.0, "{x_n, p_n'} = 0 for different states",
          "max |{x_n, p_n'}| / hbar");

    FieldBand wide = resonant_band(w0, c.oscillator.tau, 500.0, 4.0);
    const auto field = sample_realization(wide, u, stream_seed(c.ensemble.master_seed, bracket_stream));
    const auto nb = poisson_bracket_numeric(normal_amplitudes(field), spectral_response_map(c.oscillator, field, 37.0 / w0));
    s.add_complex("bracket_numeric", nb.value, i_hbar,
          "finite-difference bracket of the stationary response equals i hbar",
          "band +-500 linewidths, " + std::to_string(wide.n_modes) + " modes; analytic mode sum " +
              format_double(analytic_mode_bracket(c.oscillator, field).imag()));

    const auto m = build_ho_matrices(n_max, u, w0);
    const Eigen::MatrixXcd comm = commutator_matrix(m);
    double interior = 0.0;
    for (int n = 0; n <= n_max - 2; ++n) interior = std::max(interior, std::abs(comm(n, n) - i_hbar) / hbar);
    s.add("commutator_interior", interior, 0.0, "truncated [X, P]_nn = i hbar for interior states",
          "states 0.." + std::to_string(n_max - 2));
    s.add_complex("commutator_edge", comm(n_max, n_max), complex(0.0, -hbar * n_max),
          "truncation artifact [X, P] at the top state is -i hbar n_max");

    double diff_dev = 0.0;
    double sum_dev2 = 0.0;
    double corr = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const auto oc = ordered_covariances(ex[n]);
        diff_dev = std::max(diff_dev, std::abs(oc.c_xp - oc.c_px - i_hbar) / hbar);
        sum_dev2 = std::max(sum_dev2, std::abs(oc.c_xp + oc.c_px) / hbar);
        if (n <= n_max - 2)
            for (const auto& e : correspondence_check(ex[n], m)) corr = std::max(corr, e.deviation());
    }
    s.add("ordered_difference", diff_dev, 0.0, "C_xp - C_px = i hbar", "max over n = 0.." + std::to_string(n_max));
    s.add("ordered_sum", sum_dev2, 0.0, "C_xp + C_px = 0 for the oscillator",
          "max over n = 0.." + std::to_string(n_max));
    s.add("anticommutator_correspondence", corr, 0.0,
          "symmetrized covariance matches the matrix anticommutator; bracket matches the commutator",
          "max deviation over interior states");
}

void response_checks(const RunConfig& c, Suite& s) {
    const double w0 = c.oscillator.omega0;
    const auto grid = resonance_grid(w0, c.oscillator.tau, 50.0, 2001);
    const auto kk = kramers_kronig_reconstruct(grid);
    s.add("kramers_kronig", kk.max_relative_error, 0.0,
          "Re chi follows from Im chi by the dispersion relation",
          "max |error| / max |Re chi| over the inner 80% of a +-50 linewidth grid");

    const double tau_rc = 1e-3 / w0;
    const auto r1 = resonance_covariance(w0, tau_rc, c.units);
    const auto r2 = resonance_covariance(2.0 * w0, tau_rc, c.units);
    s.add("resonance_covariance", r1.numeric, r1.delta_limit,
          "resonance integral tends to hbar / (2 m |w_kn|) for a narrow line",
          "quadrature error estimate " + format_double(r1.abs_error) + " at tau w_kn = 1e-3");
    s.add("resonance_covariance_scaling", r2.numeric * 2.0 * w0 / (r1.numeric * w0), 1.0,
          "resonance integral scales as 1 / |w_kn|", "ratio of w_kn C at 2 w0 and at w0");
    s.add("resonance_covariance_quoted", r1.numeric, r1.quoted,
          "closed form hbar / (m |w_kn|) without the factor 1/2",
          "reported only: the quadrature gives half the quoted value");
}

void spectrum_checks(const RunConfig& c, Suite& s) {
    const double w0 = c.oscillator.omega0;
    const double gamma = c.oscillator.damping();
    EnsembleRun run;
    run.params = c.oscillator;
    run.units = c.units;
    run.band = resonant_band(w0, c.oscillator.tau, 20.0, 40.0);
    run.master_seed = stream_seed(c.ensemble.master_seed, spectrum_stream);
    run.n_members = 100;
    const double dt = 2.0 / w0;
    const std::size_t segment = next_pow2(10.0 * two_pi / (gamma * dt));
    run.grid = TimeGrid{0.0, dt, 2 * segment};
    const auto members = run_ensemble(run);
    WelchOptions o;
    o.segment_length = segment;
    const auto d = spectrum_decompose(members, c.units, o, segment / 8);
    const auto ls = line_shape(d.spectrum);
    s.add("spectrum_peak_bins", std::abs(ls.center_omega - w0) / d.spectrum.d_omega, 0.0,
          "S_x peaks at w0",
          "line centre from the half-power crossings; bin width " + format_double(d.spectrum.d_omega) +
              ", largest bin at " + format_double((ls.peak_omega - w0) / d.spectrum.d_omega) + " bins");
    s.add("spectrum_fwhm", ls.fwhm, gamma, "line width of S_x equals tau w0^2");
    s.add("spectrum_parseval", d.spectrum.integral(), d.var_x, "integral of S_x over w equals var x",
          "odd part vs response function: rms deviation " + format_double(d.antisymmetric_rms_deviation) +
              "; even part vs direct covariance: " + format_double(d.symmetric_rms_deviation));
}

void markov_checks(Suite& s) {
    const PhysicalConstants pc;
    const double dt = markov_timescale(pc);
    s.add("markov_timescale", dt, 2.4e-17, "Markov resolution dt = 1 / (alpha^2 w_C) for the electron",
          "seconds");
    s.add("markov_timescale_order", std::floor(std::log10(dt)), -17.0, "dt is of order 1e-17 s");
}

void oracle_checks(const RunConfig& c, Suite& s) {
    const double w0 = c.oscillator.omega0;
    for (double tau_w0 : {1e-3, 1e-2}) {
        const auto p = make_oscillator(c.units, w0, tau_w0 / w0);
        const auto band = resonant_band(w0, p.tau);
        const auto field = sample_realization(band, c.units, stream_seed(c.ensemble.master_seed, oracle_stream));
        IntegrationOptions opt;
        opt.dt = std::min(0.1 / w0, two_pi / band.omega_max / 20.0);
        opt.transient = 12.0 / p.damping();
        opt.t_end = opt.transient + 4.0 / p.damping();
        opt.record_stride = 5;
        const auto td = integrate_time_domain(p, field, opt);
        const auto sp = steady_state_spectral(p, field, TimeGrid{td.t0, td.dt, td.size()});
        std::vector<double> diff(td.size());
        for (std::size_t i = 0; i < td.size(); ++i) diff[i] = td.x[i] - sp.x[i];
        const std::string name = tau_w0 == 1e-3 ? "oracle_equivalence_tau_1e-3" : "oracle_equivalence_tau_1e-2";
        s.add(name, rms(diff) / rms(sp.x), 0.0, "time-domain integration agrees with the stationary spectral solution",
              "relative RMS difference after 12 damping times");
    }
}

void determinism_check(const RunConfig& c, Suite& s) {
    EnsembleRun run;
    run.params = c.oscillator;
    run.units = c.units;
    run.band = c.band;
    run.master_seed = stream_seed(c.ensemble.master_seed, determinism_stream);
    run.n_members = 4;
    run.grid = TimeGrid{0.0, 8.0 / c.oscillator.omega0, 256};
    const std::string a = stats_json(ensemble_statistics(run_ensemble(run)));
    const std::string b = stats_json(ensemble_statistics(run_ensemble(run)));
    std::size_t mismatched = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) mismatched += a[i] != b[i];
    s.add("determinism", static_cast<double>(mismatched), 0.0, "plumbing", "differing bytes between two runs");
}

} // namespace

const std::vector<VerifyCheck>& verify_registry() {
    static const std::vector<VerifyCheck> registry = {
        {"stationary_energy_spectral", 1, 0.05, M::relative},
        {"stationary_energy_time_domain", 1, 0.07, M::relative},
        {"sum_rule", 2, 1e-12, M::absolute},
        {"bracket_analytic_diagonal", 3, 1e-12, M::absolute},
        {"bracket_analytic_off_diagonal", 3, 1e-12, M::absolute},
        {"bracket_numeric", 3, 1e-3, M::relative},
        {"commutator_interior", 3, 1e-12, M::absolute},
        {"commutator_edge", 3, 1e-12, M::relative},
        {"ordered_difference", 4, 1e-12, M::absolute},
        {"ordered_sum", 4, 1e-12, M::absolute},
        {"anticommutator_correspondence", 4, 1e-10, M::absolute},
        {"kramers_kronig", 5, 0.02, M::absolute},
        {"resonance_covariance", 6, 0.01, M::relative},
        {"resonance_covariance_scaling", 6, 0.01, M::relative},
        {"resonance_covariance_quoted", 6, 0.0, M::info},
        {"power_balance_ratio", 7, 0.1, M::relative},
        {"diffusion_pp_vs_radiated", 7, 0.1, M::relative},
        {"spectrum_peak_bins", 8, 1.0, M::absolute},
        {"spectrum_fwhm", 8, 0.2, M::relative},
        {"spectrum_parseval", 8, 0.05, M::relative},
        {"markov_timescale", 9, 0.02, M::relative},
        {"markov_timescale_order", 9, 0.0, M::absolute},
        {"uncertainty_product", 10, 0.05, M::relative},
        {"uncertainty_product_order_estimate", 10, 0.0, M::info},
        {"oracle_equivalence_tau_1e-3", 11, 0.01, M::absolute},
        {"oracle_equivalence_tau_1e-2", 11, 0.01, M::absolute},
        {"determinism", 12, 0.0, M::absolute},
    };
    return registry;
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> table = [] {
        std::map<std::string, double> t;
        for (const auto& c : verify_registry()) t.emplace(c.name, c.tolerance);
        return t;
    }();
    return table;
}

const VerifyCheck* find_check(const std::string& name) {
    for (const auto& c : verify_registry())
        if (c.name == name) return &c;
    return nullptr;
}

double effective_tolerance(const RunConfig& config, const VerifyCheck& check) {
    const auto it = config.analysis.tolerance.find(check.name);
    if (it != config.analysis.tolerance.end()) return it->second;
    return check.tolerance * config.analysis.tolerance_scale;
}

CheckReport run_verify(const RunConfig& config) {
    Suite s(config);
    stationary_ensemble_checks(config, s);
    time_domain_energy_check(config, s);
    bracket_checks(config, s);
    response_checks(config, s);
    spectrum_checks(config, s);
    markov_checks(s);
    oracle_checks(config, s);
    determinism_check(config, s);

    // Registry order, independent of the order the experiments run in.
    CheckReport report = s.take();
    std::vector<CheckEntry> ordered;
    for (const auto& check : verify_registry()) {
        const auto it = std::find_if(report.entries.begin(), report.entries.end(),
                                     [&](const CheckEntry& e) { return e.name == check.name; });
        if (it == report.entries.end()) throw std::logic_error("verify: check " + check.name + " was not run");
        ordered.push_back(std::move(*it));
    }
    report.entries = std::move(ordered);
    return report;
}

} // namespace sedres
