#include "sedres/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "sedres/bracket_algebra.hpp"
#include "sedres/linear_response.hpp"
#include "sedres/markov_scales.hpp"
#include "sedres/rng.hpp"
#include "sedres/serialize.hpp"
#include "sedres/verify.hpp"

namespace sedres {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path out_path(const RunConfig& c, const std::string& name) { return fs::path(c.output_dir) / name; }

} // namespace

EnsembleStats run_simulate(const RunConfig& c) {
    const auto run = ensemble_run(c);
    const auto members = run_ensemble(run);
    const auto stats = ensemble_statistics(members);
    for (std::size_t i = 0; i < members.size(); ++i)
        write_text_file(out_path(c, "traj_" + std::to_string(i) + ".csv"), trajectory_csv(members[i]));
    write_text_file(out_path(c, "stats.json"), stats_json(stats));
    write_text_file(out_path(c, "realization_0.json"),
                    realization_json(sample_realization(c.band, c.units, member_seed(c.ensemble.master_seed, 0))));
    return stats;
}

std::string run_respond(const RunConfig& c) {
    const double w0 = c.oscillator.omega0;
    const double tau = c.oscillator.tau;
    const double gamma = c.oscillator.damping();

    const auto grid = resonance_grid(w0, tau, 50.0, 2001);
    write_text_file(out_path(c, "susceptibility.csv"), susceptibility_csv(grid));

    const auto kk = kramers_kronig_reconstruct(grid);
    std::string kk_csv = "omega,re,re_reconstructed\n";
    for (std::size_t i = 0; i < kk.omega.size(); ++i)
        kk_csv += format_double(kk.omega[i]) + ',' + format_double(grid.values[i].real()) + ',' +
                  format_double(kk.reconstructed_real[i]) + '\n';
    write_text_file(out_path(c, "kramers_kronig.csv"), kk_csv);

    const double dt = 0.25 / w0;
    std::size_t n = 4;
    while (static_cast<double>(n) * dt < 32.0 / gamma) n <<= 1;
    const auto rf = response_function({w0}, tau, dt, n);
    write_text_file(out_path(c, "response_function.csv"), response_function_csv(rf));

    const auto rc = resonance_covariance(w0, std::min(tau, 1e-2 / w0), c.units);
    json j;
    j["omega_kn"] = w0;
    j["tau"] = tau;
    j["kramers_kronig_max_relative_error"] = kk.max_relative_error;
    j["response_imaginary_fraction"] = rf.imaginary_fraction;
    j["resonance_covariance"] = {{"numeric", rc.numeric},
                                 {"abs_error", rc.abs_error},
                                 {"delta_limit", rc.delta_limit},
                                 {"ratio", rc.ratio},
                                 {"quoted", rc.quoted}};
    write_text_file(out_path(c, "respond.json"), j.dump(2) + "\n");

    std::ostringstream os;
    os << "Kramers-Kronig max relative error  " << format_double(kk.max_relative_error) << "\n"
       << "resonance covariance               " << format_double(rc.numeric) << " (narrow-line limit "
       << format_double(rc.delta_limit) << ")\n"
       << "response function samples          " << rf.t.size() << " at dt " << format_double(dt) << "\n";
    return os.str();
}

CheckReport run_brackets(const RunConfig& c) {
    const int n_max = c.analysis.n_max;
    const auto m = build_ho_matrices(n_max, c.units, c.oscillator.omega0);
    write_text_file(out_path(c, "response_matrix.json"), response_matrix_json(m));

    CheckReport report;
    json states = json::array();
    const double hbar = c.units.hbar;
    for (int n = 0; n <= n_max; ++n) {
        const auto e = build_ho_expansion(n, c.units, c.oscillator.omega0);
        const auto b = poisson_bracket_aa(e, e);
        const auto oc = ordered_covariances(e);
        states.push_back({{"n", n},
                          {"sum_rule", sum_rule(e)},
                          {"bracket", {b.real(), b.imag()}},
                          {"c_xp", {oc.c_xp.real(), oc.c_xp.imag()}},
                          {"c_px", {oc.c_px.real(), oc.c_px.imag()}}});
        report.entries.push_back(make_check("bracket[n=" + std::to_string(n) + "]", b, complex(0.0, hbar), 1e-12,
                                            ToleranceMode::relative, "{x, p} = i hbar"));
        if (n <= n_max - 2)
            for (auto& entry : correspondence_check(e, m)) report.entries.push_back(std::move(entry));
    }
    json j;
    j["n_max"] = n_max;
    j["states"] = std::move(states);
    write_text_file(out_path(c, "brackets.json"), j.dump(2) + "\n");
    return report;
}

std::string run_scales(const RunConfig& c) {
    const PhysicalConstants pc;
    const double dt = markov_timescale(pc);
    const auto d = dispersion_estimates(pc, dt);
    json j;
    j["alpha"] = pc.alpha;
    j["omega_c"] = pc.omega_c;
    j["markov_timescale"] = dt;
    j["var_x"] = d.var_x;
    j["var_p"] = d.var_p;
    j["product"] = d.product;
    j["product_over_hbar_squared"] = d.product / (pc.hbar_si * pc.hbar_si);
    write_text_file(out_path(c, "scales.json"), j.dump(2) + "\n");
    return scales_summary(pc);
}

CheckReport run_verify_to_disk(const RunConfig& c) {
    auto report = run_verify(c);
    write_text_file(out_path(c, "report.json"), report_json(report));
    write_text_file(out_path(c, "report.txt"), report_table(report));
    return report;
}

} // namespace sedres
