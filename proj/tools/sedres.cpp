// Batch command-line front end.
//
//   sedres <simulate|respond|brackets|scales|verify> --config <path> [--seed N] [--out DIR]
//
// Exit status: 0 success, 1 verification failure or failed run, 2 usage or configuration error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sedres/config.hpp"
#include "sedres/errors.hpp"
#include "sedres/runner.hpp"
#include "sedres/serialize.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "configuration file")->required();
    sub->add_option("--seed", o.seed, "master seed, overrides ensemble.master_seed");
    sub->add_option("--out", o.out_dir, "output directory, overrides output.dir");
}

int run(const std::string& command, const sedres::RunConfig& config) {
    using namespace sedres;
    if (command == "simulate") {
        const auto s = run_simulate(config);
        std::cout << "members      " << s.n_members << "\n"
                  << "mean energy  " << format_double(s.mean_energy) << " +- " << format_double(s.se_mean_energy)
                  << "\n"
                  << "var x        " << format_double(s.var_x) << " +- " << format_double(s.se_var_x) << "\n"
                  << "dx dp        " << format_double(s.uncertainty_product) << " +- "
                  << format_double(s.se_uncertainty_product) << "\n"
                  << "written to   " << config.output_dir << "\n";
        return exit_ok;
    }
    if (command == "respond") {
        std::cout << run_respond(config);
        return exit_ok;
    }
    if (command == "brackets") {
        const auto report = run_brackets(config);
        std::cout << report_table(report);
        return report.all_passed() ? exit_ok : exit_failed;
    }
    if (command == "scales") {
        std::cout << run_scales(config);
        return exit_ok;
    }
    const auto report = run_verify_to_disk(config);
    std::cout << report_table(report);
    return report.all_passed() ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-point field oscillator experiments and verification"};
    app.require_subcommand(1, 1);
    Options options;
    for (const char* name : {"simulate", "respond", "brackets", "scales", "verify"}) {
        static const char* help[] = {"run the configured ensemble and write trajectories and statistics",
                                     "tabulate susceptibility, response function and dispersion check",
                                     "response matrices, brackets and ordered covariances",
                                     "Markov time resolution and dispersion estimates",
                                     "run every verification check and write the report"};
        const std::string n = name;
        const int idx = n == "simulate" ? 0 : n == "respond" ? 1 : n == "brackets" ? 2 : n == "scales" ? 3 : 4;
        add_common(app.add_subcommand(name, help[idx]), options);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    sedres::RunConfig config;
    try {
        config = sedres::load_config(options.config_path);
    } catch (const sedres::ConfigError& err) {
        std::cerr << "sedres: " << err.what() << "\n";
        return exit_usage;
    }
    if (options.seed) config.ensemble.master_seed = *options.seed;
    if (options.out_dir) config.output_dir = *options.out_dir;

    try {
        return run(command, config);
    } catch (const std::exception& err) {
        std::cerr << "sedres " << command << ": " << err.what() << "\n";
        return exit_failed;
    }
}
