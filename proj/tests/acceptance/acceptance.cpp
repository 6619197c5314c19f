// Runs the verification suite twice with the default configuration (or the
// configuration given as the first argument) and prints one line per
// acceptance criterion. Exit status 0 iff every criterion passes.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "sedres/config.hpp"
#include "sedres/report.hpp"
#include "sedres/verify.hpp"

using namespace sedres;

namespace {

const std::map<int, std::string> titles = {
    {1, "stationary energy hbar w0 / 2"},
    {2, "sum rule"},
    {3, "bracket and commutator"},
    {4, "ordered covariances"},
    {5, "Kramers-Kronig reconstruction"},
    {6, "resonance integral"},
    {7, "fluctuation-dissipation balance"},
    {8, "spectrum line shape"},
    {9, "Markov time resolution"},
    {10, "uncertainty product"},
    {11, "integrator vs spectral solution"},
    {12, "determinism"},
};

void line(const std::string& label, bool pass, const std::string& detail) {
    std::printf("%-46s %s  %s\n", label.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
}

} // namespace

int main(int argc, char** argv) {
    try {
        const RunConfig config = argc > 1 ? load_config(argv[1]) : RunConfig{};
        const CheckReport first = run_verify(config);
        const CheckReport second = run_verify(config);
        const std::string json_first = report_json(first);
        const bool identical = json_first == report_json(second) && report_table(first) == report_table(second);

        bool all = true;
        for (const auto& [criterion, title] : titles) {
            bool pass = true;
            std::string detail;
            for (const auto& check : verify_registry()) {
                if (check.criterion != criterion) continue;
                const CheckEntry* e = first.find(check.name);
                if (!e) {
                    pass = false;
                    detail += check.name + " missing; ";
                    continue;
                }
                pass = pass && e->pass;
                detail += e->name + (e->mode == ToleranceMode::info ? " info" : e->pass ? " ok" : " FAILED") +
                          " (" + format_double(e->deviation()) + "); ";
            }
            if (criterion == 12) {
                pass = pass && identical;
                detail += identical ? "two verify runs byte-identical" : "two verify runs differ";
            } else if (detail.size() >= 2) {
                detail.resize(detail.size() - 2);
            }
            all = all && pass;
            line("criterion " + std::to_string(criterion) + ": " + title, pass, detail);
        }

        // Report-level properties.
        const bool sized = first.entries.size() >= 12;
        const bool anchored = std::all_of(first.entries.begin(), first.entries.end(),
                                          [](const CheckEntry& e) { return !e.provenance.empty(); });
        CheckReport tightened = first;
        std::size_t statistical_failures = 0;
        for (auto& e : tightened.entries) {
            if (e.mode == ToleranceMode::info) continue;
            e.tolerance = 0.0;
            evaluate(e);
            statistical_failures += e.pass ? 0 : 1;
        }
        const bool tightening_fails = !tightened.all_passed() && !tightened.find("stationary_energy_spectral")->pass;
        line("report: >= 12 named entries", sized, std::to_string(first.entries.size()) + " entries");
        line("report: every entry anchored", anchored, "provenance text or plumbing");
        line("report: zero tolerance fails", tightening_fails,
             std::to_string(statistical_failures) + " entries fail at tolerance 0");
        all = all && sized && anchored && tightening_fails;

        std::printf("%s: %zu passed, %zu failed, %zu informational\n", all ? "ACCEPTED" : "REJECTED", first.passed(),
                    first.failed(), first.informational());
        return all ? 0 : 1;
    } catch (const std::exception& err) {
        std::cerr << "acceptance: " << err.what() << "\n";
        return 2;
    }
}
