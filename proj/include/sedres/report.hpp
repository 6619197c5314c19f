#pragma once

// Named verification results with their pass/fail rule, and renderers.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace sedres {

// absolute: |value - reference| <= tolerance
// relative: |value - reference| <= tolerance * |reference|
// info:     recorded for comparison only; never fails
enum class ToleranceMode { absolute, relative, info };

struct CheckEntry {
    std::string name;
    std::complex<double> value;
    std::complex<double> reference;
    bool is_complex = false;
    double tolerance = 0.0;
    ToleranceMode mode = ToleranceMode::absolute;
    bool pass = false;
    // Formula or statement the entry checks, or "plumbing".
    std::string provenance;
    std::string note;

    // |value - reference|, divided by |reference| in relative mode.
    double deviation() const;
};

CheckEntry make_check(std::string name, double value, double reference, double tolerance, ToleranceMode mode,
                      std::string provenance, std::string note = {});
CheckEntry make_check(std::string name, std::complex<double> value, std::complex<double> reference,
                      double tolerance, ToleranceMode mode, std::string provenance, std::string note = {});

// Re-evaluates `pass` after a tolerance change.
void evaluate(CheckEntry& entry);

struct CheckReport {
    std::vector<CheckEntry> entries;

    std::size_t passed() const;
    std::size_t failed() const;
    std::size_t informational() const;
    bool all_passed() const { return failed() == 0; }
    const CheckEntry* find(const std::string& name) const;
};

const char* to_string(ToleranceMode mode);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

std::string report_json(const CheckReport& report);
std::string report_table(const CheckReport& report);

} // namespace sedres
