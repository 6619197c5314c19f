#include "sedres/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sedres {

double CheckEntry::deviation() const {
    const double diff = std::abs(value - reference);
    if (mode == ToleranceMode::relative) {
        const double scale = std::abs(reference);
        return scale > 0.0 ? diff / scale : (diff == 0.0 ? 0.0 : INFINITY);
    }
    return diff;
}

void evaluate(CheckEntry& e) {
    switch (e.mode) {
    case ToleranceMode::info: e.pass = true; break;
    case ToleranceMode::absolute:
    case ToleranceMode::relative: {
        const double d = e.deviation();
        e.pass = std::isfinite(std::abs(e.value)) && d <= e.tolerance;
        break;
    }
    }
}

CheckEntry make_check(std::string name, std::complex<double> value, std::complex<double> reference,
                      double tolerance, ToleranceMode mode, std::string provenance, std::string note) {
    CheckEntry e;
    e.name = std::move(name);
    e.value = value;
    e.reference = reference;
    e.is_complex = true;
    e.tolerance = tolerance;
    e.mode = mode;
    e.provenance = std::move(provenance);
    e.note = std::move(note);
    evaluate(e);
    return e;
}

CheckEntry make_check(std::string name, double value, double reference, double tolerance, ToleranceMode mode,
                      std::string provenance, std::string note) {
    CheckEntry e = make_check(std::move(name), std::complex<double>(value), std::complex<double>(reference),
                              tolerance, mode, std::move(provenance), std::move(note));
    e.is_complex = false;
    return e;
}

std::size_t CheckReport::passed() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += (e.mode != ToleranceMode::info && e.pass) ? 1 : 0;
    return n;
}

std::size_t CheckReport::failed() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.pass ? 0 : 1;
    return n;
}

std::size_t CheckReport::informational() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.mode == ToleranceMode::info ? 1 : 0;
    return n;
}

const CheckEntry* CheckReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

const char* to_string(ToleranceMode mode) {
    switch (mode) {
    case ToleranceMode::absolute: return "absolute";
    case ToleranceMode::relative: return "relative";
    case ToleranceMode::info: return "info";
    }
    return "?";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::json number_json(std::complex<double> v, bool is_complex) {
    auto finite_or_null = [](double d) -> nlohmann::json {
        if (std::isfinite(d)) return d;
        return nullptr;
    };
    if (!is_complex) return finite_or_null(v.real());
    return nlohmann::json::array({finite_or_null(v.real()), finite_or_null(v.imag())});
}

std::string number_text(std::complex<double> v, bool is_complex) {
    if (!is_complex) return format_double(v.real());
    std::string s = format_double(v.real());
    s += v.imag() < 0 ? " - " : " + ";
    s += format_double(std::abs(v.imag())) + "i";
    return s;
}

} // namespace

std::string report_json(const CheckReport& report) {
    nlohmann::ordered_json out;
    out["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json j;
        j["name"] = e.name;
        j["value"] = number_json(e.value, e.is_complex);
        j["reference"] = number_json(e.reference, e.is_complex);
        j["tolerance"] = e.tolerance;
        j["mode"] = to_string(e.mode);
        const double d = e.deviation();
        j["deviation"] = std::isfinite(d) ? nlohmann::ordered_json(d) : nlohmann::ordered_json(nullptr);
        j["pass"] = e.pass;
        j["provenance"] = e.provenance;
        if (!e.note.empty()) j["note"] = e.note;
        out["entries"].push_back(j);
    }
    out["summary"] = {{"total", report.entries.size()},
                      {"passed", report.passed()},
                      {"failed", report.failed()},
                      {"info", report.informational()}};
    return out.dump(2) + "\n";
}

std::string report_table(const CheckReport& report) {
    std::size_t width = 4;
    for (const auto& e : report.entries) width = std::max(width, e.name.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(6) << "status"
       << "  value  |  reference  |  deviation (mode <= tolerance)\n";
    for (const auto& e : report.entries) {
        const char* status = e.mode == ToleranceMode::info ? "info" : (e.pass ? "PASS" : "FAIL");
        os << std::setw(static_cast<int>(width)) << e.name << "  " << std::setw(6) << status << "  "
           << number_text(e.value, e.is_complex) << "  |  " << number_text(e.reference, e.is_complex) << "  |  "
           << format_double(e.deviation()) << " (" << to_string(e.mode);
        if (e.mode != ToleranceMode::info) os << " <= " << format_double(e.tolerance);
        os << ")";
        if (!e.note.empty()) os << "  " << e.note;
        os << "\n";
    }
    os << report.passed() << " passed, " << report.failed() << " failed, " << report.informational()
       << " informational, " << report.entries.size() << " total\n";
    return os.str();
}

} // namespace sedres
