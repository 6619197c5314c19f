#include "sedres/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sedres/errors.hpp"
#include "sedres/report.hpp"
#include "sedres/verify.hpp"

namespace sedres {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "units.hbar",          "units.m",
        "units.c",             "oscillator.mass",
        "oscillator.omega0",   "oscillator.tau",
        "oscillator.charge",   "band.omega_min",
        "band.omega_max",      "band.n_modes",
        "band.spacing",        "band.jitter",
        "ensemble.n_members",  "ensemble.master_seed",
        "integration.dt",      "integration.t_end",
        "integration.transient", "integration.record_stride",
        "simulate.path",       "analysis.n_max",
        "analysis.tolerance_scale", "analysis.allow_tighten",
        "output.dir",
    };
    return keys;
}

const std::string tolerance_prefix = "analysis.tolerance.";

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Value {
    std::string text;
    int line = 0;
};

class Entries {
public:
    explicit Entries(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const std::string content = trim(raw);
            if (content.empty()) continue;
            const auto eq = content.find('=');
            if (eq == std::string::npos) throw ConfigError("", line, "expected 'key = value'");
            const std::string key = trim(content.substr(0, eq));
            const std::string value = trim(content.substr(eq + 1));
            if (key.empty()) throw ConfigError("", line, "missing key");
            const bool is_tolerance = key.rfind(tolerance_prefix, 0) == 0 && key.size() > tolerance_prefix.size();
            if (!is_tolerance && !known_keys().count(key)) throw ConfigError(key, line, "unknown key");
            if (value.empty()) throw ConfigError(key, line, "missing value");
            if (!values_.emplace(key, Value{value, line}).second) throw ConfigError(key, line, "duplicate key");
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    int line(const std::string& key) const { return has(key) ? values_.at(key).line : 0; }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = values_.at(key);
        double out = 0.0;
        const char* end = v.text.data() + v.text.size();
        const auto r = std::from_chars(v.text.data(), end, out);
        if (r.ec != std::errc() || r.ptr != end || !std::isfinite(out))
            throw ConfigError(key, v.line, "expected a finite number, got '" + v.text + "'");
        return out;
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const auto& v = values_.at(key);
        std::uint64_t out = 0;
        const char* end = v.text.data() + v.text.size();
        const auto r = std::from_chars(v.text.data(), end, out);
        if (r.ec != std::errc() || r.ptr != end)
            throw ConfigError(key, v.line, "expected a non-negative integer, got '" + v.text + "'");
        return out;
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const auto& v = values_.at(key);
        if (v.text == "true") return true;
        if (v.text == "false") return false;
        throw ConfigError(key, v.line, "expected true or false, got '" + v.text + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        return has(key) ? values_.at(key).text : fallback;
    }

    std::map<std::string, Value> tolerances() const {
        std::map<std::string, Value> out;
        for (const auto& [key, v] : values_)
            if (key.rfind(tolerance_prefix, 0) == 0) out.emplace(key.substr(tolerance_prefix.size()), v);
        return out;
    }

    void require(bool ok, const std::string& key, const std::string& message) const {
        if (!ok) throw ConfigError(key, line(key), message);
    }

private:
    std::map<std::string, Value> values_;
};

} // namespace

const char* to_string(SimulationPath path) {
    return path == SimulationPath::spectral ? "spectral" : "time_domain";
}

const char* to_string(GridSpacing spacing) {
    return spacing == GridSpacing::uniform ? "uniform" : "uniform_in_cube";
}

RunConfig parse_config(const std::string& text) {
    const Entries in(text);
    RunConfig c;

    c.units.hbar = in.number("units.hbar", 1.0);
    c.units.m = in.number("units.m", 1.0);
    c.units.c = in.number("units.c", 1.0);
    for (const char* key : {"units.hbar", "units.m", "units.c"})
        in.require(in.number(key, 1.0) > 0.0, key, "must be positive");

    auto& osc = c.oscillator;
    osc.m = in.number("oscillator.mass", c.units.m);
    osc.omega0 = in.number("oscillator.omega0", 1.0);
    osc.tau = in.number("oscillator.tau", 1e-3);
    in.require(osc.m > 0.0, "oscillator.mass", "must be positive");
    in.require(osc.omega0 > 0.0, "oscillator.omega0", "must be positive");
    in.require(osc.tau > 0.0, "oscillator.tau", "must be positive");
    in.require(osc.tau * osc.omega0 <= 0.1, "oscillator.tau", "tau * omega0 must not exceed 0.1");
    osc.e = in.number("oscillator.charge", charge_for_tau(osc.tau, osc.m, c.units));

    c.band = resonant_band(osc.omega0, osc.tau);
    c.band.omega_min = in.number("band.omega_min", c.band.omega_min);
    c.band.omega_max = in.number("band.omega_max", c.band.omega_max);
    const auto n_modes = in.integer("band.n_modes", c.band.n_modes);
    in.require(n_modes >= 1, "band.n_modes", "must be at least 1");
    c.band.n_modes = static_cast<std::size_t>(n_modes);
    const std::string spacing = in.text("band.spacing", to_string(c.band.spacing));
    if (spacing == "uniform")
        c.band.spacing = GridSpacing::uniform;
    else if (spacing == "uniform_in_cube")
        c.band.spacing = GridSpacing::uniform_in_cube;
    else
        in.require(false, "band.spacing", "expected uniform or uniform_in_cube");
    c.band.jitter = in.number("band.jitter", c.band.jitter);
    in.require(c.band.omega_min > 0.0, "band.omega_min", "must be positive");
    in.require(c.band.omega_max > c.band.omega_min, "band.omega_max", "must exceed band.omega_min");
    in.require(c.band.jitter >= 0.0 && c.band.jitter < 1.0, "band.jitter", "must lie in [0, 1)");
    try {
        c.band.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError("band", 0, err.what());
    }

    c.ensemble.n_members = static_cast<std::size_t>(in.integer("ensemble.n_members", c.ensemble.n_members));
    in.require(c.ensemble.n_members >= 1, "ensemble.n_members", "must be at least 1");
    c.ensemble.master_seed = in.integer("ensemble.master_seed", c.ensemble.master_seed);

    auto& integ = c.integration;
    integ.dt = in.number("integration.dt", integ.dt);
    integ.t_end = in.number("integration.t_end", integ.t_end);
    integ.transient = in.number("integration.transient", integ.transient);
    integ.record_stride = static_cast<std::size_t>(in.integer("integration.record_stride", integ.record_stride));
    in.require(integ.dt > 0.0, "integration.dt", "must be positive");
    in.require(integ.t_end > 0.0, "integration.t_end", "must be positive");
    in.require(integ.transient >= 0.0 && integ.transient < integ.t_end, "integration.transient",
               "must lie in [0, integration.t_end)");
    in.require(integ.record_stride >= 1, "integration.record_stride", "must be at least 1");
    in.require(sample_grid(c).n >= 2, "integration.t_end", "fewer than two recorded samples");

    const std::string path = in.text("simulate.path", to_string(c.simulate_path));
    if (path == "spectral")
        c.simulate_path = SimulationPath::spectral;
    else if (path == "time_domain")
        c.simulate_path = SimulationPath::time_domain;
    else
        in.require(false, "simulate.path", "expected spectral or time_domain");

    auto& an = c.analysis;
    const auto n_max = in.integer("analysis.n_max", static_cast<std::uint64_t>(an.n_max));
    in.require(n_max >= 3 && n_max <= 1000, "analysis.n_max", "must lie in [3, 1000]");
    an.n_max = static_cast<int>(n_max);
    an.allow_tighten = in.boolean("analysis.allow_tighten", false);
    an.tolerance_scale = in.number("analysis.tolerance_scale", 1.0);
    in.require(an.tolerance_scale >= 0.0, "analysis.tolerance_scale", "must be non-negative");
    in.require(an.tolerance_scale >= 1.0 || an.allow_tighten, "analysis.tolerance_scale",
               "values below 1 tighten every check; set analysis.allow_tighten = true");
    const auto& defaults = default_tolerances();
    for (const auto& [name, v] : in.tolerances()) {
        const std::string key = tolerance_prefix + name;
        const auto it = defaults.find(name);
        if (it == defaults.end()) throw ConfigError(key, v.line, "no verify check named '" + name + "'");
        const double value = in.number(key, 0.0);
        in.require(value >= 0.0, key, "must be non-negative");
        in.require(value >= it->second || an.allow_tighten, key,
                   "tighter than the default " + format_double(it->second) +
                       "; set analysis.allow_tighten = true");
        an.tolerance[name] = value;
    }

    c.output_dir = in.text("output.dir", c.output_dir);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", 0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    auto put = [&](const std::string& key, const std::string& value) { os << key << " = " << value << '\n'; };
    auto num = [&](const std::string& key, double v) { put(key, format_double(v)); };
    num("units.hbar", c.units.hbar);
    num("units.m", c.units.m);
    num("units.c", c.units.c);
    num("oscillator.mass", c.oscillator.m);
    num("oscillator.omega0", c.oscillator.omega0);
    num("oscillator.tau", c.oscillator.tau);
    num("oscillator.charge", c.oscillator.e);
    num("band.omega_min", c.band.omega_min);
    num("band.omega_max", c.band.omega_max);
    put("band.n_modes", std::to_string(c.band.n_modes));
    put("band.spacing", to_string(c.band.spacing));
    num("band.jitter", c.band.jitter);
    put("ensemble.n_members", std::to_string(c.ensemble.n_members));
    put("ensemble.master_seed", std::to_string(c.ensemble.master_seed));
    num("integration.dt", c.integration.dt);
    num("integration.t_end", c.integration.t_end);
    num("integration.transient", c.integration.transient);
    put("integration.record_stride", std::to_string(c.integration.record_stride));
    put("simulate.path", to_string(c.simulate_path));
    put("analysis.n_max", std::to_string(c.analysis.n_max));
    num("analysis.tolerance_scale", c.analysis.tolerance_scale);
    put("analysis.allow_tighten", c.analysis.allow_tighten ? "true" : "false");
    for (const auto& [name, value] : c.analysis.tolerance) num(tolerance_prefix + name, value);
    put("output.dir", c.output_dir);
    return os.str();
}

TimeGrid sample_grid(const RunConfig& c) {
    const auto& integ = c.integration;
    const double h = integ.sample_interval();
    const double span = integ.t_end - integ.transient;
    const auto n = static_cast<std::size_t>(std::floor(span / h * (1.0 + 1e-12))) + 1;
    return TimeGrid{integ.transient, h, n};
}

EnsembleRun ensemble_run(const RunConfig& c) {
    EnsembleRun run;
    run.params = c.oscillator;
    run.band = c.band;
    run.units = c.units;
    run.master_seed = c.ensemble.master_seed;
    run.n_members = c.ensemble.n_members;
    run.path = c.simulate_path;
    run.integration.dt = c.integration.dt;
    run.integration.t_end = c.integration.t_end;
    run.integration.transient = c.integration.transient;
    run.integration.record_stride = c.integration.record_stride;
    run.grid = sample_grid(c);
    return run;
}

} // namespace sedres
