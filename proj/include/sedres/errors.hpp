#pragma once

#include <stdexcept>
#include <string>

namespace sedres {

// Time-domain integration blew up (energy far above the equilibrium estimate).
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double dt) : std::runtime_error(what), dt_(dt) {}
    double dt() const noexcept { return dt_; }

private:
    double dt_;
};

// Adaptive quadrature failed to reach the requested tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Frequency grid does not cover the resonances it is asked to describe.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StationarityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration text could not be turned into a RunConfig.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, int line, const std::string& message)
        : std::runtime_error(format(key, line, message)), key_(key), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& message) {
        std::string out = "config";
        if (line > 0) out += " line " + std::to_string(line);
        if (!key.empty()) out += ", key '" + key + "'";
        return out + ": " + message;
    }

    std::string key_;
    int line_;
};

} // namespace sedres
