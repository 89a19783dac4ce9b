#pragma once

#include <stdexcept>
#include <string>

namespace semnet {

// Invalid configuration or usage (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver failed to reach the requested tolerance (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual_achieved)
        : std::runtime_error(what), residual(residual_achieved) {}

    double residual;
};

}  // namespace semnet
