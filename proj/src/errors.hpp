#pragma once

#include <stdexcept>
#include <string>

namespace ivrepr {

// Scenario config unreadable or schema-invalid (CLI exit 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Solver breakdown, grid too narrow, bracket violation (CLI exit 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Verification ran to completion but a residual exceeds its tolerance
// (CLI exit 4).
class ToleranceError : public std::runtime_error {
public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ivrepr
