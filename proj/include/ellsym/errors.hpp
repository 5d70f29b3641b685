#pragma once

#include <stdexcept>
#include <string>

namespace ellsym {

// Bad user input: malformed config, invalid parameters, unsupported family.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent data files.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown: non-convergence, ill-conditioning, divergent moments.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ellsym
