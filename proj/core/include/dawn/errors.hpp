#pragma once

#include <stdexcept>
#include <string>

namespace dawn {

// Bad user-supplied configuration (thresholds out of range, missing files,
// inconsistent flags). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (duplicate ids, non-finite values,
// empty joins). CLI exit code 3.
class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside an estimation routine (solver non-convergence,
// degenerate pseudo-likelihood, empty mixture component). CLI exit code 4.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dawn
