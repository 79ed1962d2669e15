#pragma once

#include <stdexcept>
#include <string>

namespace firasym {

// Bad user-supplied configuration (family names, hyper-parameter domains,
// N <= n, ...). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated call contract (insufficient warmup, out-of-range index).
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure during estimation (rank deficiency, singular kernel).
struct EstimationError : std::runtime_error {
    explicit EstimationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure. Maps to CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace firasym
