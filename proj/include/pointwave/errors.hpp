#pragma once

#include <stdexcept>
#include <string>

namespace pointwave {

// Error taxonomy shared by every module.  Domain errors are precondition
// violations, range errors are representable-magnitude failures, truncation
// errors mean an iteration budget ran out before the requested tolerance.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

struct TruncationError : Error {
    TruncationError(const std::string& msg, double last_term_magnitude)
        : Error(msg), last_term(last_term_magnitude) {}
    // magnitude of the last term examined before giving up
    double last_term;
};

// Raised when a self-check (quadrature doubling, boundary monitor) detects
// that a computed answer cannot be trusted at the requested tolerance.
struct AccuracyError : Error {
    explicit AccuracyError(const std::string& msg) : Error(msg) {}
};

} // namespace pointwave
