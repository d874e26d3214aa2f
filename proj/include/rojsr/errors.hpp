#pragma once

#include <stdexcept>
#include <string>

namespace rojsr {

/// Matrix is not square or contains non-finite entries.
struct InvalidMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Second singular value (or reconstruction residual) above the rank-one threshold.
struct RankTooHigh : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zero matrix has no rank-one factorization.
struct ZeroMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularTransform : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computed quantity left the representable double range.
struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration would exceed the configured product budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Brute-force bounds and the exact value disagree; one of the two engines is wrong.
struct ViolatedSandwich : std::runtime_error {
    double lower;
    double exact;
    double upper;
    ViolatedSandwich(const std::string& msg, double lo, double ex, double up)
        : std::runtime_error(msg), lower(lo), exact(ex), upper(up) {}
};

/// Input document failed validation; `field` names the offending element.
struct ParseError : std::runtime_error {
    std::string field;
    ParseError(std::string f, const std::string& msg)
        : std::runtime_error(msg), field(std::move(f)) {}
};

} // namespace rojsr
