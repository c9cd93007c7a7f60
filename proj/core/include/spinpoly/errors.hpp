#ifndef SPINPOLY_ERRORS_HPP
#define SPINPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinpoly {

// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A (g, n) pair or reduced weight signature that admits no trivalent graph.
struct InfeasibleSignature : Error {
    using Error::Error;
};

// build_named was asked for a graph it does not know.
struct UnknownName : Error {
    using Error::Error;
};

// A TrivalentGraph invariant does not hold.
struct InvariantViolation : Error {
    using Error::Error;
};

// A weight vector does not match the edge set it is applied to.
struct ShapeMismatch : Error {
    using Error::Error;
};

// Search exceeded its configured node budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Interiority was requested outside the regimes where strictness of the
// defining inequalities is known to characterize relative interior points.
struct UnsupportedRegime : Error {
    using Error::Error;
};

// The canonical all-twos weight lives at level 4; the caller's level does
// not divide it.
struct LevelMismatch : Error {
    using Error::Error;
};

// Operation preconditions not met (e.g. witness construction on g < 2).
struct NotApplicable : Error {
    using Error::Error;
};

// Numerator extraction from the truncated Hilbert series failed.
struct ExtractionFailed : Error {
    using Error::Error;
};

// A persisted memo store failed its checksum or version check.
struct CorruptStore : Error {
    using Error::Error;
};

// Two routes that must agree produced different answers.  This is a bug,
// not a user error, and is never caught internally.
struct IntegrityError : std::logic_error {
    explicit IntegrityError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace spinpoly

#endif
