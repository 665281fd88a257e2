#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

// Evaluation requested exactly at a pole.
struct PoleError : Error {
    using Error::Error;
};

// A requested index/cutoff exceeds a table's built capacity.
struct CapacityError : Error {
    using Error::Error;
};

// A series or product failed its convergence test (signals a bug upstream).
struct NonconvergenceError : Error {
    using Error::Error;
};

// A result cannot be delivered at the promised accuracy.
struct AccuracyError : Error {
    using Error::Error;
};

// Zero counting could not be reconciled with the argument-principle estimate.
struct MissedZeroError : Error {
    using Error::Error;
};

// The zero table cannot cover the truncation window of a zero-sum.
struct WindowError : Error {
    using Error::Error;
};

// An ordinate expected to be in a zero table is absent.
struct ZeroNotFoundError : Error {
    using Error::Error;
};

// Two eigenangles coincide below the resolvable threshold.
struct DegenerateSampleError : Error {
    using Error::Error;
};

// An iteration (eigen-solver) exceeded its cap.
struct ConvergenceError : Error {
    using Error::Error;
};

// Malformed input file; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed input that violates a documented invariant.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace zetalab
