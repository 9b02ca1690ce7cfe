#pragma once

#include <stdexcept>
#include <string>

namespace mahler {

// Base class for all library errors. Split into "bad input" vs "computation
// could not be completed" so the CLI can map them to distinct exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent input (CLI exit code 2).
struct InputError : Error {
    using Error::Error;
};

// Computation failed despite valid input (CLI exit code 1).
struct ComputeError : Error {
    using Error::Error;
};

struct FieldMismatchError : InputError {
    FieldMismatchError() : InputError("operands lie in different quadratic fields") {}
    explicit FieldMismatchError(const std::string& what) : InputError(what) {}
};

struct DivByZeroError : ComputeError {
    DivByZeroError() : ComputeError("division by zero") {}
};

struct DomainError : InputError {
    using InputError::InputError;
};

struct InvalidOrderError : InputError {
    InvalidOrderError() : InputError("root of unity order must be positive") {}
};

struct PeriodMismatchError : InputError {
    using InputError::InputError;
};

struct ExactnessRequiredError : InputError {
    using InputError::InputError;
};

// A series denominator came too close to zero to certify any digits.
struct PoleCollisionError : ComputeError {
    long offending_h;
    explicit PoleCollisionError(long h)
        : ComputeError("series denominator vanishes (or is below resolution) at h = " +
                       std::to_string(h)),
          offending_h(h) {}
};

struct EmptySeriesError : ComputeError {
    EmptySeriesError() : ComputeError("all series terms were skipped") {}
};

struct UnknownCaseError : InputError {
    explicit UnknownCaseError(int id)
        : InputError("unknown identity case id " + std::to_string(id)) {}
};

struct NotApplicableError : InputError {
    using InputError::InputError;
};

struct InvalidHypothesesError : InputError {
    using InputError::InputError;
};

struct AmbiguousError : ComputeError {
    using ComputeError::ComputeError;
};

struct DegenerateBasisError : InputError {
    DegenerateBasisError() : InputError("lattice basis rows are linearly dependent") {}
};

struct PrecisionTooLowError : ComputeError {
    using ComputeError::ComputeError;
};

struct TooManyMonomialsError : InputError {
    using InputError::InputError;
};

// Numeric denominator (or divisor) could not be separated from zero at the
// working precision; exact zero would raise DivByZeroError instead.
struct ResolutionError : ComputeError {
    using ComputeError::ComputeError;
};

}  // namespace mahler
