#pragma once

#include <stdexcept>
#include <string>

namespace qcurve {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression-language error; carries the byte offset of the offending token.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

/// Division by a series with vanishing constant term, sqrt of a non-positive
/// constant term, and similar singular evaluations.
struct SingularEvalError : Error {
    using Error::Error;
};

/// Requested derivative order exceeds the truncation order of a jet.
struct OrderError : Error {
    using Error::Error;
};

/// Frenet frame undefined: vanishing curvature / torsion at the sample point.
struct DegenerateFrameError : Error {
    using Error::Error;
};

/// Curve is not arc-length parameterized where the operation requires it.
struct NotUnitSpeedError : Error {
    using Error::Error;
};

/// Operation precondition violated (wrong bitorsion regime, irregular curve,
/// unusable grid, rejected certificate).
struct PreconditionError : Error {
    using Error::Error;
};

/// Unknown catalog entry or malformed catalog argument list.
struct LookupError : Error {
    using Error::Error;
};

/// File or JSON input problems.
struct InputError : Error {
    using Error::Error;
};

}  // namespace qcurve
