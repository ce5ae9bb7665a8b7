#pragma once

#include <stdexcept>
#include <string>

namespace catome {

// Base for everything this library throws. The CLI maps subclasses onto
// stable exit codes, so new error kinds should derive from one of these.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument shapes/dimensions (vector length mismatch, non-divisible
// grid dims, out-of-range parameters).
struct ShapeError : Error {
    using Error::Error;
};
struct DimensionError : ShapeError {
    using ShapeError::ShapeError;
};
struct BoundsError : ShapeError {
    using ShapeError::ShapeError;
};
struct DomainError : Error {
    using Error::Error;
};

// Config file / schedule-name problems. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// Runtime failures inside a pipeline run. CLI exit code 3.
struct PlanMismatchError : Error {
    using Error::Error;
};
struct NumericError : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};
struct IncompleteTraceError : Error {
    using Error::Error;
};
struct DegenerateReferenceError : Error {
    using Error::Error;
};

}  // namespace catome
