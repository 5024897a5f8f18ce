#pragma once

#include <stdexcept>
#include <string>

namespace normgeo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable category used in CLI diagnostics.
    virtual const char* kind() const noexcept { return "error"; }
};

/// A parameter lies outside its admissible range (p < 1, lambda outside (1, sqrt 2), ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_argument"; }
};

class DimensionMismatch : public InvalidArgument {
public:
    DimensionMismatch(std::size_t expected, std::size_t got);
    const char* kind() const noexcept override { return "dimension_mismatch"; }
};

/// The operation is undefined for this norm (e.g. a representer for a non-smooth norm).
class Unsupported : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unsupported"; }
};

/// Non-finite intermediate values or an iteration that failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical_error"; }
};

}  // namespace normgeo
