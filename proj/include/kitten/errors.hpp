#pragma once

#include <stdexcept>
#include <string>

namespace kitten {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration; `path()` names the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Measured calibration inputs that cannot be mapped to model parameters.
class CalibrationError : public Error {
public:
    using Error::Error;
};

/// Failures of the numerical pipeline (exit code 2 at the CLI).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The requested herald has zero probability under the model.
class ImpossibleHerald : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The Fock cutoff cannot hold the state to the required accuracy.
class TruncationOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace kitten
