#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lumen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (nonpositive temperature, empty interval, wavelength outside a range...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A ratio or normalisation has a vanishing denominator (black spectrum).
class ZeroSpectrumError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not defined for the given model.
class UnsupportedModelError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 means "whole stream".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a data invariant.
class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace lumen
