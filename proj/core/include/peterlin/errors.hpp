#pragma once

#include <stdexcept>
#include <string>

namespace peterlin {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar or structured parameter violates its stated constraints.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Field dimensions do not match the grid or each other.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Configuration file rejected. Carries the 1-based line number when the
/// offending line is known, 0 for file-level problems (e.g. missing keys).
class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A time step was rejected because the advective CFL number exceeded 0.5.
class CflError : public Error {
public:
    explicit CflError(double cfl)
        : Error("time step rejected: CFL number " + std::to_string(cfl) + " > 0.5"),
          cfl_(cfl) {}
    double cfl() const noexcept { return cfl_; }

private:
    double cfl_;
};

/// Non-finite values or loss of required positivity during time stepping.
class BlowupError : public Error {
public:
    BlowupError(const std::string& what, long step = -1, long cell = -1)
        : Error(what), step_(step), cell_(cell) {}
    long step() const noexcept { return step_; }
    long cell() const noexcept { return cell_; }
    BlowupError with_step(long step) const { return BlowupError(what(), step, cell_); }

private:
    long step_;
    long cell_;
};

/// Initial data cannot be represented in the weighted Hermite basis.
class RepresentabilityError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written, or has an invalid format.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace peterlin
