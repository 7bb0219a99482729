#pragma once

#include <stdexcept>
#include <string>

namespace liftoff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A tabulated quantity was queried outside its sample range.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of an operation (e.g. R > r_max).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The implicit system could not be solved (zero or non-finite pivot).
class SolverError : public Error {
public:
    using Error::Error;
};

/// A non-finite value appeared during time stepping.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long step) : Error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// An operation was called on inputs that violate its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A scenario document failed validation. `key_path()` names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string key_path, const std::string& message)
        : Error(key_path.empty() ? message : key_path + ": " + message),
          key_path_(std::move(key_path)) {}
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

}  // namespace liftoff
