#pragma once

#include <stdexcept>
#include <string>

namespace soclelab {

/// Base class of everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad JSON, non-prime p, reducible modulus, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A request for something the toolkit deliberately does not implement.
class OutOfScope : public InputError {
public:
    using InputError::InputError;
};

/// A documented precondition of an operation does not hold for the given object.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration cap was hit before the answer was known.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A proved statement failed on a concrete instance. By construction this is a bug.
class TheoremViolation : public Error {
public:
    TheoremViolation(const std::string& what, std::string witness = {})
        : Error(what), witness_(std::move(witness)) {}
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

}  // namespace soclelab
