#pragma once

#include <stdexcept>
#include <string>

namespace qent {

/// Base for everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (bad dimension, R out
/// of range, invalid Schmidt pair, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix data violates a density-matrix invariant. `invariant()` names it
/// ("hermiticity", "trace", "positivity", "finiteness").
class InvalidState : public Error {
public:
    explicit InvalidState(std::string invariant)
        : Error(invariant + " violated"), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

/// Malformed input text (state files, spectra on the command line).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Internal consistency failure: a quantity left its mathematically
/// guaranteed range by more than round-off.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace qent
