#pragma once

#include <stdexcept>
#include <string>

namespace omabench {

/// A parameter violates its documented range (non-positive length, band above Nyquist, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data has the wrong shape or content (channel mismatch, empty record, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a formula (log of zero, zero vector in MAC).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A factorization or root search failed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The mesh leaves no free vertical translation to measure.
class NoChannelsError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

}  // namespace omabench
