#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

// Invalid input: bad parameter values, directions outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that could not meet its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedPhaseError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace biphoton
