#pragma once

#include <stdexcept>
#include <string>

namespace painleve {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: maps to CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// sigma on (or within tolerance of) the half-integer lattice.
class DegenerateParameterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Failure during evaluation: maps to CLI exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class PoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DenominatorZeroError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace painleve
