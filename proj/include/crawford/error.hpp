#pragma once

#include <stdexcept>
#include <string>

namespace crawford {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, bad space description, bad JSON payload.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
public:
    explicit DimensionMismatch(const std::string& what)
        : InputError("dimension mismatch: " + what) {}
};

class NotOnSphere : public InputError {
public:
    explicit NotOnSphere(double norm)
        : InputError("vector is not on the unit sphere (norm " + std::to_string(norm) + ")") {}
};

class NotUniformlyConvex : public InputError {
public:
    NotUniformlyConvex() : InputError("norm is not uniformly convex (p must lie in (1, inf))") {}
};

class OracleTooLarge : public InputError {
public:
    explicit OracleTooLarge(int dim)
        : InputError("grid oracle cannot enumerate dimension " + std::to_string(dim)) {}
};

/// A construction was asked for outside its domain (e.g. c(T) >= eps for the zero repair).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// Numerical failures: the engine could not certify what the caller asked for.
class NumericalError : public Error {
public:
    using Error::Error;
};

class AttainmentUnverified : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace crawford
