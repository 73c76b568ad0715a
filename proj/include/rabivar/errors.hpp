// errors.hpp -- exception hierarchy shared by all rabivar modules.
#pragma once

#include <stdexcept>
#include <string>

namespace rabivar {

// Base class so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A dimension argument is non-positive or too small for the requested object.
struct InvalidDimension : Error {
    using Error::Error;
};

// Two operands live in incompatible spaces.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A truncated expansion misses too much weight to be trusted.
struct TruncationLoss : Error {
    using Error::Error;
};

// A state normalization factor is numerically zero.
struct VanishingNorm : Error {
    using Error::Error;
};

// Perturbative treatment breaks down at omega_q == omega_c.
struct Resonance : Error {
    using Error::Error;
};

// Parameters lie outside the regime where a formula is meaningful.
struct InvalidRegime : Error {
    using Error::Error;
};

// A matrix handed to a Hermitian solver is not Hermitian.
struct NonHermitian : Error {
    using Error::Error;
};

// An iterative procedure exhausted its escalation budget.
struct ConvergenceFailure : Error {
    using Error::Error;
};

// Every candidate in an optimizer population evaluated as unusable.
struct DegenerateObjective : Error {
    using Error::Error;
};

// A requested inverse mapping has no solution for the given inputs.
struct OutOfRange : Error {
    using Error::Error;
};

}  // namespace rabivar
