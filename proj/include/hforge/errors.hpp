#pragma once

#include <stdexcept>
#include <string>

namespace hforge {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct BasePointMismatch : Error {
    using Error::Error;
};
struct DegenerateSeries : Error {
    using Error::Error;
};
struct OutsideRadius : Error {
    using Error::Error;
};
struct PoleAtBasePoint : Error {
    using Error::Error;
};
struct PoleEvaluation : Error {
    using Error::Error;
};
struct TransformSingular : Error {
    using Error::Error;
};
struct DependencyConeViolation : Error {
    using Error::Error;
};
struct MissingConstants : Error {
    using Error::Error;
};
struct ClosureRequired : Error {
    using Error::Error;
};
struct WrongDirection : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

/// Two internally redundant computations disagreed.  Always a bug or a
/// violated precondition, never a recoverable condition.
struct InternalInconsistency : Error {
    using Error::Error;
};

/// Exact-scalar arithmetic attempted to add values carrying different
/// powers of the tagged transcendental unit.
struct MixedUnitPowers : Error {
    using Error::Error;
};

}  // namespace hforge
