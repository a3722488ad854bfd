#pragma once

#include <stdexcept>
#include <string>

namespace kdv {

/// Base class for violations of mathematical preconditions. The CLI maps
/// these to exit code 3, while I/O and parse problems map to exit code 2.
struct MathDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotExactError : MathDomainError {
    explicit NotExactError(const std::string& what)
        : MathDomainError("not an exact x-derivative: " + what) {}
};

struct MissingSymbolError : MathDomainError {
    explicit MissingSymbolError(const std::string& sym)
        : MathDomainError("no value supplied for symbol " + sym) {}
};

struct GenusMismatchError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct IndexOutOfRangeError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct ConstructionFailedError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct ZeroScaleError : MathDomainError {
    ZeroScaleError() : MathDomainError("rescaling factor must be nonzero") {}
};

struct PoleAtZeroError : MathDomainError {
    PoleAtZeroError() : MathDomainError("mu(xi) has a pole at xi = 0") {}
};

struct DegenerateLeadingError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct RepeatedRootsError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct PointOffCurveError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct ZeroXiError : MathDomainError {
    ZeroXiError() : MathDomainError("divisor point with xi = 0") {}
};

struct NotSymmetricError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct NonVanishingNumeratorError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct StepFailureError : MathDomainError {
    double last_good = 0.0;
    StepFailureError(const std::string& what, double t)
        : MathDomainError(what), last_good(t) {}
};

struct ZeroDenominatorError : MathDomainError {
    double location = 0.0;
    ZeroDenominatorError(const std::string& what, double t)
        : MathDomainError(what), location(t) {}
};

struct OffCurveError : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct PathInconsistencyError : MathDomainError {
    using MathDomainError::MathDomainError;
};

}  // namespace kdv
