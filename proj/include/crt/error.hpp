#pragma once

#include <stdexcept>
#include <string>

namespace crt {

enum class ErrorKind {
    SpaceMismatch,
    DimensionMismatch,
    NonzeroConstantTerm,
    UnknownVariable,
    NotAUnit,
    SingularJacobian,
    NotSquare,
    NotASelfMap,
    RealityViolation,
    DegenerateCodirection,
    NormalizationFailure,
    ValidationFailure,
    SyntaxError,
    UnknownIdentifier,
    UnresolvedImplicit,
    Usage,
};

const char* error_kind_name(ErrorKind k);

/// Exception type used for every precondition violation in the library.
/// Mathematical verdicts (a failed identity, a non-transversal map) are
/// never thrown; they are returned as report data.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::SpaceMismatch: return "SpaceMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::SingularJacobian: return "SingularJacobian";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotASelfMap: return "NotASelfMap";
        case ErrorKind::RealityViolation: return "RealityViolation";
        case ErrorKind::DegenerateCodirection: return "DegenerateCodirection";
        case ErrorKind::NormalizationFailure: return "NormalizationFailure";
        case ErrorKind::ValidationFailure: return "ValidationFailure";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::UnresolvedImplicit: return "UnresolvedImplicit";
        case ErrorKind::Usage: return "Usage";
    }
    return "Error";
}

} // namespace crt
