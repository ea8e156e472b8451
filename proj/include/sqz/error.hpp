#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqz {

enum class ErrorKind {
    InvalidParams,
    UnphysicalCoefficients,
    StepFailure,
    FitDegenerate,
    IllConditioned,
    OrthogonalSelection,
    OutOfWindow,
    ResourceLimit,
    UndefinedAngle,
    SingularDenominator,
    TangentSingularity,
    DivisionByZero,
    EmptyGrid,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind()` lets callers
// (the CLI, the sweep) classify it without parsing the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::UnphysicalCoefficients: return "unphysical-coefficients";
    case ErrorKind::StepFailure: return "step-failure";
    case ErrorKind::FitDegenerate: return "fit-degenerate";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::OrthogonalSelection: return "orthogonal-selection";
    case ErrorKind::OutOfWindow: return "out-of-window";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::UndefinedAngle: return "undefined-angle";
    case ErrorKind::SingularDenominator: return "singular-denominator";
    case ErrorKind::TangentSingularity: return "tangent-singularity";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::EmptyGrid: return "empty-grid";
    }
    return "unknown";
}

} // namespace sqz
