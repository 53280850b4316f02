#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confdual {

enum class ErrorKind {
    InvalidArgument,
    DegenerateInput,
    Cocircular,
    NotCocircular,
    NotOnCircle,
    NotOnSphere,
    PoleNotOnSphere,
    PlaneSigma,
    DegenerateTriangle,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Cocircular: return "Cocircular";
    case ErrorKind::NotCocircular: return "NotCocircular";
    case ErrorKind::NotOnCircle: return "NotOnCircle";
    case ErrorKind::NotOnSphere: return "NotOnSphere";
    case ErrorKind::PoleNotOnSphere: return "PoleNotOnSphere";
    case ErrorKind::PlaneSigma: return "PlaneSigma";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    }
    return "Unknown";
}

/// Raised by every geometric operation whose precondition fails.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace confdual
