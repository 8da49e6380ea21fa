#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubapprox {

enum class ErrorKind {
    SingularChange,
    ZeroInput,
    DimensionMismatch,
    ParseError,
    PointNotOnX,
    SingularAtP,
    WorseThanNode,
    HypothesisFailure,
    PointNotOnCurve,
    PointOnLine,
    NoQuadraticPointFound,
    EmptyLocalQuadric,
    BranchNotInKv,
    NoApproximants,
    InvalidArgument,
    Overflow,
};

std::string_view to_string(ErrorKind kind);

/// Domain failure carrying a stable machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cubapprox
