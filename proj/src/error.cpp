#include "cubapprox/error.hpp"

namespace cubapprox {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SingularChange: return "SingularChange";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::PointNotOnX: return "PointNotOnX";
        case ErrorKind::SingularAtP: return "SingularAtP";
        case ErrorKind::WorseThanNode: return "WorseThanNode";
        case ErrorKind::HypothesisFailure: return "HypothesisFailure";
        case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
        case ErrorKind::PointOnLine: return "PointOnLine";
        case ErrorKind::NoQuadraticPointFound: return "NoQuadraticPointFound";
        case ErrorKind::EmptyLocalQuadric: return "EmptyLocalQuadric";
        case ErrorKind::BranchNotInKv: return "BranchNotInKv";
        case ErrorKind::NoApproximants: return "NoApproximants";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

}  // namespace cubapprox
