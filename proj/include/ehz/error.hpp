#pragma once

#include <stdexcept>
#include <string>

namespace ehz {

enum class ErrorKind {
    DegenerateInput,
    OriginNotInterior,
    NotOnBoundary,
    NoFeasibleTriple,
    QNotTrapezoid,
    ParamOutOfRange,
    TNotInMinusJDelta,
    TrapezoidCase,
    NotTrapezoidParams,
    SingularMatrix,
    TNotOnEdge,
    NonRegularState,
    RayExitsImmediately,
    CountMismatch,
    ParseError,
    AssertionFailed,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::OriginNotInterior: return "OriginNotInterior";
        case ErrorKind::NotOnBoundary: return "NotOnBoundary";
        case ErrorKind::NoFeasibleTriple: return "NoFeasibleTriple";
        case ErrorKind::QNotTrapezoid: return "QNotTrapezoid";
        case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
        case ErrorKind::TNotInMinusJDelta: return "TNotInMinusJDelta";
        case ErrorKind::TrapezoidCase: return "TrapezoidCase";
        case ErrorKind::NotTrapezoidParams: return "NotTrapezoidParams";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::TNotOnEdge: return "TNotOnEdge";
        case ErrorKind::NonRegularState: return "NonRegularState";
        case ErrorKind::RayExitsImmediately: return "RayExitsImmediately";
        case ErrorKind::CountMismatch: return "CountMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::AssertionFailed: return "AssertionFailed";
    }
    return "Unknown";
}

}  // namespace ehz
