#pragma once

#include <stdexcept>
#include <string>

namespace altbase {

enum class ErrorCode {
    ParseError,
    MixedDiscriminants,
    DivisionByZero,
    BadDiscriminant,
    BetaNotGreaterThanOne,
    EmptyFactorList,
    PointOutOfRange,
    OrbitNotFinite,
    NoPositiveFixedPoint,
    NotCoprime,
    QNotLessThanP,
    TailNotConvergent,
    NonConvergence,
    Internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MixedDiscriminants: return "MixedDiscriminants";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::BadDiscriminant: return "BadDiscriminant";
        case ErrorCode::BetaNotGreaterThanOne: return "BetaNotGreaterThanOne";
        case ErrorCode::EmptyFactorList: return "EmptyFactorList";
        case ErrorCode::PointOutOfRange: return "PointOutOfRange";
        case ErrorCode::OrbitNotFinite: return "OrbitNotFinite";
        case ErrorCode::NoPositiveFixedPoint: return "NoPositiveFixedPoint";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::QNotLessThanP: return "QNotLessThanP";
        case ErrorCode::TailNotConvergent: return "TailNotConvergent";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace altbase
