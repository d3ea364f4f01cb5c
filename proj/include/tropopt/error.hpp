#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropopt {

enum class ErrorCode {
    InversionOfZero,
    InvalidValue,
    ShapeMismatch,
    NotSquare,
    AllZeroMatrix,
    ZeroVector,
    ZeroColumn,
    NotRowRegular,
    NotColumnRegular,
    NotRegularMatrix,
    NotRegularVector,
    SpectralConditionViolated,
    InfeasiblePrecedence,
    InfeasibleDeadline,
    CoefficientOutOfBound,
    EnumerationBudgetExceeded,
    UnsupportedDimension,
    ParseError,
    ValidationError,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AllZeroMatrix: return "AllZeroMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::NotRowRegular: return "NotRowRegular";
    case ErrorCode::NotColumnRegular: return "NotColumnRegular";
    case ErrorCode::NotRegularMatrix: return "NotRegularMatrix";
    case ErrorCode::NotRegularVector: return "NotRegularVector";
    case ErrorCode::SpectralConditionViolated: return "SpectralConditionViolated";
    case ErrorCode::InfeasiblePrecedence: return "InfeasiblePrecedence";
    case ErrorCode::InfeasibleDeadline: return "InfeasibleDeadline";
    case ErrorCode::CoefficientOutOfBound: return "CoefficientOutOfBound";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tropopt
