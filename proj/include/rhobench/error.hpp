#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhobench
{
    enum class ErrorCode
    {
        UnsupportedFunction,
        InvalidDimension,
        DimensionMismatch,
        NonFiniteInput,
        InvalidPlateauSize,
        BudgetExhausted,
        NotDiscretized,
        UnsupportedDimension,
        BudgetTooSmall,
        InvalidDeviation,
        InvalidMargin,
        MarginRequiresDiscretization,
        DegenerateMarginal,
        EmptyGroup,
        ConfigSyntax,
        ConfigInvalid,
        IoError,
    };

    constexpr std::string_view to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::UnsupportedFunction: return "UnsupportedFunction";
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::InvalidPlateauSize: return "InvalidPlateauSize";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::NotDiscretized: return "NotDiscretized";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
        case ErrorCode::InvalidDeviation: return "InvalidDeviation";
        case ErrorCode::InvalidMargin: return "InvalidMargin";
        case ErrorCode::MarginRequiresDiscretization: return "MarginRequiresDiscretization";
        case ErrorCode::DegenerateMarginal: return "DegenerateMarginal";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::ConfigSyntax: return "ConfigSyntax";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::IoError: return "IoError";
        }
        return "Unknown";
    }

    /// Every failure raised by the library carries one of the codes above.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
        {
        }

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };
}
