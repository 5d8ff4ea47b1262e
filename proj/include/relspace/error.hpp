#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relspace {

enum class ErrorCode {
    MissingColumn,
    ParseError,
    NegativeValue,
    DuplicateKey,
    EmptyRowOrColumn,
    BadGroupId,
    YearNotFound,
    DegenerateTotals,
    RegistryMismatch,
    NonIncreasingYears,
    TooFewYears,
    ShapeMismatch,
    EmptyRcaMatrix,
    PeriodMismatch,
    EmptySample,
    MissingUpstream,
    BadFlag,
    Io,
};

std::string_view to_string(ErrorCode code);

// Validation failure raised anywhere in the pipeline. The CLI maps these to
// exit code 1; anything else escaping is an internal error.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace relspace
