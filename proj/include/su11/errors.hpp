#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace su11 {

enum class ErrorCode {
    InvalidArgument,
    InvalidAmplitude,
    TailTooLarge,
    BranchMismatch,
    DegenerateState,
    TruncationLeak,
    IndeterminatePoint,
    ZeroGain,
    NonpositiveVariance,
    InfeasibleBudget,
    NonpositivePhotons,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the sweep driver in particular) can report it as data.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace su11
