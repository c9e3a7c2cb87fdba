#include "su11/errors.hpp"

namespace su11 {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidAmplitude: return "InvalidAmplitude";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::TruncationLeak: return "TruncationLeak";
    case ErrorCode::IndeterminatePoint: return "IndeterminatePoint";
    case ErrorCode::ZeroGain: return "ZeroGain";
    case ErrorCode::NonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::InfeasibleBudget: return "InfeasibleBudget";
    case ErrorCode::NonpositivePhotons: return "NonpositivePhotons";
    }
    return "Unknown";
}

}  // namespace su11
