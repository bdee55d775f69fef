#include "awfn/error.hpp"

namespace awfn {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::EmptyInput: return "empty input";
        case ErrorCode::InvalidWeight: return "invalid weight";
        case ErrorCode::InvalidEpsilon: return "invalid epsilon";
        case ErrorCode::OutOfRange: return "out of range";
        case ErrorCode::NotNormalized: return "weights not normalized";
        case ErrorCode::DuplicatePoints: return "duplicate points";
        case ErrorCode::DegenerateInput: return "degenerate input";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::NotConverged: return "not converged";
    }
    return "unknown error";
}

DuplicatePointsError::DuplicatePointsError(std::size_t first, std::size_t second)
    : Error(ErrorCode::DuplicatePoints,
            "points " + std::to_string(first) + " and " + std::to_string(second) + " coincide"),
      first_(first),
      second_(second) {}

NotConvergedError::NotConvergedError(std::vector<double> best_center, double best_value,
                                     std::size_t steps)
    : Error(ErrorCode::NotConverged,
            "solver did not converge within " + std::to_string(steps) + " steps"),
      best_center_(std::move(best_center)),
      best_value_(best_value),
      steps_(steps) {}

}  // namespace awfn
