#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace awfn {

enum class ErrorCode {
    DimensionMismatch,
    EmptyInput,
    InvalidWeight,
    InvalidEpsilon,
    OutOfRange,
    NotNormalized,
    DuplicatePoints,
    DegenerateInput,
    Parse,
    Io,
    NotConverged,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the dilation pipeline when two input points coincide.
class DuplicatePointsError : public Error {
public:
    DuplicatePointsError(std::size_t first, std::size_t second);

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// Raised when an iterative solver hits its step cap. The best iterate is
/// kept so callers that only need a good center can continue with it.
class NotConvergedError : public Error {
public:
    NotConvergedError(std::vector<double> best_center, double best_value, std::size_t steps);

    const std::vector<double>& best_center() const noexcept { return best_center_; }
    double best_value() const noexcept { return best_value_; }
    std::size_t steps() const noexcept { return steps_; }

private:
    std::vector<double> best_center_;
    double best_value_;
    std::size_t steps_;
};

}  // namespace awfn
