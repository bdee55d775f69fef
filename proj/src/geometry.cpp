#include "awfn/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "awfn/error.hpp"

namespace awfn {

namespace detail {

void require_same_dimension(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

}  // namespace detail

double distance(PointView a, PointView b) {
    detail::require_same_dimension(a.size(), b.size());
    return std::sqrt(detail::squared_distance_unchecked(a, b));
}

double weighted_distance(PointView q, PointView p, double w_p) {
    if (!(w_p > 0.0) || !std::isfinite(w_p)) {
        throw Error(ErrorCode::InvalidWeight, "weight must be positive and finite");
    }
    return w_p * distance(q, p);
}

Direction::Direction(std::vector<double> u) : u_(std::move(u)) {
    if (u_.empty()) throw Error(ErrorCode::DimensionMismatch, "direction needs at least one coordinate");
    const double norm = std::sqrt(detail::dot_unchecked(u_, u_));
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
        throw Error(ErrorCode::OutOfRange, "direction is not a unit vector");
    }
}

Direction Direction::normalized(std::vector<double> v) {
    if (v.empty()) throw Error(ErrorCode::DimensionMismatch, "direction needs at least one coordinate");
    const double norm = std::sqrt(detail::dot_unchecked(v, v));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::OutOfRange, "cannot normalize a zero or non-finite vector");
    }
    for (double& x : v) x /= norm;
    return Direction(std::move(v), Trusted{});
}

Direction Direction::operator-() const {
    std::vector<double> v = u_;
    for (double& x : v) x = -x;
    return Direction(std::move(v), Trusted{});
}

double directional_width(const PointSet& points, const Direction& u) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "directional width of an empty set");
    detail::require_same_dimension(points.dimension(), u.dimension());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double t = detail::dot_unchecked(u.view(), points[i]);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return hi - lo;
}

double directional_width(const PointSet& points, std::span<const std::size_t> indices,
                         const Direction& u) {
    if (indices.empty()) throw Error(ErrorCode::EmptyInput, "directional width of an empty set");
    detail::require_same_dimension(points.dimension(), u.dimension());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i : indices) {
        if (i >= points.size()) throw Error(ErrorCode::OutOfRange, "point index out of range");
        const double t = detail::dot_unchecked(u.view(), points[i]);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return hi - lo;
}

}  // namespace awfn
