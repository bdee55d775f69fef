#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "awfn/point.hpp"

namespace awfn {

/// A distance function over points. The weighted reduction is written
/// against this concept; only the Euclidean instance ships.
template <class M>
concept Metric = requires(PointView a, PointView b) {
    { M::distance(a, b) } -> std::convertible_to<double>;
};

namespace detail {

inline double squared_distance_unchecked(PointView a, PointView b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

inline double dot_unchecked(PointView a, PointView b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_same_dimension(std::size_t a, std::size_t b);

}  // namespace detail

/// Euclidean norm of a - b. Throws on dimension mismatch.
double distance(PointView a, PointView b);

/// w_p * d(q, p). Throws on a nonpositive weight or dimension mismatch.
double weighted_distance(PointView q, PointView p, double w_p);

struct EuclideanMetric {
    static double distance(PointView a, PointView b) { return awfn::distance(a, b); }
};

static_assert(Metric<EuclideanMetric>);

/// Unit vector in R^D, norm 1 within 1e-9.
class Direction {
public:
    static constexpr double kNormTolerance = 1e-9;

    /// Checks that `u` is already unit length.
    explicit Direction(std::vector<double> u);

    /// Scales `v` to unit length. Throws if `v` is zero.
    static Direction normalized(std::vector<double> v);

    std::size_t dimension() const noexcept { return u_.size(); }
    PointView view() const noexcept { return u_; }
    Direction operator-() const;

private:
    struct Trusted {};
    Direction(std::vector<double> u, Trusted) : u_(std::move(u)) {}

    std::vector<double> u_;
};

/// max <u,s> - min <u,s> over s in P.
double directional_width(const PointSet& points, const Direction& u);

/// Directional width restricted to points[indices].
double directional_width(const PointSet& points, std::span<const std::size_t> indices,
                         const Direction& u);

}  // namespace awfn
