#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "awfn/geometry.hpp"
#include "awfn/point.hpp"

namespace awfn {

/// A point of the input set together with its (possibly weighted) distance
/// to a query.
struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;

    bool operator==(const Neighbor&) const = default;
};

/// Subset K of P with (1 - eps) w(u, P) <= w(u, K) for every unit u.
class EpsilonKernel {
public:
    EpsilonKernel(double epsilon, std::vector<std::size_t> indices, std::size_t budget,
                  std::size_t affine_dimension);

    double epsilon() const noexcept { return epsilon_; }
    /// Ascending indices into the source point set.
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    /// Number of sphere grid sites for this input; K = P when n <= budget.
    std::size_t budget() const noexcept { return budget_; }
    /// Dimension of the affine hull of the input.
    std::size_t affine_dimension() const noexcept { return affine_dimension_; }

private:
    double epsilon_;
    std::vector<std::size_t> indices_;
    std::size_t budget_;
    std::size_t affine_dimension_;
};

/// Builds an eps-kernel of `points`.
///
/// The set is mapped affinely so that it sits inside the unit ball and
/// contains a ball of radius `a` around the origin. Sites are spread over
/// the sphere of radius 2 so every sphere point is within
/// delta = sqrt(0.9 eps a) of one, and each site contributes its nearest
/// input point. A nearest point to a site lies in the ball through the
/// extreme point, which dips at most delta^2 / (2 (1 - delta)) below the
/// supporting hyperplane, so each directional width loses at most
/// eps * 2a * 0.9. In the plane only convex hull vertices are candidates.
///
/// Throws InvalidEpsilon unless 0 < eps < 1 and EmptyInput on an empty set.
EpsilonKernel build_kernel(const PointSet& points, double epsilon);

/// Kernel of points[members]. Returned indices refer to `points`.
EpsilonKernel build_kernel(const PointSet& points, std::span<const std::size_t> members, double epsilon);

/// Exact farthest point by linear scan, lowest index on ties.
Neighbor brute_force_farthest(const PointSet& points, PointView q);

/// Unweighted approximate farthest neighbour index: a sequential scan of an
/// eps-kernel.
class UnweightedAfnIndex {
public:
    using metric_type = EuclideanMetric;

    static UnweightedAfnIndex build(const PointSet& points, double epsilon);
    static UnweightedAfnIndex build(const PointSet& points, std::span<const std::size_t> members,
                                    double epsilon);

    /// Reassembles an index from stored parts (used by deserialization).
    UnweightedAfnIndex(double epsilon, std::vector<std::size_t> kernel_indices, PointSet kernel_points);

    /// Farthest kernel point from q; d(q, r) >= (1 - eps) max_p d(q, p).
    Neighbor query(PointView q) const;

    double epsilon() const noexcept { return epsilon_; }
    std::size_t dimension() const noexcept { return kernel_points_.dimension(); }
    std::span<const std::size_t> kernel_indices() const noexcept { return kernel_indices_; }
    const PointSet& kernel_points() const noexcept { return kernel_points_; }

    bool operator==(const UnweightedAfnIndex&) const = default;

private:
    double epsilon_;
    std::vector<std::size_t> kernel_indices_;
    PointSet kernel_points_;
};

inline Neighbor afn_query(const UnweightedAfnIndex& index, PointView q) { return index.query(q); }

/// Throws InvalidEpsilon unless 0 < eps < 1.
void require_epsilon(double epsilon);

}  // namespace awfn
