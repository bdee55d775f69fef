#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace awfn {

/// Read-only view of one point's coordinates.
using PointView = std::span<const double>;

/// An owning point in R^D. Coordinates are always finite.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);
    explicit Point(PointView coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    PointView view() const noexcept { return coords_; }
    operator PointView() const noexcept { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

/// Contiguous storage for n points sharing one dimension.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dimension);
    PointSet(std::size_t dimension, std::vector<double> flat_coords);
    PointSet(std::initializer_list<Point> points);

    static PointSet from_points(std::span<const Point> points);

    void push_back(PointView p);
    void reserve(std::size_t n) { coords_.reserve(n * dimension_); }

    std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
    bool empty() const noexcept { return coords_.empty(); }
    std::size_t dimension() const noexcept { return dimension_; }

    PointView operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * dimension_, dimension_};
    }
    Point point(std::size_t i) const { return Point((*this)[i]); }

    std::span<const double> flat() const noexcept { return coords_; }

    /// Copy of the points at the given indices, in that order.
    PointSet subset(std::span<const std::size_t> indices) const;

    bool operator==(const PointSet&) const = default;

private:
    std::size_t dimension_ = 0;
    std::vector<double> coords_;
};

}  // namespace awfn
