#include "awfn/point.hpp"

#include <cmath>
#include <string>

#include "awfn/error.hpp"

namespace awfn {
namespace {

void require_finite(std::span<const double> coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) throw Error(ErrorCode::OutOfRange, "non-finite coordinate");
    }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorCode::DimensionMismatch, "point needs at least one coordinate");
    require_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point::Point(PointView coords) : Point(std::vector<double>(coords.begin(), coords.end())) {}

PointSet::PointSet(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 1");
}

PointSet::PointSet(std::size_t dimension, std::vector<double> flat_coords)
    : dimension_(dimension), coords_(std::move(flat_coords)) {
    if (dimension == 0) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 1");
    if (coords_.size() % dimension != 0) {
        throw Error(ErrorCode::DimensionMismatch, "coordinate count is not a multiple of the dimension");
    }
    require_finite(coords_);
}

PointSet::PointSet(std::initializer_list<Point> points)
    : PointSet(from_points(std::span<const Point>(points.begin(), points.size()))) {}

PointSet PointSet::from_points(std::span<const Point> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points");
    PointSet out(points.front().dimension());
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.view());
    return out;
}

void PointSet::push_back(PointView p) {
    if (p.size() != dimension_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected dimension " + std::to_string(dimension_) + ", got " + std::to_string(p.size()));
    }
    require_finite(p);
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    PointSet out(dimension_);
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        const auto p = (*this)[i];
        out.coords_.insert(out.coords_.end(), p.begin(), p.end());
    }
    return out;
}

}  // namespace awfn
