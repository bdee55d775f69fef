#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "awfn/point.hpp"
#include "awfn/weights.hpp"

namespace awfn {

/// Contents of a point CSV file: header `x0,...,x{D-1}[,weight]`, one point
/// per row. Missing weights default to 1.
struct PointTable {
    PointSet points;
    std::vector<double> weights;
    bool has_weight_column = false;

    WeightedPointSet weighted() const { return WeightedPointSet::from_raw(points, weights); }
};

PointTable read_point_table(std::istream& in);
PointTable read_point_table(const std::filesystem::path& path);

/// Writes the header and rows. Pass empty `weights` to omit the weight column.
void write_point_table(std::ostream& out, const PointSet& points, std::span<const double> weights = {});

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Parses a comma-separated coordinate list such as "1.5,-2".
std::vector<double> parse_coordinates(const std::string& text);

}  // namespace awfn
