#include "awfn/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "awfn/error.hpp"

namespace awfn {
namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad number '" +
                                          std::string(field) + "'");
    }
    return value;
}

}  // namespace

PointTable read_point_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw Error(ErrorCode::Parse, "missing header row");

    auto header = split(trim(line));
    PointTable table;
    table.has_weight_column = header.back() == "weight";
    const std::size_t dim = header.size() - (table.has_weight_column ? 1 : 0);
    if (dim == 0) throw Error(ErrorCode::Parse, "header names no coordinate columns");
    for (std::size_t i = 0; i < dim; ++i) {
        if (header[i] != "x" + std::to_string(i)) {
            throw Error(ErrorCode::Parse, "header column " + std::to_string(i) + " must be x" +
                                              std::to_string(i) + ", got '" + std::string(header[i]) + "'");
        }
    }

    table.points = PointSet(dim);
    std::vector<double> row(dim);
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto fields = split(text);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(header.size()) + " fields, got " +
                                              std::to_string(fields.size()));
        }
        for (std::size_t i = 0; i < dim; ++i) row[i] = parse_number(fields[i], line_no);
        double w = 1.0;
        if (table.has_weight_column) {
            w = parse_number(fields[dim], line_no);
            if (!(w > 0.0)) {
                throw Error(ErrorCode::InvalidWeight, "line " + std::to_string(line_no) + ": weight must be positive");
            }
        }
        table.points.push_back(row);
        table.weights.push_back(w);
    }
    if (table.points.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");
    return table;
}

PointTable read_point_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_point_table(in);
}

void write_point_table(std::ostream& out, const PointSet& points, std::span<const double> weights) {
    const bool weighted = !weights.empty();
    if (weighted && weights.size() != points.size()) {
        throw Error(ErrorCode::DimensionMismatch, "point and weight counts differ");
    }
    for (std::size_t i = 0; i < points.dimension(); ++i) {
        if (i) out << ',';
        out << 'x' << i;
    }
    if (weighted) out << ",weight";
    out << '\n';
    for (std::size_t r = 0; r < points.size(); ++r) {
        const auto p = points[r];
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ',';
            out << format_double(p[i]);
        }
        if (weighted) out << ',' << format_double(weights[r]);
        out << '\n';
    }
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<double> parse_coordinates(const std::string& text) {
    std::vector<double> coords;
    for (auto field : split(trim(text))) coords.push_back(parse_number(field, 1));
    return coords;
}

}  // namespace awfn
