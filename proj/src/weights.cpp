#include "awfn/weights.hpp"

#include <cmath>
#include <string>

#include "awfn/error.hpp"

namespace awfn {

NormalizedWeights normalize_weights(std::span<const double> raw) {
    if (raw.empty()) throw Error(ErrorCode::EmptyInput, "no weights");
    NormalizedWeights out;
    double max_w = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double w = raw[i];
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::InvalidWeight,
                        "weight at index " + std::to_string(i) + " must be positive and finite");
        }
        if (w > max_w) {
            max_w = w;
            out.p1_index = i;
        }
    }
    out.weights.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        // the maximum itself maps to exactly 1, never to a rounded neighbour
        out.weights.push_back(raw[i] == max_w ? 1.0 : raw[i] / max_w);
    }
    return out;
}

WeightedPointSet WeightedPointSet::from_raw(PointSet points, std::span<const double> raw_weights) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points");
    if (points.size() != raw_weights.size()) {
        throw Error(ErrorCode::DimensionMismatch, "point and weight counts differ");
    }
    auto normalized = normalize_weights(raw_weights);
    WeightedPointSet out;
    out.points_ = std::move(points);
    out.weights_ = std::move(normalized.weights);
    out.p1_index_ = normalized.p1_index;
    return out;
}

WeightedPointSet WeightedPointSet::unit(PointSet points) {
    const std::vector<double> ones(points.size(), 1.0);
    return from_raw(std::move(points), ones);
}

}  // namespace awfn
