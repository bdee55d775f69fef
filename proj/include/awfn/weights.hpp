#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "awfn/point.hpp"

namespace awfn {

struct NormalizedWeights {
    std::vector<double> weights;
    std::size_t p1_index = 0;
};

/// Divides every weight by the maximum. p1 is the lowest index attaining it.
NormalizedWeights normalize_weights(std::span<const double> raw);

/// Points with weights in (0, 1] and a designated unit-weight point p1.
class WeightedPointSet {
public:
    WeightedPointSet() = default;

    /// Takes raw positive weights and normalizes them.
    static WeightedPointSet from_raw(PointSet points, std::span<const double> raw_weights);

    /// Every point gets weight 1; p1 is index 0.
    static WeightedPointSet unit(PointSet points);

    const PointSet& points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::size_t p1_index() const noexcept { return p1_index_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dimension() const noexcept { return points_.dimension(); }

private:
    PointSet points_;
    std::vector<double> weights_;
    std::size_t p1_index_ = 0;
};

}  // namespace awfn
