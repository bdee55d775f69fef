#include "awfn/weighted_index.hpp"

#include <cmath>
#include <limits>

namespace awfn {

template class BasicWeightedAfnIndex<UnweightedAfnIndex>;

double bucket_upper_bound(int level, double epsilon) {
    return (epsilon / 2.0) * std::pow(1.0 + epsilon / 2.0, level);
}

int bucket_index(double weight, double epsilon) {
    // the level formula itself stays meaningful at eps = 1
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1]");
    if (!(weight >= epsilon / 2.0 && weight <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "bucketed weights must lie in [eps/2, 1]");
    }
    int level = static_cast<int>(std::ceil(std::log(weight / (epsilon / 2.0)) / std::log1p(epsilon / 2.0)));
    level = std::max(level, 0);
    // the logarithm can land one off in either direction
    while (level > 0 && weight <= bucket_upper_bound(level - 1, epsilon)) --level;
    while (weight > bucket_upper_bound(level, epsilon)) ++level;
    return level;
}

std::size_t bucket_count_ceiling(double epsilon) {
    require_epsilon(epsilon);
    return static_cast<std::size_t>(std::ceil((0.5 + 2.0 / epsilon) * std::log(2.0 / epsilon))) + 1;
}

ParedFarList::ParedFarList(std::vector<Entry> entries, PointSet points, std::vector<double> weights,
                           std::size_t source_size)
    : entries_(std::move(entries)), points_(std::move(points)), weights_(std::move(weights)),
      source_size_(source_size) {
    if (points_.size() != entries_.size() || weights_.size() != entries_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "pared list columns differ in length");
    }
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].distance < entries_[i - 1].distance ||
            entries_[i].weighted_distance >= entries_[i - 1].weighted_distance) {
            throw Error(ErrorCode::OutOfRange, "pared list is not a staircase");
        }
    }
}

ParedFarList ParedFarList::pare(const WeightedPointSet& set, std::vector<Entry> sorted, std::size_t source_size) {
    // keep x iff d_w(p1, x) > d_w(p1, y) for every y after x
    std::vector<Entry> kept;
    double running = -std::numeric_limits<double>::infinity();
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        if (it->weighted_distance > running) {
            running = it->weighted_distance;
            kept.push_back(*it);
        }
    }
    std::reverse(kept.begin(), kept.end());

    PointSet points(set.dimension());
    points.reserve(kept.size());
    std::vector<double> weights;
    weights.reserve(kept.size());
    for (const auto& e : kept) {
        points.push_back(set.points()[e.index]);
        weights.push_back(set.weight(e.index));
    }
    return ParedFarList(std::move(kept), std::move(points), std::move(weights), source_size);
}

std::optional<std::size_t> ParedFarList::first_at_least(double threshold) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), threshold,
                                     [](const Entry& e, double t) { return e.distance < t; });
    if (it == entries_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
}

Neighbor brute_force_weighted(const WeightedPointSet& set, PointView q) {
    if (set.size() == 0) throw Error(ErrorCode::EmptyInput, "farthest point of an empty set");
    detail::require_same_dimension(set.dimension(), q.size());
    Neighbor best{0, -1.0};
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double dw = set.weight(i) * std::sqrt(detail::squared_distance_unchecked(q, set.points()[i]));
        if (dw > best.distance) best = {i, dw};
    }
    return best;
}

}  // namespace awfn
