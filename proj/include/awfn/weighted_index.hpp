#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "awfn/error.hpp"
#include "awfn/geometry.hpp"
#include "awfn/kernel.hpp"
#include "awfn/point.hpp"
#include "awfn/weights.hpp"

namespace awfn {

/// Any unweighted approximate farthest-neighbour structure the reduction can
/// sit on: built over a subset of a point set, queried for one neighbour.
template <class I>
concept UnweightedFarthestIndex =
    Metric<typename I::metric_type> &&
    requires(const I& index, const PointSet& points, std::span<const std::size_t> members, double eps,
             PointView q) {
        { I::build(points, members, eps) } -> std::same_as<I>;
        { index.query(q) } -> std::same_as<Neighbor>;
    };

static_assert(UnweightedFarthestIndex<UnweightedAfnIndex>);

/// Smallest i >= 0 with w <= (eps/2)(1 + eps/2)^i. Bucket i then covers
/// weights in ((eps/2)(1+eps/2)^(i-1), (eps/2)(1+eps/2)^i].
/// Throws OutOfRange unless eps/2 <= w <= 1.
int bucket_index(double weight, double epsilon);

/// Upper end (eps/2)(1 + eps/2)^i of bucket i.
double bucket_upper_bound(int level, double epsilon);

/// ceil((0.5 + 2/eps) ln(2/eps)) + 1, a bound on the number of buckets.
std::size_t bucket_count_ceiling(double epsilon);

/// Low-weight points sorted by distance from p1 with every point that some
/// farther point weight-dominates removed. Weighted distance from p1 is
/// strictly decreasing along the list.
class ParedFarList {
public:
    struct Entry {
        std::size_t index = 0;
        double distance = 0.0;           // d(p1, .)
        double weighted_distance = 0.0;  // w(.) d(p1, .)

        bool operator==(const Entry&) const = default;
    };

    ParedFarList() = default;
    ParedFarList(std::vector<Entry> entries, PointSet points, std::vector<double> weights,
                 std::size_t source_size);

    template <Metric M>
    static ParedFarList build(const WeightedPointSet& set, std::span<const std::size_t> low);

    std::span<const Entry> entries() const noexcept { return entries_; }
    const PointSet& points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    /// |S2| before paring.
    std::size_t source_size() const noexcept { return source_size_; }

    /// Position of the first entry with distance >= threshold.
    std::optional<std::size_t> first_at_least(double threshold) const;

    bool operator==(const ParedFarList&) const = default;

private:
    static ParedFarList pare(const WeightedPointSet& set, std::vector<Entry> sorted, std::size_t source_size);

    std::vector<Entry> entries_;
    PointSet points_;
    std::vector<double> weights_;
    std::size_t source_size_ = 0;
};

template <class Unweighted>
struct WeightBucket {
    int level = 0;
    std::vector<std::size_t> members;
    Unweighted index;

    bool operator==(const WeightBucket&) const = default;
};

/// The three candidates a weighted query compares. r1 is absent when S1 is
/// empty, r2 when no pared entry clears the radius 2 d(p1, q) / eps.
struct WeightedCandidates {
    std::optional<Neighbor> r1;
    std::optional<Neighbor> r2;
    Neighbor p1;
};

/// Approximate weighted farthest neighbour index built from any unweighted
/// one. Points with weight >= eps/2 are bucketed by weight and each bucket
/// gets an unweighted index at eps/2; the rest go into a ParedFarList.
template <UnweightedFarthestIndex Unweighted>
class BasicWeightedAfnIndex {
public:
    using metric_type = typename Unweighted::metric_type;
    using Bucket = WeightBucket<Unweighted>;

    struct Parts {
        double epsilon = 0.0;
        std::size_t point_count = 0;
        std::size_t p1_index = 0;
        Point p1;
        std::vector<double> weights;
        std::vector<Bucket> buckets;
        ParedFarList pared;

        bool operator==(const Parts&) const = default;
    };

    static BasicWeightedAfnIndex build(const WeightedPointSet& set, double epsilon) {
        require_epsilon(epsilon);
        if (set.size() == 0) throw Error(ErrorCode::EmptyInput, "weighted index over an empty set");
        require_normalized(set);

        Parts parts;
        parts.epsilon = epsilon;
        parts.point_count = set.size();
        parts.p1_index = set.p1_index();
        parts.p1 = set.points().point(set.p1_index());
        parts.weights.assign(set.weights().begin(), set.weights().end());

        const double threshold = epsilon / 2.0;
        std::map<int, std::vector<std::size_t>> by_level;
        std::vector<std::size_t> low;
        for (std::size_t i = 0; i < set.size(); ++i) {
            const double w = set.weight(i);
            if (w >= threshold) {
                by_level[bucket_index(w, epsilon)].push_back(i);
            } else {
                low.push_back(i);
            }
        }
        for (auto& [level, members] : by_level) {
            auto index = Unweighted::build(set.points(), members, threshold);
            parts.buckets.push_back(Bucket{level, std::move(members), std::move(index)});
        }
        parts.pared = ParedFarList::build<metric_type>(set, low);
        return BasicWeightedAfnIndex(std::move(parts));
    }

    explicit BasicWeightedAfnIndex(Parts parts) : parts_(std::move(parts)) {
        require_epsilon(parts_.epsilon);
        if (parts_.point_count == 0 || parts_.weights.size() != parts_.point_count ||
            parts_.p1_index >= parts_.point_count || parts_.weights[parts_.p1_index] != 1.0) {
            throw Error(ErrorCode::NotNormalized, "inconsistent weighted index layout");
        }
    }

    /// r with (1 - eps) max_p d_w(q, p) <= d_w(q, r).
    Neighbor query(PointView q) const {
        const auto c = candidates(q);
        Neighbor best = c.p1;
        for (const auto& cand : {c.r1, c.r2}) {
            if (cand && better(*cand, best)) best = *cand;
        }
        return best;
    }

    WeightedCandidates candidates(PointView q) const {
        detail::require_same_dimension(dimension(), q.size());
        WeightedCandidates out;
        for (const auto& bucket : parts_.buckets) {
            const Neighbor k = bucket.index.query(q);
            const Neighbor scored{k.index, parts_.weights[k.index] * k.distance};
            if (!out.r1 || better(scored, *out.r1)) out.r1 = scored;
        }

        const double d_p1q = metric_type::distance(parts_.p1.view(), q);
        out.p1 = {parts_.p1_index, d_p1q};

        const auto& pared = parts_.pared;
        if (const auto pos = pared.first_at_least(2.0 * d_p1q / parts_.epsilon)) {
            const double d = metric_type::distance(pared.points()[*pos], q);
            out.r2 = Neighbor{pared.entries()[*pos].index, pared.weights()[*pos] * d};
        }
        return out;
    }

    double epsilon() const noexcept { return parts_.epsilon; }
    std::size_t dimension() const noexcept { return parts_.p1.dimension(); }
    std::size_t size() const noexcept { return parts_.point_count; }
    std::size_t p1_index() const noexcept { return parts_.p1_index; }
    std::span<const Bucket> buckets() const noexcept { return parts_.buckets; }
    const ParedFarList& pared() const noexcept { return parts_.pared; }
    std::span<const double> weights() const noexcept { return parts_.weights; }
    const Parts& parts() const noexcept { return parts_; }

    bool operator==(const BasicWeightedAfnIndex&) const = default;

private:
    static bool better(const Neighbor& a, const Neighbor& b) {
        return a.distance > b.distance || (a.distance == b.distance && a.index < b.index);
    }

    static void require_normalized(const WeightedPointSet& set) {
        for (double w : set.weights()) {
            if (!(w > 0.0 && w <= 1.0)) throw Error(ErrorCode::NotNormalized, "weights must lie in (0, 1]");
        }
        if (set.weight(set.p1_index()) != 1.0) {
            throw Error(ErrorCode::NotNormalized, "designated point p1 must have weight 1");
        }
    }

    Parts parts_;
};

using WeightedAfnIndex = BasicWeightedAfnIndex<UnweightedAfnIndex>;
extern template class BasicWeightedAfnIndex<UnweightedAfnIndex>;

inline Neighbor weighted_query(const WeightedAfnIndex& index, PointView q) { return index.query(q); }

/// Exact argmax of w(p) d(q, p) by linear scan, lowest index on ties.
Neighbor brute_force_weighted(const WeightedPointSet& set, PointView q);

template <Metric M>
ParedFarList ParedFarList::build(const WeightedPointSet& set, std::span<const std::size_t> low) {
    const PointView p1 = set.points()[set.p1_index()];
    std::vector<Entry> sorted;
    sorted.reserve(low.size());
    for (std::size_t i : low) {
        const double d = M::distance(p1, set.points()[i]);
        sorted.push_back({i, d, set.weight(i) * d});
    }
    std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    });
    return pare(set, std::move(sorted), low.size());
}

}  // namespace awfn
