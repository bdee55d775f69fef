#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "awfn/point.hpp"
#include "awfn/weighted_index.hpp"

namespace awfn {

/// (|vc| + |wc|) / |vw|, the dilation between v and w through c.
/// Throws DegenerateInput when v == w.
double delta(PointView c, PointView v, PointView w);

enum class PairMode { AllPairs, Wspd };

const char* to_string(PairMode mode) noexcept;

/// Index pairs (i, j), i < j, guaranteed to contain the worst pair of every
/// center.
class CandidatePairSet {
public:
    using Pair = std::pair<std::uint32_t, std::uint32_t>;

    /// Every pair of the n points. Only mode with the containment guarantee.
    static CandidatePairSet all_pairs(std::size_t n);

    std::span<const Pair> pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    std::size_t point_count() const noexcept { return point_count_; }
    PairMode mode() const noexcept { return mode_; }

private:
    CandidatePairSet(std::vector<Pair> pairs, std::size_t n, PairMode mode)
        : pairs_(std::move(pairs)), point_count_(n), mode_(mode) {}

    std::vector<Pair> pairs_;
    std::size_t point_count_;
    PairMode mode_;
};

/// Throws DuplicatePointsError naming the first coincident pair found.
void require_distinct(const PointSet& points);

/// Error budget for the dilation pipeline. Gamma is the certification
/// threshold; (1 - eps1)(1 - eps2) = 1 - eps.
struct GammaSplit {
    double epsilon = 0.0;
    double epsilon1 = 0.0;
    double epsilon2 = 0.0;
    double gamma = 0.0;

    static GammaSplit from_epsilon(double epsilon);
};

/// Midpoints q_ij of candidate pairs with weights 2 / |p_i p_j|, indexed for
/// approximate weighted farthest queries. For any center c,
/// w_ij |q_ij c| <= delta(c, p_i, p_j).
class CentroidIndex {
public:
    static CentroidIndex build(const PointSet& points, const CandidatePairSet& pairs, double epsilon);

    /// Approximate max over pairs of w_ij |q_ij c| together with the centroid
    /// (pair position) realizing it.
    Neighbor query(PointView c) const;

    const PointSet& centroids() const noexcept { return centroids_; }
    std::span<const double> raw_weights() const noexcept { return raw_weights_; }
    const WeightedAfnIndex& index() const noexcept { return index_; }

private:
    CentroidIndex(PointSet centroids, std::vector<double> raw_weights, WeightedAfnIndex index)
        : centroids_(std::move(centroids)), raw_weights_(std::move(raw_weights)), index_(std::move(index)) {}

    PointSet centroids_;
    std::vector<double> raw_weights_;
    WeightedAfnIndex index_;
};

/// Dilation of the star centered at input point `center`; pairs touching the
/// center are skipped.
double exact_dilation(const PointSet& points, std::size_t center, const CandidatePairSet& pairs);

/// Dilation of the star centered at an arbitrary point; input points equal
/// to c are treated as the center and skipped.
double exact_dilation(PointView c, const PointSet& points, const CandidatePairSet& pairs);

struct UnconstrainedCenter {
    std::vector<double> center;
    double dilation = 0.0;
    std::size_t steps = 0;
};

inline constexpr std::size_t kCenterStepCap = 100000;

/// Minimizes the convex function c -> max over pairs of delta(c, p_i, p_j)
/// over all of R^D by subgradient descent with Polyak steps toward a
/// shrinking target level. Starts from the centroid and every bounding box
/// corner. Stops once the target gap falls below tol relative to the value.
/// Throws NotConvergedError carrying the best iterate if no start converges
/// within `step_cap` steps.
UnconstrainedCenter solve_unconstrained_center(const PointSet& points, const CandidatePairSet& pairs,
                                               double tol = 1e-7, std::size_t step_cap = kCenterStepCap);

enum class CenterMode { Adaptive, NearestK };
enum class Classification { ExactLow, CertifiedHigh, FallbackExact };

const char* to_string(CenterMode mode) noexcept;
const char* to_string(Classification c) noexcept;

struct DilationOptions {
    CenterMode mode = CenterMode::Adaptive;
    /// Number of exact centers nearest c_OPT in paper-k mode.
    std::size_t k = 0;
    /// Worker threads for per-center queries; 1 runs serially.
    unsigned threads = 1;
};

struct DilationReport {
    GammaSplit split;
    CenterMode mode = CenterMode::Adaptive;
    std::vector<double> values;
    std::vector<Classification> classes;
    std::size_t hub_index = 0;
    double hub_value = 0.0;
    /// paper-k only: the unconstrained optimum used to rank centers.
    std::vector<double> unconstrained_center;

    std::size_t count(Classification c) const;
};

/// For every input point p, a value with (1 - eps) Delta(p) <= value <= Delta(p).
/// Centers whose centroid query clears Gamma are certified and keep the
/// query value; the rest are evaluated exactly.
DilationReport approx_all_dilations(const PointSet& points, double epsilon, const DilationOptions& options = {});

struct Hub {
    std::size_t index = 0;
    double dilation = 0.0;
};

/// Center with the smallest reported value, lowest index on ties.
Hub select_hub(const DilationReport& report);

}  // namespace awfn
