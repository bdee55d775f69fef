#include "awfn/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "awfn/error.hpp"
#include "awfn/parallel.hpp"

namespace awfn {
namespace {

struct PairTerm {
    std::size_t i;
    std::size_t j;
    double inverse_length;
};

std::vector<PairTerm> pair_terms(const PointSet& points, const CandidatePairSet& pairs) {
    std::vector<PairTerm> terms;
    terms.reserve(pairs.size());
    for (const auto& [i, j] : pairs.pairs()) {
        const double len = std::sqrt(detail::squared_distance_unchecked(points[i], points[j]));
        if (len == 0.0) throw DuplicatePointsError(i, j);
        terms.push_back({i, j, 1.0 / len});
    }
    return terms;
}

/// max over terms of delta(c, p_i, p_j), with a subgradient at c.
double star_dilation(const PointSet& points, const std::vector<PairTerm>& terms, PointView c,
                     std::vector<double>& subgradient) {
    double best = -1.0;
    const PairTerm* active = nullptr;
    for (const auto& t : terms) {
        const double v = (std::sqrt(detail::squared_distance_unchecked(c, points[t.i])) +
                          std::sqrt(detail::squared_distance_unchecked(c, points[t.j]))) *
                         t.inverse_length;
        if (v > best) {
            best = v;
            active = &t;
        }
    }
    std::fill(subgradient.begin(), subgradient.end(), 0.0);
    for (std::size_t end : {active->i, active->j}) {
        const auto p = points[end];
        const double d = std::sqrt(detail::squared_distance_unchecked(c, p));
        if (d == 0.0) continue;  // 0 is a subgradient of |x - p| at p
        for (std::size_t k = 0; k < c.size(); ++k) subgradient[k] += (c[k] - p[k]) / d * active->inverse_length;
    }
    return best;
}

struct DescentResult {
    std::vector<double> x;
    double value;
    std::size_t steps;
    bool converged;
};

// Steps without a decrease of half the current gap before the gap is halved.
constexpr std::size_t kStallSteps = 60;

DescentResult polyak_descent(const PointSet& points, const std::vector<PairTerm>& terms, std::vector<double> x,
                             double tol, std::size_t step_cap) {
    std::vector<double> g(x.size());
    double f = star_dilation(points, terms, x, g);
    DescentResult best{x, f, 0, false};
    // every star has dilation >= 1, so best - 1 bounds the initial gap
    double gap = 0.5 * (f - 1.0);
    std::size_t stall = 0;
    std::size_t steps = 0;
    while (steps < step_cap) {
        if (gap <= tol * best.value) {
            best.converged = true;
            break;
        }
        double g_sq = 0.0;
        for (double v : g) g_sq += v * v;
        if (g_sq == 0.0) {
            best.converged = true;
            break;
        }
        const double target = best.value - gap;
        const double step = (f - target) / g_sq;
        for (std::size_t k = 0; k < x.size(); ++k) x[k] -= step * g[k];
        f = star_dilation(points, terms, x, g);
        ++steps;
        if (f < best.value) {
            const bool enough = f <= best.value - 0.5 * gap;
            best.x = x;
            best.value = f;
            stall = enough ? 0 : stall + 1;
        } else {
            ++stall;
        }
        if (stall >= kStallSteps) {
            gap *= 0.5;
            stall = 0;
            x = best.x;
            f = star_dilation(points, terms, x, g);
        }
    }
    best.steps = steps;
    return best;
}

}  // namespace

double delta(PointView c, PointView v, PointView w) {
    detail::require_same_dimension(c.size(), v.size());
    detail::require_same_dimension(c.size(), w.size());
    const double vw = distance(v, w);
    if (vw == 0.0) throw Error(ErrorCode::DegenerateInput, "dilation undefined for coincident endpoints");
    return (distance(v, c) + distance(w, c)) / vw;
}

const char* to_string(PairMode mode) noexcept {
    return mode == PairMode::AllPairs ? "all" : "wspd";
}

const char* to_string(CenterMode mode) noexcept {
    return mode == CenterMode::Adaptive ? "adaptive" : "paper-k";
}

const char* to_string(Classification c) noexcept {
    switch (c) {
        case Classification::ExactLow: return "exact-low";
        case Classification::CertifiedHigh: return "certified-high";
        case Classification::FallbackExact: return "fallback-exact";
    }
    return "unknown";
}

CandidatePairSet CandidatePairSet::all_pairs(std::size_t n) {
    if (n > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorCode::OutOfRange, "too many points");
    std::vector<Pair> pairs;
    pairs.reserve(n < 2 ? 0 : n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return CandidatePairSet(std::move(pairs), n, PairMode::AllPairs);
}

void require_distinct(const PointSet& points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    const auto less = [&](std::size_t a, std::size_t b) {
        const auto pa = points[a];
        const auto pb = points[b];
        if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
        if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) return false;
        return a < b;
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto a = points[order[k - 1]];
        const auto b = points[order[k]];
        if (std::equal(a.begin(), a.end(), b.begin())) throw DuplicatePointsError(order[k - 1], order[k]);
    }
}

GammaSplit GammaSplit::from_epsilon(double epsilon) {
    require_epsilon(epsilon);
    GammaSplit s;
    s.epsilon = epsilon;
    s.epsilon1 = 1.0 - std::sqrt(1.0 - epsilon);
    s.epsilon2 = s.epsilon1;
    s.gamma = 2.0 / s.epsilon1 - 1.0;
    return s;
}

CentroidIndex CentroidIndex::build(const PointSet& points, const CandidatePairSet& pairs, double epsilon) {
    require_epsilon(epsilon);
    if (pairs.size() == 0) throw Error(ErrorCode::EmptyInput, "no candidate pairs");
    PointSet centroids(points.dimension());
    centroids.reserve(pairs.size());
    std::vector<double> raw;
    raw.reserve(pairs.size());
    std::vector<double> mid(points.dimension());
    for (const auto& t : pair_terms(points, pairs)) {
        const auto a = points[t.i];
        const auto b = points[t.j];
        for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (a[k] + b[k]);
        centroids.push_back(mid);
        raw.push_back(2.0 * t.inverse_length);
    }
    auto set = WeightedPointSet::from_raw(centroids, raw);
    auto index = WeightedAfnIndex::build(set, epsilon);
    return CentroidIndex(std::move(centroids), std::move(raw), std::move(index));
}

Neighbor CentroidIndex::query(PointView c) const {
    const Neighbor hit = index_.query(c);
    // rescore in raw units rather than undoing the normalization
    return {hit.index, raw_weights_[hit.index] * distance(centroids_[hit.index], c)};
}

double exact_dilation(const PointSet& points, std::size_t center, const CandidatePairSet& pairs) {
    if (center >= points.size()) throw Error(ErrorCode::OutOfRange, "center index out of range");
    if (points.size() < 3) throw Error(ErrorCode::DegenerateInput, "a star needs at least two leaves");
    const auto c = points[center];
    double best = -1.0;
    for (const auto& [i, j] : pairs.pairs()) {
        if (i == center || j == center) continue;
        const double len = std::sqrt(detail::squared_distance_unchecked(points[i], points[j]));
        if (len == 0.0) throw DuplicatePointsError(i, j);
        const double v = (std::sqrt(detail::squared_distance_unchecked(c, points[i])) +
                          std::sqrt(detail::squared_distance_unchecked(c, points[j]))) /
                         len;
        best = std::max(best, v);
    }
    if (best < 0.0) throw Error(ErrorCode::DegenerateInput, "no candidate pair avoids the center");
    return best;
}

double exact_dilation(PointView c, const PointSet& points, const CandidatePairSet& pairs) {
    detail::require_same_dimension(c.size(), points.dimension());
    std::vector<char> is_center(points.size(), 0);
    std::size_t leaves = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        is_center[i] = std::equal(p.begin(), p.end(), c.begin());
        leaves += is_center[i] ? 0 : 1;
    }
    if (leaves < 2) throw Error(ErrorCode::DegenerateInput, "a star needs at least two leaves");
    double best = -1.0;
    for (const auto& [i, j] : pairs.pairs()) {
        if (is_center[i] || is_center[j]) continue;
        const double len = std::sqrt(detail::squared_distance_unchecked(points[i], points[j]));
        if (len == 0.0) throw DuplicatePointsError(i, j);
        const double v = (std::sqrt(detail::squared_distance_unchecked(c, points[i])) +
                          std::sqrt(detail::squared_distance_unchecked(c, points[j]))) /
                         len;
        best = std::max(best, v);
    }
    if (best < 0.0) throw Error(ErrorCode::DegenerateInput, "no candidate pair avoids the center");
    return best;
}

UnconstrainedCenter solve_unconstrained_center(const PointSet& points, const CandidatePairSet& pairs, double tol,
                                               std::size_t step_cap) {
    if (points.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two points");
    if (!(tol > 0.0)) throw Error(ErrorCode::OutOfRange, "tolerance must be positive");
    if (pairs.size() == 0) throw Error(ErrorCode::EmptyInput, "no candidate pairs");
    const auto terms = pair_terms(points, pairs);
    const std::size_t dim = points.dimension();

    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
            centroid[k] += p[k] / static_cast<double>(points.size());
        }
    }

    std::vector<std::vector<double>> starts{centroid};
    if (dim < 16) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            std::vector<double> corner(dim);
            for (std::size_t k = 0; k < dim; ++k) corner[k] = (mask >> k) & 1 ? hi[k] : lo[k];
            starts.push_back(std::move(corner));
        }
    }

    DescentResult best{{}, std::numeric_limits<double>::infinity(), 0, false};
    bool any_converged = false;
    std::size_t total_steps = 0;
    for (auto& s : starts) {
        auto r = polyak_descent(points, terms, std::move(s), tol, step_cap);
        total_steps += r.steps;
        any_converged = any_converged || r.converged;
        if (r.value < best.value) best = std::move(r);
    }
    if (!any_converged) throw NotConvergedError(best.x, best.value, step_cap);
    return {std::move(best.x), best.value, total_steps};
}

std::size_t DilationReport::count(Classification c) const {
    return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
}

DilationReport approx_all_dilations(const PointSet& points, double epsilon, const DilationOptions& options) {
    require_epsilon(epsilon);
    const std::size_t n = points.size();
    if (n < 3) throw Error(ErrorCode::DegenerateInput, "dilation of all stars needs at least three points");
    require_distinct(points);

    DilationReport report;
    report.split = GammaSplit::from_epsilon(epsilon);
    report.mode = options.mode;
    report.values.assign(n, 0.0);
    report.classes.assign(n, Classification::ExactLow);

    const auto pairs = CandidatePairSet::all_pairs(n);
    const auto centroids = CentroidIndex::build(points, pairs, report.split.epsilon2);

    std::vector<char> low(n, 0);
    if (options.mode == CenterMode::NearestK) {
        try {
            report.unconstrained_center = solve_unconstrained_center(points, pairs).center;
        } catch (const NotConvergedError& e) {
            report.unconstrained_center = e.best_center();
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i) dist[i] = distance(points[i], report.unconstrained_center);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        for (std::size_t r = 0; r < std::min(options.k, n); ++r) low[order[r]] = 1;
    }

    const double gamma = report.split.gamma;
    parallel_for(n, options.threads, [&](std::size_t i) {
        if (low[i]) {
            report.values[i] = exact_dilation(points, i, pairs);
            report.classes[i] = Classification::ExactLow;
            return;
        }
        const double v = centroids.query(points[i]).distance;
        if (v >= gamma) {
            report.values[i] = v;
            report.classes[i] = Classification::CertifiedHigh;
        } else {
            report.values[i] = exact_dilation(points, i, pairs);
            report.classes[i] = options.mode == CenterMode::Adaptive ? Classification::ExactLow
                                                                    : Classification::FallbackExact;
        }
    });

    const Hub hub = select_hub(report);
    report.hub_index = hub.index;
    report.hub_value = hub.dilation;
    return report;
}

Hub select_hub(const DilationReport& report) {
    if (report.values.empty()) throw Error(ErrorCode::EmptyInput, "empty dilation report");
    Hub hub{0, report.values[0]};
    for (std::size_t i = 1; i < report.values.size(); ++i) {
        if (report.values[i] < hub.dilation) hub = {i, report.values[i]};
    }
    return hub;
}

}  // namespace awfn
