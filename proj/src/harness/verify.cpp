#include <algorithm>
#include <cmath>
#include <ostream>

#include "awfn/dilation.hpp"
#include "awfn/error.hpp"
#include "awfn/harness.hpp"
#include "awfn/kernel.hpp"
#include "awfn/parallel.hpp"

namespace awfn::harness {
namespace {

// Slack for floating point rounding in guarantee comparisons.
double slack(double magnitude) { return 1e-12 * std::max(1.0, std::abs(magnitude)); }

Json points_json(const PointTable& data) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < data.points.size(); ++i) {
        const auto p = data.points[i];
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return pts;
}

std::vector<std::vector<double>> sample_queries(const PointSet& points, std::size_t count, Rng& rng) {
    const std::size_t dim = points.dimension();
    std::vector<double> lo(dim, INFINITY), hi(dim, -INFINITY);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], points[i][k]);
            hi[k] = std::max(hi[k], points[i][k]);
        }
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> queries(count, std::vector<double>(dim));
    for (auto& q : queries) {
        for (std::size_t k = 0; k < dim; ++k) {
            const double pad = hi[k] > lo[k] ? 0.5 * (hi[k] - lo[k]) : 1.0;
            q[k] = lo[k] - pad + unit(rng) * (hi[k] - lo[k] + 2.0 * pad);
        }
    }
    return queries;
}

void check_queries(const PointTable& data, const WeightedAfnIndex& index, const VerifyOptions& o, Rng& rng,
                   VerifyReport& report) {
    const auto set = data.weighted();
    const auto queries = sample_queries(set.points(), o.trials, rng);
    std::vector<Neighbor> answers(queries.size());
    std::vector<Neighbor> exact(queries.size());
    parallel_for(queries.size(), o.threads, [&](std::size_t t) {
        answers[t] = index.query(queries[t]);
        exact[t] = brute_force_weighted(set, queries[t]);
    });
    for (std::size_t t = 0; t < queries.size(); ++t) {
        ++report.checks;
        const auto& a = answers[t];
        const bool in_range = a.index < set.size();
        const double value = in_range ? set.weight(a.index) * distance(queries[t], set.points()[a.index]) : -1.0;
        const double best = exact[t].distance;
        const double ratio = best > 0.0 ? value / best : (value == 0.0 ? 1.0 : 0.0);
        report.worst_query_ratio = std::min(report.worst_query_ratio, ratio);
        const bool ok = in_range && value >= (1.0 - o.epsilon) * best - slack(best) && value <= best + slack(best);
        if (ok) continue;
        ++report.violations;
        if (!report.replay) {
            report.replay = Json{{"kind", "weighted-query"},
                                 {"epsilon", o.epsilon},
                                 {"query", queries[t]},
                                 {"answer", {{"index", a.index}, {"value", value}}},
                                 {"oracle", {{"index", exact[t].index}, {"value", best}}},
                                 {"points", points_json(data)},
                                 {"weights", data.weights}};
        }
    }
}

void check_kernel(const PointTable& data, const VerifyOptions& o, Rng& rng, VerifyReport& report) {
    const auto& points = data.points;
    const auto kernel = build_kernel(points, o.epsilon);
    const std::size_t directions = std::max<std::size_t>(1000, 100 * kernel.size());
    for (std::size_t t = 0; t < directions; ++t) {
        ++report.checks;
        const auto u = Direction::normalized(random_direction(points.dimension(), rng));
        const double wp = directional_width(points, u);
        const double wk = directional_width(points, kernel.indices(), u);
        if (wp > 0.0) report.worst_width_ratio = std::min(report.worst_width_ratio, wk / wp);
        if (wk >= (1.0 - o.epsilon) * wp - slack(wp) && wk <= wp + slack(wp)) continue;
        ++report.violations;
        if (!report.replay) {
            report.replay = Json{{"kind", "kernel-width"},
                                 {"epsilon", o.epsilon},
                                 {"direction", std::vector<double>(u.view().begin(), u.view().end())},
                                 {"kernel_width", wk},
                                 {"set_width", wp},
                                 {"kernel_indices", std::vector<std::size_t>(kernel.indices().begin(),
                                                                             kernel.indices().end())},
                                 {"points", points_json(data)}};
        }
    }
}

void check_dilation(const PointTable& data, const VerifyOptions& o, VerifyReport& report) {
    const auto& points = data.points;
    const auto result = approx_all_dilations(points, o.epsilon, {CenterMode::Adaptive, 0, o.threads});
    const std::size_t n = points.size();
    std::vector<double> exact(n, 0.0);
    parallel_for(n, o.threads, [&](std::size_t c) {
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (i == c || j == c) continue;
                best = std::max(best, delta(points[c], points[i], points[j]));
            }
        }
        exact[c] = best;
    });
    double worst = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        ++report.checks;
        const double v = result.values[c];
        worst = std::min(worst, v / exact[c]);
        if (v >= (1.0 - o.epsilon) * exact[c] - slack(exact[c]) && v <= exact[c] + slack(exact[c])) continue;
        ++report.violations;
        if (!report.replay) {
            report.replay = Json{{"kind", "dilation"},
                                 {"epsilon", o.epsilon},
                                 {"center", c},
                                 {"approx", v},
                                 {"exact", exact[c]},
                                 {"classification", to_string(result.classes[c])},
                                 {"points", points_json(data)}};
        }
    }
    report.worst_dilation_ratio = worst;
}

}  // namespace

VerifyReport verify(const PointTable& data, const VerifyOptions& options, const WeightedAfnIndex* index) {
    require_epsilon(options.epsilon);
    VerifyReport report;
    Rng rng(options.seed);
    if (options.afn) {
        std::optional<WeightedAfnIndex> built;
        if (!index) {
            built.emplace(WeightedAfnIndex::build(data.weighted(), options.epsilon));
            index = &*built;
        }
        if (index->size() != data.points.size() || index->dimension() != data.points.dimension()) {
            throw Error(ErrorCode::DimensionMismatch, "index does not match the dataset");
        }
        check_queries(data, *index, options, rng, report);
        check_kernel(data, options, rng, report);
    }
    if (options.dilation) check_dilation(data, options, report);
    return report;
}

void write_verify_summary(std::ostream& out, const VerifyReport& report, const VerifyOptions& options) {
    out << "result: " << (report.passed() ? "pass" : "fail") << '\n';
    out << "epsilon: " << options.epsilon << '\n';
    out << "checks: " << report.checks << '\n';
    out << "violations: " << report.violations << '\n';
    if (options.afn) {
        out << "worst_query_ratio: " << report.worst_query_ratio << '\n';
        out << "worst_width_ratio: " << report.worst_width_ratio << '\n';
    }
    if (report.worst_dilation_ratio) out << "worst_dilation_ratio: " << *report.worst_dilation_ratio << '\n';
}

}  // namespace awfn::harness
