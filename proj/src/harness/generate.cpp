#include <algorithm>
#include <cmath>

#include "awfn/error.hpp"
#include "awfn/harness.hpp"

namespace awfn::harness {
namespace {

// [0, 1) with 53 random bits.
double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double draw_weight(const WeightModel& model, Rng& rng) {
    if (model.kind == WeightModel::Kind::Unit) return 1.0;
    // hi * (lo/hi)^u for u in [0, 1) lies in (lo, hi]
    return model.hi * std::exp(-unit_uniform(rng) * std::log(model.hi / model.lo));
}

void validate(const GenOptions& o) {
    const auto bad = [](const std::string& what) { throw Error(ErrorCode::OutOfRange, what); };
    if (o.n == 0) bad("n must be at least 1");
    if (o.dimension == 0) bad("dimension must be at least 1");
    if (o.weights.kind == WeightModel::Kind::LogUniform &&
        !(o.weights.lo > 0.0 && o.weights.lo < o.weights.hi && std::isfinite(o.weights.hi))) {
        bad("log-uniform weights need 0 < lo < hi");
    }
    if (o.distribution == Distribution::Annulus && !(o.r_in >= 0.0 && o.r_in <= o.r_out && o.r_out > 0.0)) {
        bad("annulus needs 0 <= r_in <= r_out, r_out > 0");
    }
    if (o.distribution == Distribution::Clustered && (o.clusters == 0 || !(o.cluster_sigma >= 0.0))) {
        bad("clustered data needs at least one cluster and sigma >= 0");
    }
}

}  // namespace

Distribution parse_distribution(const std::string& name) {
    if (name == "uniform-cube") return Distribution::UniformCube;
    if (name == "clustered") return Distribution::Clustered;
    if (name == "annulus") return Distribution::Annulus;
    throw Error(ErrorCode::OutOfRange, "unknown distribution '" + name + "'");
}

std::vector<double> random_direction(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> normal;
    std::vector<double> v(dim);
    while (true) {
        double norm = 0.0;
        for (double& x : v) {
            x = normal(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm > 1e-12) {
            for (double& x : v) x /= norm;
            return v;
        }
    }
}

PointTable generate(const GenOptions& options) {
    Rng rng(options.seed);
    return generate(options, rng);
}

PointTable generate(const GenOptions& o, Rng& rng) {
    validate(o);
    PointTable table;
    table.points = PointSet(o.dimension);
    table.points.reserve(o.n);
    table.weights.reserve(o.n);
    table.has_weight_column = o.weights.kind != WeightModel::Kind::Unit;

    std::vector<double> centers;
    if (o.distribution == Distribution::Clustered) {
        centers.resize(o.clusters * o.dimension);
        for (double& c : centers) c = unit_uniform(rng);
    }
    std::normal_distribution<double> normal;
    std::vector<double> p(o.dimension);
    for (std::size_t i = 0; i < o.n; ++i) {
        switch (o.distribution) {
            case Distribution::UniformCube:
                for (double& x : p) x = unit_uniform(rng);
                break;
            case Distribution::Clustered: {
                const auto c = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(o.clusters));
                for (std::size_t k = 0; k < o.dimension; ++k) {
                    p[k] = centers[c * o.dimension + k] + o.cluster_sigma * normal(rng);
                }
                break;
            }
            case Distribution::Annulus: {
                const auto dir = random_direction(o.dimension, rng);
                const double d = static_cast<double>(o.dimension);
                const double lo = std::pow(o.r_in, d);
                const double hi = std::pow(o.r_out, d);
                const double r = std::clamp(std::pow(lo + unit_uniform(rng) * (hi - lo), 1.0 / d), o.r_in, o.r_out);
                for (std::size_t k = 0; k < o.dimension; ++k) p[k] = r * dir[k];
                break;
            }
        }
        table.points.push_back(p);
        table.weights.push_back(draw_weight(o.weights, rng));
    }
    return table;
}

}  // namespace awfn::harness
