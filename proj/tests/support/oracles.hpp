#pragma once

// Independent brute-force references. Nothing here calls into the library's
// algorithms; only the plain data containers are shared.

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "awfn/point.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline double dist(awfn::PointView a, awfn::PointView b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

/// max_p w(p) d(q, p) by linear scan.
inline double weighted_max(const awfn::PointSet& pts, const std::vector<double>& w, awfn::PointView q) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) best = std::max(best, w[i] * dist(pts[i], q));
    return best;
}

inline double width(const awfn::PointSet& pts, const std::vector<std::size_t>& subset, const std::vector<double>& u) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i : subset) {
        double t = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) t += pts[i][k] * u[k];
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return hi - lo;
}

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

inline std::vector<double> unit_vector(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> g;
    std::vector<double> u(dim);
    double n = 0.0;
    do {
        n = 0.0;
        for (double& x : u) {
            x = g(rng);
            n += x * x;
        }
    } while (n < 1e-20);
    n = std::sqrt(n);
    for (double& x : u) x /= n;
    return u;
}

/// Star dilation of an arbitrary center over all pairs, skipping points equal to `skip`.
inline double dilation_at(const awfn::PointSet& pts, awfn::PointView c, std::size_t skip = std::size_t(-1)) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == skip) continue;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (j == skip) continue;
            best = std::max(best, (dist(pts[i], c) + dist(pts[j], c)) / dist(pts[i], pts[j]));
        }
    }
    return best;
}

/// O(n^3) exhaustive: dilation of every input point as center.
inline std::vector<double> all_dilations(const awfn::PointSet& pts) {
    std::vector<double> out(pts.size());
    for (std::size_t c = 0; c < pts.size(); ++c) out[c] = dilation_at(pts, pts[c], c);
    return out;
}

struct GridMin {
    double value;
    std::vector<double> at;
};

/// Dense grid over [lo, hi]^2 followed by a finer grid around the best cell.
inline GridMin grid_min_2d(const awfn::PointSet& pts, double lo, double hi, std::size_t steps, int refinements = 0) {
    GridMin best{std::numeric_limits<double>::infinity(), {0, 0}};
    double x0 = lo, y0 = lo, span = hi - lo;
    for (int r = 0; r <= refinements; ++r) {
        const double h = span / static_cast<double>(steps - 1);
        GridMin round{std::numeric_limits<double>::infinity(), {0, 0}};
        for (std::size_t a = 0; a < steps; ++a) {
            for (std::size_t b = 0; b < steps; ++b) {
                const std::vector<double> c{x0 + h * static_cast<double>(a), y0 + h * static_cast<double>(b)};
                const double v = dilation_at(pts, c);
                if (v < round.value) round = {v, c};
            }
        }
        if (round.value < best.value) best = round;
        span = 4 * h;
        x0 = best.at[0] - 2 * h;
        y0 = best.at[1] - 2 * h;
    }
    return best;
}

inline awfn::PointSet random_points(std::size_t n, std::size_t dim, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    awfn::PointSet pts(dim);
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& x : p) x = u(rng);
        pts.push_back(p);
    }
    return pts;
}

inline std::vector<double> log_uniform_weights(std::size_t n, double lo, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(n);
    for (double& x : w) x = std::exp(std::log(lo) * u(rng));
    return w;
}

}  // namespace oracle
