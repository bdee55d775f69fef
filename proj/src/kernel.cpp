#include "awfn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "awfn/error.hpp"

namespace awfn {
namespace {

// Residual heights below this fraction of the diameter scale count as zero
// when detecting the affine hull.
constexpr double kFlatTolerance = 1e-12;
// Fraction of the width budget the grid is allowed to spend.
constexpr double kBudgetFraction = 0.9;
constexpr double kSphereRadius = 2.0;

/// Input mapped into its own affine hull: k coordinates per point, the set
/// inside the unit ball and containing the ball of radius `inner_radius`.
struct FatFrame {
    std::size_t k = 0;
    std::vector<double> coords;  // m x k, row per member
    double inner_radius = 0.0;
    // members realizing the extremes when k == 1
    std::size_t line_min = 0;
    std::size_t line_max = 0;
};

FatFrame fatten(const PointSet& points, std::span<const std::size_t> members) {
    const std::size_t m = members.size();
    const std::size_t dim = points.dimension();
    FatFrame frame;

    // s0: farthest member from the first one.
    const auto first = points[members[0]];
    std::size_t s0 = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = detail::squared_distance_unchecked(first, points[members[j]]);
        if (d > best) {
            best = d;
            s0 = j;
        }
    }

    std::vector<double> residual(m * dim);
    const auto origin = points[members[s0]];
    for (std::size_t j = 0; j < m; ++j) {
        const auto p = points[members[j]];
        for (std::size_t c = 0; c < dim; ++c) residual[j * dim + c] = p[c] - origin[c];
    }

    // Greedy simplex: each new vertex is the member farthest from the affine
    // hull of the previous ones. Its height bounds every later coordinate.
    std::vector<double> local;  // m x k, filled column by column
    std::vector<double> heights;
    std::vector<std::size_t> vertices;
    double scale = 0.0;
    for (std::size_t step = 0; step < dim; ++step) {
        std::size_t far = 0;
        double far_sq = -1.0;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) s += residual[j * dim + c] * residual[j * dim + c];
            if (s > far_sq) {
                far_sq = s;
                far = j;
            }
        }
        const double h = std::sqrt(far_sq);
        if (step == 0) scale = h;
        if (h == 0.0 || h <= kFlatTolerance * scale) break;

        std::vector<double> axis(residual.begin() + far * dim, residual.begin() + (far + 1) * dim);
        for (double& x : axis) x /= h;
        std::vector<double> column(m);
        for (std::size_t j = 0; j < m; ++j) {
            double t = 0.0;
            for (std::size_t c = 0; c < dim; ++c) t += residual[j * dim + c] * axis[c];
            for (std::size_t c = 0; c < dim; ++c) residual[j * dim + c] -= t * axis[c];
            column[j] = t / h;
        }
        local.insert(local.end(), column.begin(), column.end());
        heights.push_back(h);
        vertices.push_back(far);
    }

    frame.k = heights.size();
    if (frame.k == 0) return frame;
    if (frame.k == 1) {
        for (std::size_t j = 0; j < m; ++j) {
            if (local[j] < local[frame.line_min]) frame.line_min = j;
            if (local[j] > local[frame.line_max]) frame.line_max = j;
        }
        return frame;
    }

    const std::size_t k = frame.k;
    frame.coords.resize(m * k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < m; ++j) frame.coords[j * k + c] = local[c * m + j];
    }

    // Incircle of the simplex {s0, vertices...} via barycentric gradients:
    // r = 1 / sum |grad lambda_i|, center = sum r |grad lambda_i| v_i.
    Eigen::MatrixXd edges(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < k; ++c) edges(c, i) = frame.coords[vertices[i] * k + c];
    }
    const Eigen::MatrixXd grads = edges.inverse();
    Eigen::VectorXd grad0 = -grads.colwise().sum().transpose();
    double norm_sum = grad0.norm();
    for (std::size_t i = 0; i < k; ++i) norm_sum += grads.row(i).norm();
    const double r_in = 1.0 / norm_sum;
    Eigen::VectorXd center = Eigen::VectorXd::Zero(k);
    for (std::size_t i = 0; i < k; ++i) center += r_in * grads.row(i).norm() * edges.col(i);

    double r_out_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double t = frame.coords[j * k + c] - center(c);
            s += t * t;
        }
        r_out_sq = std::max(r_out_sq, s);
    }
    const double r_out = std::sqrt(r_out_sq);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t c = 0; c < k; ++c) {
            frame.coords[j * k + c] = (frame.coords[j * k + c] - center(c)) / r_out;
        }
    }
    frame.inner_radius = r_in / r_out;
    return frame;
}

double grid_spacing(double epsilon, double inner_radius) {
    return std::min(0.5, std::sqrt(kBudgetFraction * epsilon * inner_radius));
}

std::size_t circle_sites(double delta) {
    // Adjacent sites at angle 2 pi / n leave every circle point within
    // 2 R sin(pi / 2n) of a site.
    const double half_step = 2.0 * std::asin(delta / (2.0 * kSphereRadius));
    return static_cast<std::size_t>(std::ceil(std::numbers::pi / half_step));
}

std::size_t cube_axis_sites(double delta, std::size_t k) {
    // Cube face grid projected radially: projection onto the sphere scales
    // distances by at most R, face cells have half-diagonal h sqrt(k-1) / 2.
    const double h = 2.0 * delta / (kSphereRadius * std::sqrt(static_cast<double>(k - 1)));
    return static_cast<std::size_t>(std::ceil(2.0 / h)) + 1;
}

std::size_t sphere_sites(double delta, std::size_t k) {
    if (k == 2) return circle_sites(delta);
    const double per_face = std::pow(static_cast<double>(cube_axis_sites(delta, k)), static_cast<double>(k - 1));
    const double total = 2.0 * static_cast<double>(k) * per_face;
    constexpr double cap = static_cast<double>(std::numeric_limits<std::size_t>::max() / 2);
    return total >= cap ? static_cast<std::size_t>(cap) : static_cast<std::size_t>(total);
}

template <class Visit>
void for_each_site(double delta, std::size_t k, Visit&& visit) {
    std::vector<double> site(k);
    if (k == 2) {
        const std::size_t n = circle_sites(delta);
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
            site[0] = kSphereRadius * std::cos(angle);
            site[1] = kSphereRadius * std::sin(angle);
            visit(std::span<const double>(site));
        }
        return;
    }
    const std::size_t per_axis = cube_axis_sites(delta, k);
    const double step = 2.0 / static_cast<double>(per_axis - 1);
    std::vector<std::size_t> counter(k - 1);
    std::vector<double> cube(k);
    for (std::size_t axis = 0; axis < k; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            std::fill(counter.begin(), counter.end(), 0);
            while (true) {
                std::size_t free = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    cube[c] = c == axis ? sign : -1.0 + step * static_cast<double>(counter[free++]);
                }
                double norm = 0.0;
                for (double x : cube) norm += x * x;
                norm = std::sqrt(norm);
                for (std::size_t c = 0; c < k; ++c) site[c] = kSphereRadius * cube[c] / norm;
                visit(std::span<const double>(site));

                std::size_t d = 0;
                while (d < counter.size() && ++counter[d] == per_axis) counter[d++] = 0;
                if (d == counter.size()) break;
            }
        }
    }
}

/// Strict convex hull vertices of 2-d rows, as row numbers in ascending order.
std::vector<std::size_t> hull_vertices_2d(const std::vector<double>& xy, std::size_t m) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xy[2 * a] != xy[2 * b]) return xy[2 * a] < xy[2 * b];
        if (xy[2 * a + 1] != xy[2 * b + 1]) return xy[2 * a + 1] < xy[2 * b + 1];
        return a < b;
    });
    const auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (xy[2 * a] - xy[2 * o]) * (xy[2 * b + 1] - xy[2 * o + 1]) -
               (xy[2 * a + 1] - xy[2 * o + 1]) * (xy[2 * b] - xy[2 * o]);
    };
    std::vector<std::size_t> hull(2 * m);
    std::size_t h = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], order[i]) <= 0) --h;
        hull[h++] = order[i];
    }
    for (std::size_t i = m - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], order[i]) <= 0) --h;
        hull[h++] = order[i];
    }
    hull.resize(h > 1 ? h - 1 : h);
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    return hull;
}

}  // namespace

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
    }
}

EpsilonKernel::EpsilonKernel(double epsilon, std::vector<std::size_t> indices, std::size_t budget,
                             std::size_t affine_dimension)
    : epsilon_(epsilon), indices_(std::move(indices)), budget_(budget), affine_dimension_(affine_dimension) {}

EpsilonKernel build_kernel(const PointSet& points, double epsilon) {
    std::vector<std::size_t> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    return build_kernel(points, all, epsilon);
}

EpsilonKernel build_kernel(const PointSet& points, std::span<const std::size_t> members_in, double epsilon) {
    require_epsilon(epsilon);
    if (members_in.empty()) throw Error(ErrorCode::EmptyInput, "kernel of an empty set");
    std::vector<std::size_t> members(members_in.begin(), members_in.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.back() >= points.size()) throw Error(ErrorCode::OutOfRange, "member index out of range");

    const std::size_t m = members.size();
    if (m == 1) return EpsilonKernel(epsilon, members, 1, 0);

    const FatFrame frame = fatten(points, members);
    if (frame.k == 0) return EpsilonKernel(epsilon, {members.front()}, 1, 0);
    if (frame.k == 1) {
        std::vector<std::size_t> ends{members[frame.line_min], members[frame.line_max]};
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        return EpsilonKernel(epsilon, std::move(ends), 2, 1);
    }

    const std::size_t k = frame.k;
    const double delta = grid_spacing(epsilon, frame.inner_radius);
    const std::size_t budget = sphere_sites(delta, k);
    if (m <= budget) return EpsilonKernel(epsilon, std::move(members), budget, k);

    std::vector<std::size_t> candidates;
    if (k == 2) {
        candidates = hull_vertices_2d(frame.coords, m);
    } else {
        candidates.resize(m);
        std::iota(candidates.begin(), candidates.end(), 0);
    }

    std::vector<char> picked(m, 0);
    for_each_site(delta, k, [&](std::span<const double> site) {
        std::size_t best = candidates.front();
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t j : candidates) {
            const double d = detail::squared_distance_unchecked(site, {frame.coords.data() + j * k, k});
            if (d < best_sq) {
                best_sq = d;
                best = j;
            }
        }
        picked[best] = 1;
    });

    std::vector<std::size_t> kernel;
    for (std::size_t j = 0; j < m; ++j) {
        if (picked[j]) kernel.push_back(members[j]);
    }
    return EpsilonKernel(epsilon, std::move(kernel), budget, k);
}

Neighbor brute_force_farthest(const PointSet& points, PointView q) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "farthest point of an empty set");
    detail::require_same_dimension(points.dimension(), q.size());
    Neighbor best{0, -1.0};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = detail::squared_distance_unchecked(q, points[i]);
        if (d > best.distance) best = {i, d};
    }
    best.distance = std::sqrt(best.distance);
    return best;
}

UnweightedAfnIndex UnweightedAfnIndex::build(const PointSet& points, double epsilon) {
    const auto kernel = build_kernel(points, epsilon);
    return UnweightedAfnIndex(epsilon, {kernel.indices().begin(), kernel.indices().end()},
                              points.subset(kernel.indices()));
}

UnweightedAfnIndex UnweightedAfnIndex::build(const PointSet& points, std::span<const std::size_t> members,
                                             double epsilon) {
    const auto kernel = build_kernel(points, members, epsilon);
    return UnweightedAfnIndex(epsilon, {kernel.indices().begin(), kernel.indices().end()},
                              points.subset(kernel.indices()));
}

UnweightedAfnIndex::UnweightedAfnIndex(double epsilon, std::vector<std::size_t> kernel_indices,
                                       PointSet kernel_points)
    : epsilon_(epsilon), kernel_indices_(std::move(kernel_indices)), kernel_points_(std::move(kernel_points)) {
    require_epsilon(epsilon_);
    if (kernel_indices_.empty()) throw Error(ErrorCode::EmptyInput, "empty kernel");
    if (kernel_indices_.size() != kernel_points_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "kernel index and point counts differ");
    }
}

Neighbor UnweightedAfnIndex::query(PointView q) const {
    detail::require_same_dimension(dimension(), q.size());
    std::size_t best = 0;
    double best_sq = -1.0;
    for (std::size_t i = 0; i < kernel_points_.size(); ++i) {
        const double d = detail::squared_distance_unchecked(q, kernel_points_[i]);
        if (d > best_sq) {
            best_sq = d;
            best = i;
        }
    }
    return {kernel_indices_[best], std::sqrt(best_sq)};
}

}  // namespace awfn
