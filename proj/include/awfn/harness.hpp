#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "awfn/csv.hpp"
#include "awfn/serialize.hpp"
#include "awfn/weighted_index.hpp"

namespace awfn::harness {

using Rng = std::mt19937_64;

enum class Distribution { UniformCube, Clustered, Annulus };

struct WeightModel {
    enum class Kind { Unit, LogUniform };
    Kind kind = Kind::Unit;
    double lo = 1e-3;
    double hi = 1.0;
};

struct GenOptions {
    Distribution distribution = Distribution::UniformCube;
    std::size_t n = 0;
    std::size_t dimension = 2;
    WeightModel weights;
    std::uint64_t seed = 0;
    // annulus radii
    double r_in = 0.5;
    double r_out = 1.0;
    // clustered: gaussian blobs with centers in the unit cube
    std::size_t clusters = 8;
    double cluster_sigma = 0.02;
};

Distribution parse_distribution(const std::string& name);

/// Throws OutOfRange on bad parameters. Output depends only on the options.
PointTable generate(const GenOptions& options);

/// Same as generate() but draws from an existing generator.
PointTable generate(const GenOptions& options, Rng& rng);

/// Uniform random unit vector in R^dim.
std::vector<double> random_direction(std::size_t dim, Rng& rng);

struct VerifyOptions {
    double epsilon = 0.1;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    bool afn = true;
    bool dilation = false;
    unsigned threads = 1;
};

struct VerifyReport {
    std::size_t checks = 0;
    std::size_t violations = 0;
    /// Smallest answer / optimum ratio seen over weighted queries.
    double worst_query_ratio = 1.0;
    /// Smallest w(u,K) / w(u,P) over sampled directions.
    double worst_width_ratio = 1.0;
    /// Smallest approx / exact dilation ratio, when the dilation suite ran.
    std::optional<double> worst_dilation_ratio;
    /// First violation, serialized so it can be replayed.
    std::optional<Json> replay;

    bool passed() const noexcept { return violations == 0; }
};

/// Runs the oracle comparisons. When `index` is given it is checked as-is
/// against the data; otherwise one is built.
VerifyReport verify(const PointTable& data, const VerifyOptions& options, const WeightedAfnIndex* index = nullptr);

void write_verify_summary(std::ostream& out, const VerifyReport& report, const VerifyOptions& options);

struct BenchOptions {
    std::vector<std::size_t> sizes{1000, 10000, 100000};
    std::size_t dimension = 2;
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    std::size_t queries = 200;
    std::size_t repetitions = 5;
    WeightModel weights{WeightModel::Kind::LogUniform, 1e-3, 1.0};
};

struct BenchRecord {
    std::size_t n = 0;
    std::size_t dimension = 0;
    double epsilon = 0.0;
    std::size_t kernel_size = 0;
    std::size_t bucket_count = 0;
    std::size_t pared_size = 0;
    double build_time = 0.0;         // seconds, median
    double mean_query_time = 0.0;    // seconds per query, median
    double scan_query_time = 0.0;    // seconds per query, median
    double speedup_vs_scan = 0.0;
};

/// Times index build and queries against a linear scan. Sizes must be
/// ascending. Timings are medians of `repetitions` runs after one warmup.
std::vector<BenchRecord> bench(const BenchOptions& options);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace awfn::harness
