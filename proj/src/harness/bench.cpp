#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>

#include "awfn/error.hpp"
#include "awfn/harness.hpp"
#include "awfn/kernel.hpp"

namespace awfn::harness {
namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double seconds(F&& f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// One discarded warmup, then the median of `reps` timed runs.
template <class F>
double median_time(std::size_t reps, F&& f) {
    f();
    std::vector<double> t(reps);
    for (auto& x : t) x = seconds(f);
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

}  // namespace

std::vector<BenchRecord> bench(const BenchOptions& o) {
    require_epsilon(o.epsilon);
    if (o.sizes.empty() || !std::is_sorted(o.sizes.begin(), o.sizes.end())) {
        throw Error(ErrorCode::OutOfRange, "bench sizes must be nonempty and ascending");
    }
    if (o.repetitions < 5) throw Error(ErrorCode::OutOfRange, "bench needs at least 5 repetitions");
    if (o.queries == 0) throw Error(ErrorCode::OutOfRange, "bench needs at least one query");

    Rng rng(o.seed);
    std::vector<BenchRecord> records;
    for (std::size_t n : o.sizes) {
        GenOptions gen;
        gen.n = n;
        gen.dimension = o.dimension;
        gen.weights = o.weights;
        const auto set = generate(gen, rng).weighted();

        std::uniform_real_distribution<double> coord(-0.5, 1.5);
        PointSet queries(o.dimension);
        std::vector<double> q(o.dimension);
        for (std::size_t t = 0; t < o.queries; ++t) {
            for (double& x : q) x = coord(rng);
            queries.push_back(q);
        }

        BenchRecord rec;
        rec.n = n;
        rec.dimension = o.dimension;
        rec.epsilon = o.epsilon;

        std::optional<WeightedAfnIndex> index;
        rec.build_time = median_time(o.repetitions, [&] { index.emplace(WeightedAfnIndex::build(set, o.epsilon)); });

        volatile double sink = 0.0;
        const double batch = median_time(o.repetitions, [&] {
            double acc = 0.0;
            for (std::size_t t = 0; t < queries.size(); ++t) acc += index->query(queries[t]).distance;
            sink = sink + acc;
        });
        const double scan = median_time(o.repetitions, [&] {
            double acc = 0.0;
            for (std::size_t t = 0; t < queries.size(); ++t) acc += brute_force_weighted(set, queries[t]).distance;
            sink = sink + acc;
        });
        rec.mean_query_time = batch / static_cast<double>(queries.size());
        rec.scan_query_time = scan / static_cast<double>(queries.size());
        rec.speedup_vs_scan = rec.mean_query_time > 0.0 ? rec.scan_query_time / rec.mean_query_time : 0.0;

        rec.kernel_size = build_kernel(set.points(), o.epsilon).size();
        rec.bucket_count = index->buckets().size();
        rec.pared_size = index->pared().size();
        records.push_back(rec);
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "n,D,epsilon,kernel_size,bucket_count,pared_size,build_time,mean_query_time,scan_query_time,"
           "speedup_vs_scan\n";
    for (const auto& r : records) {
        out << r.n << ',' << r.dimension << ',' << format_double(r.epsilon) << ',' << r.kernel_size << ','
            << r.bucket_count << ',' << r.pared_size << ',' << r.build_time << ',' << r.mean_query_time << ','
            << r.scan_query_time << ',' << r.speedup_vs_scan << '\n';
    }
}

}  // namespace awfn::harness
