// Acceptance gate. Prints one PASS/FAIL line per criterion.
//
//   awfn_acceptance            run every criterion
//   awfn_acceptance 3 5        run only criteria 3 and 5
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "awfn/csv.hpp"
#include "awfn/dilation.hpp"
#include "awfn/harness.hpp"
#include "awfn/kernel.hpp"
#include "awfn/weighted_index.hpp"

using namespace awfn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

double elapsed(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// ---------------------------------------------------------------------------
// shared randomized suite for the weighted guarantee and kernel width

struct Instance {
    PointTable table;
    double eps;
};

constexpr std::size_t kWeightedInstances = 1000;
constexpr std::size_t kQueriesPerInstance = 100;
constexpr std::size_t kWidthDirections = 1000;

Instance weighted_instance(std::size_t i) {
    static const std::size_t dims[] = {2, 3, 4};
    static const double eps[] = {0.5, 0.2, 0.1, 0.05};
    oracle::Rng rng(0x5eed0000 + i);
    std::uniform_int_distribution<std::size_t> n_dist(10, 2000);
    harness::GenOptions g;
    g.n = n_dist(rng);
    g.dimension = dims[i % 3];
    g.weights = {harness::WeightModel::Kind::LogUniform, 1e-3, 1.0};
    return {harness::generate(g, rng), eps[(i / 3) % 4]};
}

Outcome weighted_guarantee() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t violations = 0, queries = 0;
    double worst = 1.0;
    for (std::size_t i = 0; i < kWeightedInstances; ++i) {
        const auto inst = weighted_instance(i);
        const auto set = inst.table.weighted();
        const std::vector<double> w(set.weights().begin(), set.weights().end());
        const auto index = WeightedAfnIndex::build(set, inst.eps);
        oracle::Rng rng(0xabc000 + i);
        std::uniform_real_distribution<double> coord(-0.5, 1.5);
        std::vector<double> q(set.dimension());
        for (std::size_t t = 0; t < kQueriesPerInstance; ++t) {
            for (double& x : q) x = coord(rng);
            const double exact = oracle::weighted_max(set.points(), w, q);
            const double got = index.query(q).distance;
            ++queries;
            if (exact > 0) worst = std::min(worst, got / exact);
            if (got < (1 - inst.eps) * exact || got > exact) ++violations;
        }
    }
    const double secs = elapsed(start);
    return {violations == 0 && secs < 300.0,
            std::to_string(kWeightedInstances) + " instances, " + std::to_string(queries) + " queries, " +
                std::to_string(violations) + " violations, worst ratio " + fmt(worst) + ", " + fmt(secs) +
                " s (limit 300 s)"};
}

/// Worst w(u,K)/w(u,P) over random directions; counts violations of the (1-eps) floor.
struct WidthTally {
    std::size_t kernels = 0;
    std::size_t violations = 0;
    double worst = 1.0;

    void check(const PointSet& pts, const std::vector<std::size_t>& members, std::span<const std::size_t> kernel,
               double eps, oracle::Rng& rng) {
        ++kernels;
        const std::vector<std::size_t> ks(kernel.begin(), kernel.end());
        for (std::size_t t = 0; t < kWidthDirections; ++t) {
            const auto u = oracle::unit_vector(pts.dimension(), rng);
            const double wp = oracle::width(pts, members, u);
            const double wk = oracle::width(pts, ks, u);
            if (wk < (1 - eps) * wp || wk > wp) ++violations;
            if (wp > 0) worst = std::min(worst, wk / wp);
        }
    }
};

Outcome kernel_width() {
    WidthTally tally;
    oracle::Rng rng(0xd1ec);
    for (std::size_t i = 0; i < kWeightedInstances; ++i) {
        const auto inst = weighted_instance(i);
        const auto set = inst.table.weighted();
        const auto index = WeightedAfnIndex::build(set, inst.eps);
        for (const auto& b : index.buckets()) {
            tally.check(set.points(), b.members, b.index.kernel_indices(), b.index.epsilon(), rng);
        }
        const auto all = oracle::iota(set.size());
        tally.check(set.points(), all, build_kernel(set.points(), inst.eps).indices(), inst.eps, rng);
    }
    // large clouds where the kernel is a genuine subset
    for (std::size_t dim : {2, 3}) {
        for (double eps : {0.4, 0.1, 0.025}) {
            const auto pts = oracle::random_points(100000, dim, rng);
            tally.check(pts, oracle::iota(pts.size()), build_kernel(pts, eps).indices(), eps, rng);
        }
    }
    return {tally.violations == 0, std::to_string(tally.kernels) + " kernels x " +
                                       std::to_string(kWidthDirections) + " directions, " +
                                       std::to_string(tally.violations) + " violations, worst ratio " +
                                       fmt(tally.worst)};
}

Outcome kernel_size_trend() {
    oracle::Rng rng(0x517e);
    const auto pts = oracle::random_points(100000, 2, rng);
    bool ok = true;
    std::string detail;
    for (double eps : {0.4, 0.1}) {
        const auto coarse = build_kernel(pts, eps).size();
        const auto fine = build_kernel(pts, eps / 4).size();
        ok = ok && fine <= 4 * coarse;
        detail += "|K(" + fmt(eps / 4) + ")|=" + std::to_string(fine) + " vs 4*|K(" + fmt(eps) +
                  ")|=" + std::to_string(4 * coarse) + "; ";
    }
    return {ok, detail};
}

Outcome query_scaling() {
    harness::BenchOptions o;
    o.sizes = {1000, 10000, 100000, 1000000};
    o.dimension = 2;
    o.epsilon = 0.1;
    o.seed = 0xbe4c;
    o.queries = 200;
    o.repetitions = 5;
    o.weights = {harness::WeightModel::Kind::LogUniform, 1e-3, 1.0};
    const auto records = harness::bench(o);
    bool sublinear = true;
    std::string detail;
    for (std::size_t i = 0; i < records.size(); ++i) {
        detail += "n=" + std::to_string(records[i].n) + " q=" + fmt(records[i].mean_query_time * 1e6) + "us; ";
        if (i > 0) {
            const double time_ratio = records[i].mean_query_time / records[i - 1].mean_query_time;
            const double n_ratio = double(records[i].n) / double(records[i - 1].n);
            sublinear = sublinear && time_ratio < n_ratio;
        }
    }
    const double speedup = records.back().speedup_vs_scan;
    detail += "speedup at 1e6 = " + fmt(speedup) + "x (need >= 10)";
    return {sublinear && speedup >= 10.0, detail};
}

// ---------------------------------------------------------------------------
// dilation suite shared by the sandwich and hub checks

constexpr std::size_t kDilationSets = 50;

struct DilationTrial {
    PointSet points;
    double eps;
};

DilationTrial dilation_trial(std::size_t i) {
    oracle::Rng rng(0xd11a0000 + i);
    std::uniform_int_distribution<std::size_t> n_dist(20, 300);
    const std::size_t n = i % 5 == 0 ? 300 : n_dist(rng);
    return {oracle::random_points(n, 2, rng), i % 2 == 0 ? 0.2 : 0.1};
}

Outcome dilation_sandwich() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t centers = 0, violations = 0, certified = 0;
    double worst = 1.0;
    for (std::size_t i = 0; i < kDilationSets; ++i) {
        const auto t = dilation_trial(i);
        const auto report = approx_all_dilations(t.points, t.eps);
        const auto exact = oracle::all_dilations(t.points);
        for (std::size_t c = 0; c < exact.size(); ++c) {
            ++centers;
            const double v = report.values[c];
            worst = std::min(worst, v / exact[c]);
            if (v < (1 - t.eps) * exact[c] || v > exact[c]) ++violations;
        }
        certified += report.count(Classification::CertifiedHigh);
    }
    const double secs = elapsed(start);
    return {violations == 0 && secs < 600.0,
            std::to_string(kDilationSets) + " sets, " + std::to_string(centers) + " centers (" +
                std::to_string(certified) + " certified high), " + std::to_string(violations) +
                " violations, worst ratio " + fmt(worst) + ", " + fmt(secs) + " s (limit 600 s)"};
}

Outcome hub_quality() {
    std::size_t bad = 0;
    double worst = 1.0;
    for (std::size_t i = 0; i < kDilationSets; ++i) {
        const auto t = dilation_trial(i);
        const auto hub = select_hub(approx_all_dilations(t.points, t.eps));
        const auto exact = oracle::all_dilations(t.points);
        const double opt = *std::min_element(exact.begin(), exact.end());
        worst = std::max(worst, exact[hub.index] / opt);
        if (exact[hub.index] > opt / (1 - t.eps)) ++bad;
    }
    const PointSet line{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
    const auto hub = select_hub(approx_all_dilations(line, 0.1));
    const double hub_exact = oracle::all_dilations(line)[hub.index];
    const bool line_ok = hub.index == 2 && hub_exact == 1.0;
    return {bad == 0 && line_ok, std::to_string(bad) + " of " + std::to_string(kDilationSets) +
                                     " trials exceed opt/(1-eps) (worst " + fmt(worst) +
                                     "); collinear 5-point hub index " + std::to_string(hub.index) +
                                     " with dilation " + fmt(hub_exact) + " (required: index 2, dilation 1)"};
}

Outcome unconstrained_center() {
    const PointSet tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    const auto grid = oracle::grid_min_2d(tri, -0.5, 1.5, 401, 4);
    const auto r = solve_unconstrained_center(tri, CandidatePairSet::all_pairs(3));
    const double dv = std::abs(r.dilation - grid.value);
    const double dc = std::hypot(r.center[0] - grid.at[0], r.center[1] - grid.at[1]);
    // the grid must itself agree with the closed form
    const bool grid_ok = std::abs(grid.value - 2 / std::sqrt(3.0)) <= 1e-6 &&
                         std::hypot(grid.at[0] - 0.5, grid.at[1] - std::sqrt(3.0) / 6) <= 1e-4;
    return {grid_ok && dv <= 1e-6 && dc <= 1e-4, "solver " + fmt(r.dilation) + " vs grid " + fmt(grid.value) +
                                          " (|diff| " + fmt(dv) + " <= 1e-6), center offset " + fmt(dc) +
                                          " <= 1e-4"};
}

// ---------------------------------------------------------------------------
// determinism through the command line binary

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(AWFN_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// Drops the timing columns of a bench CSV.
std::string bench_non_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int col = 0; std::getline(cells, cell, ','); ++col) {
            if (col < 6) out += cell + ',';
        }
        out += '\n';
    }
    return out;
}

Outcome determinism() {
    const auto dir = fs::temp_directory_path() / "awfn_acceptance";
    fs::create_directories(dir);
    const auto data = (dir / "data.csv").string();
    if (run("gen --dist clustered --n 400 --weights log-uniform --seed 11 --output " + data) != 0) {
        return {false, "gen failed"};
    }
    const std::map<std::string, std::string> commands{
        {"gen", "gen --dist annulus --n 300 --dim 3 --weights log-uniform --seed 5"},
        {"build", "build --eps 0.2 --input " + data},
        {"query", "query --eps 0.1 --input " + data + " --queries " + data + " --parallel 2"},
        {"dilation", "dilation --eps 0.1 --input " + data},
        {"dilation-paper-k", "dilation --eps 0.1 --mode paper-k --k 7 --input " + data},
        {"hub", "hub --eps 0.2 --input " + data},
        {"verify", "verify --eps 0.1 --trials 50 --seed 3 --suite all --input " + data},
        {"bench", "bench --sizes 1000,5000 --queries 20 --seed 4"},
    };
    std::vector<std::string> differing;
    for (const auto& [name, args] : commands) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            const auto out = dir / (name + std::to_string(rep) + ".out");
            if (run(args + " --output " + out.string()) != 0) return {false, name + " exited nonzero"};
            outputs[rep] = slurp(out);
        }
        if (name == "bench") {
            for (auto& s : outputs) s = bench_non_timing(s);
        }
        if (outputs[0].empty() || outputs[0] != outputs[1]) differing.push_back(name);
    }
    std::string detail = std::to_string(commands.size()) + " subcommand runs compared";
    for (const auto& d : differing) detail += "; differs: " + d;
    return {differing.empty(), detail};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "weighted query guarantee", weighted_guarantee},
        {2, "kernel directional width", kernel_width},
        {3, "kernel size trend", kernel_size_trend},
        {4, "query scaling", query_scaling},
        {5, "dilation sandwich", dilation_sandwich},
        {6, "hub quality", hub_quality},
        {7, "unconstrained center", unconstrained_center},
        {8, "determinism", determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
