// Command line front end: gen, build, query, dilation, hub, bench, verify.
//
// Exit codes: 0 success, 1 guarantee violation (verify), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "awfn/csv.hpp"
#include "awfn/dilation.hpp"
#include "awfn/error.hpp"
#include "awfn/harness.hpp"
#include "awfn/parallel.hpp"
#include "awfn/serialize.hpp"
#include "awfn/weighted_index.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

using namespace awfn;

/// Output target: a file when a path is given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error(ErrorCode::Io, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    std::string input;
    std::string output;
    double eps = 0.1;
    unsigned parallel = 1;
};

struct GenArgs {
    std::string dist = "uniform-cube";
    std::size_t n = 0;
    std::size_t dim = 2;
    std::string weights = "unit";
    double wmin = 1e-3;
    double wmax = 1.0;
    double r_in = 0.5;
    double r_out = 1.0;
    std::size_t clusters = 8;
    double sigma = 0.02;
    std::uint64_t seed = 0;
    std::string output;
};

struct QueryArgs {
    Common common;
    std::string index;
    std::string queries;
    std::vector<std::string> points;
};

struct DilationArgs {
    Common common;
    std::string mode = "adaptive";
    std::size_t k = 0;
    std::string pairs = "all";
};

struct BenchArgs {
    std::vector<std::size_t> sizes{1000, 10000, 100000};
    double eps = 0.1;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::size_t queries = 200;
    std::size_t reps = 5;
    std::string weights = "log-uniform";
    std::string output;
};

struct VerifyArgs {
    Common common;
    std::string index;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string suite = "afn";
    std::string replay = "verify_replay.json";
};

harness::WeightModel weight_model(const std::string& name, double lo, double hi) {
    if (name == "unit") return {harness::WeightModel::Kind::Unit, lo, hi};
    if (name == "log-uniform") return {harness::WeightModel::Kind::LogUniform, lo, hi};
    throw Error(ErrorCode::OutOfRange, "unknown weight model '" + name + "'");
}

void require_input(const std::string& path) {
    if (path.empty()) throw Error(ErrorCode::OutOfRange, "--input is required");
}

int run_gen(const GenArgs& a) {
    harness::GenOptions o;
    o.distribution = harness::parse_distribution(a.dist);
    o.n = a.n;
    o.dimension = a.dim;
    o.weights = weight_model(a.weights, a.wmin, a.wmax);
    o.r_in = a.r_in;
    o.r_out = a.r_out;
    o.clusters = a.clusters;
    o.cluster_sigma = a.sigma;
    o.seed = a.seed;
    const auto table = harness::generate(o);
    Sink sink(a.output);
    std::span<const double> weights;
    if (table.has_weight_column) weights = table.weights;
    write_point_table(sink.stream(), table.points, weights);
    return 0;
}

int run_build(const Common& a) {
    require_input(a.input);
    const auto table = read_point_table(a.input);
    const auto index = WeightedAfnIndex::build(table.weighted(), a.eps);
    Sink sink(a.output);
    sink.stream() << to_json(index).dump() << '\n';
    return 0;
}

int run_query(const QueryArgs& a) {
    std::optional<WeightedAfnIndex> index;
    if (!a.index.empty()) {
        index.emplace(weighted_index_from_json(load_json(a.index)));
    } else {
        require_input(a.common.input);
        index.emplace(WeightedAfnIndex::build(read_point_table(a.common.input).weighted(), a.common.eps));
    }
    std::vector<std::vector<double>> queries;
    if (!a.queries.empty()) {
        const auto table = read_point_table(a.queries);
        for (std::size_t i = 0; i < table.points.size(); ++i) {
            const auto p = table.points[i];
            queries.emplace_back(p.begin(), p.end());
        }
    }
    for (const auto& text : a.points) queries.push_back(parse_coordinates(text));
    if (queries.empty()) throw Error(ErrorCode::EmptyInput, "no query points (use --queries or --point)");

    std::vector<Neighbor> answers(queries.size());
    parallel_for(queries.size(), a.common.parallel, [&](std::size_t i) { answers[i] = index->query(queries[i]); });

    Sink sink(a.common.output);
    auto& out = sink.stream();
    out << "query,index,weighted_distance\n";
    for (std::size_t i = 0; i < answers.size(); ++i) {
        out << i << ',' << answers[i].index << ',' << format_double(answers[i].distance) << '\n';
    }
    return 0;
}

DilationReport run_dilation_report(const DilationArgs& a) {
    require_input(a.common.input);
    if (a.pairs != "all") {
        throw Error(ErrorCode::OutOfRange, "--pairs " + a.pairs + " is not available; only 'all' is supported");
    }
    DilationOptions o;
    if (a.mode == "adaptive") {
        o.mode = CenterMode::Adaptive;
    } else if (a.mode == "paper-k") {
        o.mode = CenterMode::NearestK;
    } else {
        throw Error(ErrorCode::OutOfRange, "unknown mode '" + a.mode + "'");
    }
    o.k = a.k;
    o.threads = a.common.parallel;
    const auto table = read_point_table(a.common.input);
    return approx_all_dilations(table.points, a.common.eps, o);
}

int run_dilation(const DilationArgs& a) {
    const auto report = run_dilation_report(a);
    Sink sink(a.common.output);
    auto& out = sink.stream();
    out << "index,dilation_approx,classification\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        out << i << ',' << format_double(report.values[i]) << ',' << to_string(report.classes[i]) << '\n';
    }
    return 0;
}

int run_hub(const DilationArgs& a) {
    const auto report = run_dilation_report(a);
    const auto hub = select_hub(report);
    Json j;
    j["hub_index"] = hub.index;
    j["dilation_approx"] = hub.dilation;
    j["epsilon"] = a.common.eps;
    j["mode"] = to_string(report.mode);
    Sink sink(a.common.output);
    sink.stream() << j.dump() << '\n';
    return 0;
}

int run_bench(const BenchArgs& a) {
    harness::BenchOptions o;
    o.sizes = a.sizes;
    o.dimension = a.dim;
    o.epsilon = a.eps;
    o.seed = a.seed;
    o.queries = a.queries;
    o.repetitions = a.reps;
    o.weights = weight_model(a.weights, 1e-3, 1.0);
    const auto records = harness::bench(o);
    Sink sink(a.output);
    harness::write_bench_csv(sink.stream(), records);
    return 0;
}

int run_verify(const VerifyArgs& a) {
    require_input(a.common.input);
    harness::VerifyOptions o;
    o.epsilon = a.common.eps;
    o.trials = a.trials;
    o.seed = a.seed;
    o.threads = a.common.parallel;
    if (a.suite == "afn") {
        o.afn = true;
        o.dilation = false;
    } else if (a.suite == "dilation") {
        o.afn = false;
        o.dilation = true;
    } else if (a.suite == "all") {
        o.afn = o.dilation = true;
    } else {
        throw Error(ErrorCode::OutOfRange, "unknown suite '" + a.suite + "'");
    }
    const auto table = read_point_table(a.common.input);
    std::optional<WeightedAfnIndex> index;
    if (!a.index.empty()) index.emplace(weighted_index_from_json(load_json(a.index)));
    const auto report = harness::verify(table, o, index ? &*index : nullptr);

    Sink sink(a.common.output);
    harness::write_verify_summary(sink.stream(), report, o);
    if (report.replay) {
        save_json(a.replay, *report.replay);
        sink.stream() << "replay: " << a.replay << '\n';
    }
    return report.passed() ? 0 : kExitViolation;
}

void add_common(CLI::App* cmd, Common& c, bool needs_eps = true) {
    cmd->add_option("--input", c.input, "Point CSV (x0,...,x{D-1}[,weight])");
    cmd->add_option("--output", c.output, "Output path (default: stdout)");
    if (needs_eps) cmd->add_option("--eps", c.eps, "Approximation parameter in (0,1)")->capture_default_str();
    cmd->add_option("--parallel", c.parallel, "Worker threads for queries")->capture_default_str()->check(
        CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate weighted farthest neighbours and minimum dilation stars"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded synthetic point CSV");
    gen_cmd->add_option("--dist", gen.dist, "uniform-cube | clustered | annulus")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Number of points")->required();
    gen_cmd->add_option("--dim", gen.dim, "Dimension")->capture_default_str();
    gen_cmd->add_option("--weights", gen.weights, "unit | log-uniform")->capture_default_str();
    gen_cmd->add_option("--wmin", gen.wmin, "Smallest log-uniform weight")->capture_default_str();
    gen_cmd->add_option("--wmax", gen.wmax, "Largest log-uniform weight")->capture_default_str();
    gen_cmd->add_option("--r-in", gen.r_in, "Annulus inner radius")->capture_default_str();
    gen_cmd->add_option("--r-out", gen.r_out, "Annulus outer radius")->capture_default_str();
    gen_cmd->add_option("--clusters", gen.clusters, "Cluster count")->capture_default_str();
    gen_cmd->add_option("--sigma", gen.sigma, "Cluster standard deviation")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--output", gen.output, "Output path (default: stdout)");

    Common build;
    auto* build_cmd = app.add_subcommand("build", "Build a weighted index and write it as JSON");
    add_common(build_cmd, build);

    QueryArgs query;
    auto* query_cmd = app.add_subcommand("query", "Approximate weighted farthest neighbour queries");
    add_common(query_cmd, query.common);
    query_cmd->add_option("--index", query.index, "Index JSON from 'build'");
    query_cmd->add_option("--queries", query.queries, "Query point CSV");
    query_cmd->add_option("--point", query.points, "Inline query point, e.g. --point 0.5,1");

    DilationArgs dil;
    auto* dil_cmd = app.add_subcommand("dilation", "Approximate dilation of every star center");
    add_common(dil_cmd, dil.common);
    dil_cmd->add_option("--mode", dil.mode, "adaptive | paper-k")->capture_default_str();
    dil_cmd->add_option("--k", dil.k, "Exact centers nearest the unconstrained optimum (paper-k)");
    dil_cmd->add_option("--pairs", dil.pairs, "Candidate pairs: all")->capture_default_str();

    DilationArgs hub;
    auto* hub_cmd = app.add_subcommand("hub", "Select an approximately optimal star hub");
    add_common(hub_cmd, hub.common);
    hub_cmd->add_option("--mode", hub.mode, "adaptive | paper-k")->capture_default_str();
    hub_cmd->add_option("--k", hub.k, "Exact centers nearest the unconstrained optimum (paper-k)");
    hub_cmd->add_option("--pairs", hub.pairs, "Candidate pairs: all")->capture_default_str();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time index queries against a linear scan");
    bench_cmd->add_option("--sizes", bench.sizes, "Ascending dataset sizes")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--eps", bench.eps, "Approximation parameter in (0,1)")->capture_default_str();
    bench_cmd->add_option("--dim", bench.dim, "Dimension")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
    bench_cmd->add_option("--queries", bench.queries, "Queries per size")->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps, "Timed repetitions (>= 5)")->capture_default_str();
    bench_cmd->add_option("--weights", bench.weights, "unit | log-uniform")->capture_default_str();
    bench_cmd->add_option("--output", bench.output, "Output path (default: stdout)");

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "Check approximation guarantees against brute force");
    add_common(ver_cmd, ver.common);
    ver_cmd->add_option("--index", ver.index, "Check this index JSON instead of building one");
    ver_cmd->add_option("--trials", ver.trials, "Random queries")->capture_default_str();
    ver_cmd->add_option("--seed", ver.seed, "Random seed")->capture_default_str();
    ver_cmd->add_option("--suite", ver.suite, "afn | dilation | all")->capture_default_str();
    ver_cmd->add_option("--replay", ver.replay, "Where to write the first violating instance")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*build_cmd) return run_build(build);
        if (*query_cmd) return run_query(query);
        if (*dil_cmd) return run_dilation(dil);
        if (*hub_cmd) return run_hub(hub);
        if (*bench_cmd) return run_bench(bench);
        if (*ver_cmd) return run_verify(ver);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
