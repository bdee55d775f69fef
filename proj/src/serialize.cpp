#include "awfn/serialize.hpp"

#include <fstream>
#include <string>

#include "awfn/error.hpp"

namespace awfn {
namespace {

constexpr const char* kUnweightedFormat = "awfn.unweighted-index";
constexpr const char* kWeightedFormat = "awfn.weighted-index";

Json point_json(PointView p) { return Json(std::vector<double>(p.begin(), p.end())); }

void require_header(const Json& j, const char* format) {
    if (!j.is_object() || j.value("format", std::string()) != format) {
        throw Error(ErrorCode::Parse, std::string("expected a ") + format + " document");
    }
    if (j.value("version", -1) != kIndexFormatVersion) {
        throw Error(ErrorCode::Parse, "unsupported index version");
    }
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("malformed index: ") + e.what());
    }
}

}  // namespace

Json to_json(const UnweightedAfnIndex& index) {
    Json j;
    j["format"] = kUnweightedFormat;
    j["version"] = kIndexFormatVersion;
    j["epsilon"] = index.epsilon();
    j["dimension"] = index.dimension();
    j["kernel_indices"] = std::vector<std::size_t>(index.kernel_indices().begin(), index.kernel_indices().end());
    Json pts = Json::array();
    for (std::size_t i = 0; i < index.kernel_points().size(); ++i) pts.push_back(point_json(index.kernel_points()[i]));
    j["points"] = std::move(pts);
    return j;
}

UnweightedAfnIndex unweighted_index_from_json(const Json& j) {
    require_header(j, kUnweightedFormat);
    return guarded([&] {
        const auto dim = j.at("dimension").get<std::size_t>();
        PointSet points(dim);
        for (const auto& p : j.at("points")) points.push_back(p.get<std::vector<double>>());
        return UnweightedAfnIndex(j.at("epsilon").get<double>(),
                                  j.at("kernel_indices").get<std::vector<std::size_t>>(), std::move(points));
    });
}

Json to_json(const WeightedAfnIndex& index) {
    const auto& parts = index.parts();
    Json j;
    j["format"] = kWeightedFormat;
    j["version"] = kIndexFormatVersion;
    j["epsilon"] = parts.epsilon;
    j["dimension"] = index.dimension();
    j["point_count"] = parts.point_count;
    j["p1"] = {{"index", parts.p1_index}, {"point", point_json(parts.p1.view())}};
    j["weights"] = parts.weights;
    Json buckets = Json::array();
    for (const auto& b : parts.buckets) {
        buckets.push_back({{"level", b.level}, {"members", b.members}, {"index", to_json(b.index)}});
    }
    j["buckets"] = std::move(buckets);
    Json entries = Json::array();
    const auto& pared = parts.pared;
    for (std::size_t i = 0; i < pared.size(); ++i) {
        const auto& e = pared.entries()[i];
        entries.push_back({{"index", e.index},
                           {"distance", e.distance},
                           {"weighted_distance", e.weighted_distance},
                           {"point", point_json(pared.points()[i])}});
    }
    j["pared_s2"] = {{"source_size", pared.source_size()}, {"entries", std::move(entries)}};
    return j;
}

WeightedAfnIndex weighted_index_from_json(const Json& j) {
    require_header(j, kWeightedFormat);
    return guarded([&] {
        WeightedAfnIndex::Parts parts;
        const auto dim = j.at("dimension").get<std::size_t>();
        parts.epsilon = j.at("epsilon").get<double>();
        parts.point_count = j.at("point_count").get<std::size_t>();
        parts.p1_index = j.at("p1").at("index").get<std::size_t>();
        parts.p1 = Point(j.at("p1").at("point").get<std::vector<double>>());
        detail::require_same_dimension(dim, parts.p1.dimension());
        parts.weights = j.at("weights").get<std::vector<double>>();
        for (const auto& b : j.at("buckets")) {
            auto index = unweighted_index_from_json(b.at("index"));
            detail::require_same_dimension(dim, index.dimension());
            for (std::size_t k : index.kernel_indices()) {
                if (k >= parts.weights.size()) throw Error(ErrorCode::OutOfRange, "kernel index out of range");
            }
            parts.buckets.push_back({b.at("level").get<int>(), b.at("members").get<std::vector<std::size_t>>(),
                                     std::move(index)});
        }
        const auto& s2 = j.at("pared_s2");
        std::vector<ParedFarList::Entry> entries;
        PointSet points(dim);
        std::vector<double> weights;
        for (const auto& e : s2.at("entries")) {
            const auto idx = e.at("index").get<std::size_t>();
            if (idx >= parts.weights.size()) throw Error(ErrorCode::OutOfRange, "pared index out of range");
            entries.push_back({idx, e.at("distance").get<double>(), e.at("weighted_distance").get<double>()});
            points.push_back(e.at("point").get<std::vector<double>>());
            weights.push_back(parts.weights[idx]);
        }
        parts.pared = ParedFarList(std::move(entries), std::move(points), std::move(weights),
                                   s2.at("source_size").get<std::size_t>());
        return WeightedAfnIndex(std::move(parts));
    });
}

void save_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << j.dump() << '\n';
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

}  // namespace awfn
