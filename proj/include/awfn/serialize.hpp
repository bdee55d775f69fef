#pragma once

#include <filesystem>

#include <json.hpp>

#include "awfn/kernel.hpp"
#include "awfn/weighted_index.hpp"

namespace awfn {

using Json = nlohmann::ordered_json;

inline constexpr int kIndexFormatVersion = 1;

// Field order is fixed; doubles are written with round-trip precision, so
// save -> load reproduces the index exactly.
Json to_json(const UnweightedAfnIndex& index);
Json to_json(const WeightedAfnIndex& index);

UnweightedAfnIndex unweighted_index_from_json(const Json& j);
WeightedAfnIndex weighted_index_from_json(const Json& j);

void save_json(const std::filesystem::path& path, const Json& j);
Json load_json(const std::filesystem::path& path);

}  // namespace awfn
