#pragma once

// JSON and CSV projections of codes, census tables and experiment reports.
// JSON documents carry "schema": "permtree/1".

#include <string>

#include "json.hpp"
#include "permtree/counting.hpp"
#include "permtree/montecarlo.hpp"
#include "permtree/tree_codec.hpp"

namespace permtree {

inline constexpr const char* kSchema = "permtree/1";

nlohmann::json to_json(const TreeCode& code);
/// Reads {"n": N, "code": "0x..."}; throws InvalidArgument.
TreeCode code_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Tolerances& t);
/// Missing keys keep their defaults; throws InvalidConfig on bad types.
Tolerances tolerances_from_json(const nlohmann::json& j);
Tolerances load_tolerances(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StatReport& r);
/// Columns value,count,expected.
std::string histogram_csv(const StatReport& r);

nlohmann::json to_json(const CensusTable& t);
/// Columns n,class,m,count.
std::string census_csv(const CensusTable& t);

}  // namespace permtree
