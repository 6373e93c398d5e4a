#pragma once

#include <nlohmann/json.hpp>

#include "semgraph/bench.hpp"
#include "semgraph/matcher.hpp"
#include "semgraph/relations.hpp"
#include "semgraph/synthgen.hpp"

namespace semgraph {

// JSON forms of the configuration types. Missing fields keep their defaults;
// unknown fields and wrong types raise SchemaError.

MatchConfig match_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MatchConfig& c);

RelationParams relation_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RelationParams& p);

/// Layout fields read onto `base`.
LayoutSpec layout_spec_from_json(const nlohmann::json& j, LayoutSpec base = {});
nlohmann::json to_json(const LayoutSpec& s);

/// `rigid_offset` is {"yaw": radians, "translation": [x, y, z]}.
SGraphDerivationSpec derivation_spec_from_json(const nlohmann::json& j);

BenchSpec bench_spec_from_json(const nlohmann::json& j);

}  // namespace semgraph
