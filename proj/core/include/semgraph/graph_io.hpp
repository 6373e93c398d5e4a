#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "semgraph/graph.hpp"

namespace semgraph {

inline constexpr int kGraphFormatVersion = 1;

/// Serializes with the canonical (alphabetical) key order.
nlohmann::json graph_to_json(const SceneGraph& g);

/// Strict schema decoding: unknown or missing fields raise SchemaError.
/// Graph invariants are not checked here.
SceneGraph graph_from_json(const nlohmann::json& doc);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump_graph(const SceneGraph& g);

/// Reads and schema-checks a graph file without enforcing invariants.
SceneGraph read_graph(const std::filesystem::path& path);

/// Reads a graph file and requires it to pass validate().
/// Throws IoError, SchemaError (including unknown relation endpoints) or
/// InvariantError.
SceneGraph load_graph(const std::filesystem::path& path);

void save_graph(const SceneGraph& g, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

nlohmann::json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace semgraph
