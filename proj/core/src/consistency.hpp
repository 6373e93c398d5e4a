#pragma once

// Index-based view of a scene graph shared by the matcher routes.

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "semgraph/graph.hpp"
#include "semgraph/matcher.hpp"

namespace semgraph::detail {

struct DensePlane {
  NodeId id;
  Vec3 normal;
  double offset = 0.0;
  int owner = -1;  // room index
};

/// Category counts as (category index, count), sorted by index.
using EncodedContent = std::vector<std::pair<int, std::size_t>>;

/// Category names shared by the graphs being compared.
using CategoryTable = std::unordered_map<std::string, int>;

struct DenseGraph {
  std::vector<NodeId> room_ids;
  std::vector<Vec3> centers;
  std::vector<std::vector<int>> room_planes;  // plane indices per room
  std::vector<DensePlane> planes;
  std::vector<EncodedContent> room_content;
  std::vector<EncodedContent> plane_content;
  std::unordered_map<std::string, int> room_index;
  std::unordered_map<std::string, int> plane_index;
};

/// Categories are interned into `table`, so graphs built with the same table
/// have comparable contents.
DenseGraph make_dense(const SceneGraph& g, CategoryTable& table);

/// Semantic containment on encoded contents.
bool contains(const EncodedContent& a, const EncodedContent& s);

/// Signed angle from n1 to n2 about +z, in (-pi, pi].
double yaw_angle(const Vec3& n1, const Vec3& n2);

/// |a - b| wrapped to [0, pi].
double angle_difference(double a, double b);

/// Direct evaluation of every rule over the mapped entries (-1 = unmapped).
/// Plane ownership must already be consistent with the room map.
std::optional<double> evaluate_assignment(const DenseGraph& a, const DenseGraph& s,
                                          std::span<const int> room_map,
                                          std::span<const int> plane_map, const MatchConfig& cfg);

}  // namespace semgraph::detail
