#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "semgraph/graph.hpp"
#include "semgraph/matcher.hpp"
#include "semgraph/relations.hpp"

namespace semgraph {

enum class Symmetry { None, Local, Global };

std::string_view to_string(Symmetry s);
std::optional<Symmetry> parse_symmetry(std::string_view text);

struct RigidMotion {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
  /// Rotation by `yaw` about +z followed by `translation`.
  static RigidMotion yaw(double yaw, const Vec3& translation);
};

SceneGraph transform_graph(const SceneGraph& g, const RigidMotion& m);

inline constexpr double kRoomCenterZ = 1.5;

/// Axis-aligned room with four inward planes `<id>_w`, `_e`, `_s`, `_n`.
void add_rectangular_room(SceneGraph& g, const NodeId& id, double x0, double y0, double x1, double y1);

struct CategoryWeight {
  std::string category;
  double weight = 1.0;
};

/// Random rectangular-room layout. Sizes and thicknesses are in meters;
/// object_density is the fraction of object nodes among all nodes.
struct LayoutSpec {
  std::size_t n_rooms = 1;
  double room_size_min = 3.0;
  double room_size_max = 6.0;
  double wall_thickness_min = 0.1;
  double wall_thickness_max = 0.3;
  Symmetry symmetry = Symmetry::None;
  double object_density = 0.0;
  std::vector<CategoryWeight> object_categories = {
      {"door", 1.0}, {"window", 1.0}, {"doorway", 1.0}, {"plant", 1.0}};
  std::uint64_t seed = 0;

  void check() const;
};

struct LayoutMetadata {
  std::uint64_t seed = 0;
  Symmetry symmetry = Symmetry::None;
  /// Isometry mapping the layout onto itself (global symmetry only).
  std::optional<RigidMotion> certified_isometry;
  /// Objects placed without a symmetric partner.
  std::vector<NodeId> symmetry_breaking_objects;
  std::optional<CandidateAssignment> ground_truth_assignment;
};

nlohmann::json to_json(const LayoutMetadata& m);

struct Layout {
  SceneGraph graph;
  LayoutMetadata metadata;
};

/// Two rooms whose walls face each other across a thin gap.
struct AdjacentWalls {
  NodeId room_a;
  NodeId plane_a;
  NodeId room_b;
  NodeId plane_b;
  double gap = 0.0;
  double overlap = 0.0;    // length of the shared wall section
  Vec3 overlap_mid;        // midpoint of the shared section, halfway across the gap
};

/// Facing wall pairs with gap in (0, max_gap] and shared length >= min_overlap.
std::vector<AdjacentWalls> adjacent_walls(const SceneGraph& g, double max_gap, double min_overlap);

/// Rooms and their four inward wall planes on a jittered grid, then a random
/// yaw and translation. Deterministic in spec.seed.
Layout generate_layout(const LayoutSpec& spec);

/// Adds objects until the object fraction matches spec.object_density, then
/// generates relations. Placement replicates under the layout's symmetry map.
/// Throws InvalidArgument when the density cannot be reached.
Layout place_objects(Layout layout, const LayoutSpec& spec, const RelationParams& params = {});

/// generate_layout followed by place_objects.
Layout generate(const LayoutSpec& spec, const RelationParams& params = {});

/// Object count that brings the fraction of objects closest to `density`.
std::size_t target_object_count(std::size_t structural_nodes, double density);

struct SGraphDerivationSpec {
  std::vector<NodeId> observed_rooms;
  double position_noise_sigma = 0.0;
  double angle_noise_sigma = 0.0;
  RigidMotion rigid_offset;
  double object_dropout = 0.0;
  std::vector<NodeId> dropped_objects;  // removed in addition to random dropout
  std::uint64_t seed = 0;

  void check() const;
};

struct Derivation {
  SceneGraph graph;
  std::map<NodeId, NodeId> a_id;         // S id -> A id
  CandidateAssignment ground_truth;      // rooms and planes only
};

/// Copies the observed rooms with their planes and objects into a fresh
/// S-Graph: rigid offset, Gaussian noise, new ids.
Derivation derive_sgraph(const SceneGraph& a, const SGraphDerivationSpec& d);

}  // namespace semgraph
