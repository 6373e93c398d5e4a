#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace semgraph {

using NodeId = std::string;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class GraphKind { AGraph, SGraph };

enum class Layer { Room, Plane, Object, Keyframe };

enum class RelationKind { RoomHasPlane, ObjectInRoom, ObjectOnPlane, KeyframeInRoom };

std::string_view to_string(GraphKind kind);
std::string_view to_string(Layer layer);
std::string_view to_string(RelationKind kind);
std::optional<GraphKind> parse_graph_kind(std::string_view text);
std::optional<RelationKind> parse_relation_kind(std::string_view text);

/// Layers required at the (from, to) ends of a relation kind.
std::pair<Layer, Layer> endpoint_layers(RelationKind kind);

struct RoomNode {
  NodeId id;
  Vec3 center = Vec3::Zero();
};

/// Infinite wall plane n.x + d = 0. The normal is unit length and points into
/// the owning room, so signed_distance() is positive on the room side.
struct PlaneNode {
  NodeId id;
  NodeId room;
  Vec3 normal = Vec3::UnitX();
  double offset = 0.0;

  double signed_distance(const Vec3& x) const { return normal.dot(x) + offset; }
};

/// Columns of `rotation` are the axis directions matching `semi_axes`.
struct Ellipsoid {
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Constant(0.01);
  Mat3 rotation = Mat3::Identity();
};

struct ObjectInstance {
  NodeId id;
  std::string category;
  Ellipsoid ellipsoid;
  std::vector<Vec3> support_points;
};

struct Keyframe {
  NodeId id;
  Vec3 position = Vec3::Zero();
  double timestamp = 0.0;
};

struct Relation {
  RelationKind kind = RelationKind::RoomHasPlane;
  NodeId from;
  NodeId to;

  auto operator<=>(const Relation&) const = default;
  bool operator==(const Relation&) const = default;
};

/// Per-category instance counts attached to a room or plane. Zero entries are
/// never stored.
class CategoryCounts {
 public:
  CategoryCounts() = default;
  CategoryCounts(std::initializer_list<std::pair<const std::string, std::size_t>> init);

  void add(const std::string& category, std::size_t n = 1);
  std::size_t count(const std::string& category) const;
  bool empty() const { return counts_.empty(); }
  std::size_t total() const;
  const std::map<std::string, std::size_t>& entries() const { return counts_; }

  bool operator==(const CategoryCounts&) const = default;

 private:
  std::map<std::string, std::size_t> counts_;
};

/// Layered scene graph shared by the architectural prior (A-Graph) and the
/// online situational graph (S-Graph).
struct SceneGraph {
  GraphKind kind = GraphKind::AGraph;
  std::vector<RoomNode> rooms;
  std::vector<PlaneNode> planes;
  std::vector<ObjectInstance> objects;
  std::vector<Keyframe> keyframes;
  std::vector<Relation> relations;

  const RoomNode* find_room(std::string_view id) const;
  const PlaneNode* find_plane(std::string_view id) const;
  const ObjectInstance* find_object(std::string_view id) const;
  ObjectInstance* find_object(std::string_view id);
  const Keyframe* find_keyframe(std::string_view id) const;
  std::optional<Layer> layer_of(std::string_view id) const;

  /// Planes owned by `room_id`, in storage order.
  std::vector<const PlaneNode*> planes_of(std::string_view room_id) const;

  bool has_relation(const Relation& r) const;
  /// Appends `r` unless already present; returns true when added.
  bool add_relation(Relation r);

  /// Appends a plane together with its `room_has_plane` relation.
  void add_plane(PlaneNode plane);

  std::size_t node_count() const {
    return rooms.size() + planes.size() + objects.size() + keyframes.size();
  }
};

struct Diagnostic {
  std::string subject;  // node id or relation description
  std::string rule;
  std::string message;
};

/// Checks every structural and geometric invariant; empty result means valid.
std::vector<Diagnostic> validate(const SceneGraph& g);

/// Category counts of objects related to room or plane `node`
/// (object_in_room for rooms, object_on_plane for planes).
CategoryCounts semantic_content(const SceneGraph& g, std::string_view node);

/// Returns a fresh id `<prefix><n>` not used by any node of `g`.
NodeId fresh_id(const SceneGraph& g, std::string_view prefix);

}  // namespace semgraph
