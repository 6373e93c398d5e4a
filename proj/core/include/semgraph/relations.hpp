#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "semgraph/graph.hpp"

namespace semgraph {

/// Tuning for relation generation and object association.
struct RelationParams {
  double epsilon = 0.05;       // visibility margin, in ray-parameter units
  double tau = 0.3;            // max |point-to-plane distance| for object_on_plane, m
  double overlap_scale = 1.5;  // axis inflation used by the overlap test
  double ellipsoid_k = 2.0;    // semi-axis = k * sqrt(eigenvalue)

  /// Throws InvalidArgument when a field is out of range.
  void check() const;
};

const std::set<std::string>& default_wall_categories();

/// Parameter t of the intersection of the ray c_r + t (c_o - c_r) with
/// `plane`. Empty when the ray is parallel to the plane.
std::optional<double> ray_plane_parameter(const Vec3& c_r, const Vec3& c_o, const PlaneNode& plane);

/// Visibility test from the room center: the point belongs to the room unless
/// some plane is hit with 0 < t < 1 - epsilon. Valid for convex rooms only.
bool object_in_room(const RoomNode& room, std::span<const PlaneNode> planes, const Vec3& c_o,
                    const RelationParams& params);

/// Same as object_in_room, but a point at the room center counts as inside
/// instead of raising.
bool contains_point(const RoomNode& room, std::span<const PlaneNode> planes, const Vec3& x,
                    const RelationParams& params);

inline double point_plane_distance(const Vec3& c_o, const PlaneNode& plane) {
  return plane.signed_distance(c_o);
}

struct ClosestPlane {
  NodeId plane;
  double distance = 0.0;  // absolute
};

/// Plane minimizing |n.x + d|; ties go to the lexicographically smallest id.
ClosestPlane closest_plane(const Vec3& c_o, std::span<const PlaneNode> planes);

/// Copies of the planes owned by `room`, in storage order.
std::vector<PlaneNode> room_planes(const SceneGraph& g, std::string_view room);

/// Adds object_in_room relations for every (object, room) passing the
/// visibility test and, for wall categories, an object_on_plane relation to
/// the closest plane of that room when it lies within tau. Idempotent.
SceneGraph generate_relations(const SceneGraph& g, const RelationParams& params,
                              const std::set<std::string>& wall_categories = default_wall_categories());

}  // namespace semgraph
