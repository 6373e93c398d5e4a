#include <cmath>
#include <limits>

#include "semgraph/errors.hpp"
#include "semgraph/relations.hpp"

namespace semgraph {

void RelationParams::check() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 0.5)");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(overlap_scale >= 1.0)) throw InvalidArgument("overlap_scale must be >= 1");
  if (!(ellipsoid_k > 0.0)) throw InvalidArgument("ellipsoid_k must be positive");
}

std::optional<double> ray_plane_parameter(const Vec3& c_r, const Vec3& c_o, const PlaneNode& plane) {
  const Vec3 dir = c_o - c_r;
  if (dir.norm() == 0.0) throw InvalidArgument("ray_plane_parameter: degenerate ray (c_r == c_o)");
  const double denom = plane.normal.dot(dir);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  return -(plane.normal.dot(c_r) + plane.offset) / denom;
}

bool object_in_room(const RoomNode& room, std::span<const PlaneNode> planes, const Vec3& c_o,
                    const RelationParams& params) {
  for (const auto& plane : planes) {
    const auto t = ray_plane_parameter(room.center, c_o, plane);
    if (t && *t > 0.0 && *t < 1.0 - params.epsilon) return false;
  }
  return true;
}

bool contains_point(const RoomNode& room, std::span<const PlaneNode> planes, const Vec3& x,
                    const RelationParams& params) {
  if ((x - room.center).norm() == 0.0) return true;
  return object_in_room(room, planes, x, params);
}

ClosestPlane closest_plane(const Vec3& c_o, std::span<const PlaneNode> planes) {
  if (planes.empty()) throw InvalidArgument("closest_plane: empty plane list");
  const PlaneNode* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& plane : planes) {
    const double d = std::abs(point_plane_distance(c_o, plane));
    if (d < best_dist || (d == best_dist && best && plane.id < best->id)) {
      best = &plane;
      best_dist = d;
    }
  }
  return {best->id, best_dist};
}

std::vector<PlaneNode> room_planes(const SceneGraph& g, std::string_view room) {
  std::vector<PlaneNode> out;
  for (const auto& p : g.planes) {
    if (p.room == room) out.push_back(p);
  }
  return out;
}

}  // namespace semgraph
