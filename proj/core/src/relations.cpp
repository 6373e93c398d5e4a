#include "semgraph/relations.hpp"

#include "semgraph/errors.hpp"

namespace semgraph {

const std::set<std::string>& default_wall_categories() {
  static const std::set<std::string> categories{"door", "window", "doorway"};
  return categories;
}

SceneGraph generate_relations(const SceneGraph& g, const RelationParams& params,
                              const std::set<std::string>& wall_categories) {
  params.check();
  if (const auto diags = validate(g); !diags.empty()) {
    std::vector<std::string> details;
    for (const auto& d : diags) details.push_back(d.subject + ": [" + d.rule + "] " + d.message);
    throw InvariantError("generate_relations: input graph is invalid", std::move(details));
  }

  SceneGraph out = g;
  std::vector<std::vector<PlaneNode>> planes_by_room;
  planes_by_room.reserve(g.rooms.size());
  for (const auto& room : g.rooms) planes_by_room.push_back(room_planes(g, room.id));

  for (const auto& object : g.objects) {
    const Vec3& c_o = object.ellipsoid.center;
    const bool on_wall = wall_categories.count(object.category) > 0;
    for (std::size_t r = 0; r < g.rooms.size(); ++r) {
      const auto& room = g.rooms[r];
      const auto& planes = planes_by_room[r];
      if (planes.empty() || !contains_point(room, planes, c_o, params)) continue;
      out.add_relation({RelationKind::ObjectInRoom, object.id, room.id});
      if (!on_wall) continue;
      const auto closest = closest_plane(c_o, planes);
      if (closest.distance < params.tau) {
        out.add_relation({RelationKind::ObjectOnPlane, object.id, closest.plane});
      }
    }
  }
  return out;
}

}  // namespace semgraph
