#include "semgraph/doorways.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "semgraph/ellipsoid.hpp"
#include "semgraph/errors.hpp"

namespace semgraph {

std::vector<Vec3> sphere_cluster(const Vec3& center, double radius, double k) {
  // Six points at +-s on each axis have per-axis variance s^2 / 3.
  const double s = radius * std::sqrt(3.0) / k;
  std::vector<Vec3> pts;
  pts.reserve(6);
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec3 p = center;
      p[axis] += sign * s;
      pts.push_back(p);
    }
  }
  return pts;
}

void attach_doorway(SceneGraph& g, const NodeId& doorway, std::span<const NodeId> rooms,
                    std::span<const NodeId> planes) {
  for (const auto& room : rooms) g.add_relation({RelationKind::ObjectInRoom, doorway, room});
  for (const auto& plane : planes) g.add_relation({RelationKind::ObjectOnPlane, doorway, plane});
}

namespace {

struct Crossing {
  const PlaneNode* plane;
  double t;
  std::size_t from = 0;
  std::size_t to = 0;
};

// Nearest plane crossed walking from `from` to `to`, ties by id.
std::optional<Crossing> segment_crossing(const std::vector<PlaneNode>& planes, const Vec3& from, const Vec3& to) {
  std::optional<Crossing> best;
  for (const auto& plane : planes) {
    const auto t = ray_plane_parameter(from, to, plane);
    if (!t || *t < 0.0 || *t > 1.0) continue;
    if (!best || *t < best->t || (*t == best->t && plane.id < best->plane->id)) best = Crossing{&plane, *t};
  }
  return best;
}

// The plane that first blocks the ray from the room centre to x.
const PlaneNode* blocking_plane(const RoomNode& room, const std::vector<PlaneNode>& planes, const Vec3& x) {
  const PlaneNode* best = nullptr;
  double best_t = std::numeric_limits<double>::infinity();
  for (const auto& plane : planes) {
    const auto t = ray_plane_parameter(room.center, x, plane);
    if (!t || *t <= 0.0) continue;
    if (*t < best_t || (*t == best_t && plane.id < best->id)) {
      best = &plane;
      best_t = *t;
    }
  }
  return best;
}

struct Passage {
  std::vector<std::size_t> events;
  std::size_t last_pair = 0;
};

}  // namespace

DoorwayDetection detect_doorways(const SceneGraph& g, const RelationParams& params) {
  params.check();
  DoorwayDetection out{g, {}};
  const auto& kfs = g.keyframes;
  const std::size_t n_rooms = g.rooms.size();

  std::vector<std::vector<PlaneNode>> planes_by_room;
  for (const auto& room : g.rooms) planes_by_room.push_back(room_planes(g, room.id));

  // membership[i][r]: keyframe i is inside room r.
  std::vector<std::vector<bool>> membership(kfs.size(), std::vector<bool>(n_rooms, false));
  std::vector<std::size_t> inside_count(kfs.size(), 0);
  for (std::size_t i = 0; i < kfs.size(); ++i) {
    std::size_t nearest = n_rooms;
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n_rooms; ++r) {
      if (planes_by_room[r].empty()) continue;
      if (!contains_point(g.rooms[r], planes_by_room[r], kfs[i].position, params)) continue;
      membership[i][r] = true;
      ++inside_count[i];
      const double d = (g.rooms[r].center - kfs[i].position).norm();
      if (d < nearest_dist) {
        nearest = r;
        nearest_dist = d;
      }
    }
    if (nearest < n_rooms) {
      out.graph.add_relation({RelationKind::KeyframeInRoom, kfs[i].id, g.rooms[nearest].id});
    }
  }

  std::vector<std::size_t> event_pair;
  for (std::size_t i = 0; i + 1 < kfs.size(); ++i) {
    for (std::size_t r = 0; r < n_rooms; ++r) {
      if (membership[i][r] == membership[i + 1][r]) continue;
      const std::size_t in_idx = membership[i][r] ? i : i + 1;
      const std::size_t out_idx = membership[i][r] ? i + 1 : i;
      if (kfs[in_idx].position == kfs[out_idx].position) continue;
      auto crossing = segment_crossing(planes_by_room[r], kfs[in_idx].position, kfs[out_idx].position);
      if (!crossing) {
        // The inside keyframe already sits past the wall, within the epsilon
        // band. Localize on the nearest segment, walking back into the room,
        // that crosses the plane hiding the outside keyframe.
        const PlaneNode* wall = blocking_plane(g.rooms[r], planes_by_room[r], kfs[out_idx].position);
        if (!wall) continue;
        const long dir = in_idx < out_idx ? -1 : 1;
        for (long a = static_cast<long>(in_idx); a >= 0 && a < static_cast<long>(kfs.size()) && !crossing;
             a += dir) {
          const long b = a - dir;
          const auto& pa = kfs[static_cast<std::size_t>(a)].position;
          const auto& pb = kfs[static_cast<std::size_t>(b)].position;
          if (pa != pb) {
            const auto t = ray_plane_parameter(pa, pb, *wall);
            if (t && *t >= 0.0 && *t <= 1.0) crossing = Crossing{wall, *t, static_cast<std::size_t>(a),
                                                                  static_cast<std::size_t>(b)};
          }
          if (!membership[static_cast<std::size_t>(a)][r]) break;
        }
        if (!crossing) continue;
      } else {
        crossing->from = in_idx;
        crossing->to = out_idx;
      }
      const Keyframe& in = kfs[crossing->from];
      const Keyframe& outside = kfs[crossing->to];
      const PlaneNode* crossed = crossing->plane;
      const double best_t = crossing->t;
      DoorwayEvent ev;
      ev.kf_inside = in.id;
      ev.kf_outside = outside.id;
      ev.room = g.rooms[r].id;
      ev.crossed_plane = crossed->id;
      ev.location = in.position + best_t * (outside.position - in.position);
      out.events.push_back(std::move(ev));
      event_pair.push_back(i);
    }
  }

  // Consecutive events join one passage until the robot settles in a single
  // room or re-crosses a room already in the passage.
  std::vector<Passage> passages;
  for (std::size_t e = 0; e < out.events.size(); ++e) {
    bool joins = !passages.empty();
    if (joins) {
      const Passage& cur = passages.back();
      for (std::size_t k = cur.last_pair + 1; k <= event_pair[e] && joins; ++k) {
        if (inside_count[k] == 1) joins = false;
      }
      for (std::size_t prev : cur.events) {
        if (out.events[prev].room == out.events[e].room) joins = false;
      }
    }
    if (!joins) passages.push_back({});
    passages.back().events.push_back(e);
    passages.back().last_pair = event_pair[e];
  }

  for (const auto& passage : passages) {
    std::vector<Vec3> cluster;
    std::vector<NodeId> rooms;
    std::vector<NodeId> planes;
    for (std::size_t e : passage.events) {
      const auto pts = sphere_cluster(out.events[e].location, kDoorwayRadius, params.ellipsoid_k);
      cluster.insert(cluster.end(), pts.begin(), pts.end());
      rooms.push_back(out.events[e].room);
      planes.push_back(out.events[e].crossed_plane);
    }
    const NodeId new_id = fresh_id(out.graph, "doorway_");
    auto assoc = associate_object(cluster, "doorway", std::move(out.graph.objects), params, new_id);
    out.graph.objects = std::move(assoc.objects);
    const NodeId id = out.graph.objects[assoc.index].id;
    attach_doorway(out.graph, id, rooms, planes);
    for (std::size_t e : passage.events) out.events[e].doorway = id;
  }
  return out;
}

}  // namespace semgraph
