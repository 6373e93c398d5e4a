#include "semgraph/scenarios.hpp"

#include <array>

#include "semgraph/doorways.hpp"
#include "semgraph/relations.hpp"
#include "semgraph/synthgen.hpp"

namespace semgraph {

namespace {

constexpr double kWidth = 4.0;
constexpr double kDepth = 3.0;
constexpr double kGap = 0.2;

struct Cell {
  const char* id;
  int col;
  int row;
};

// Visiting order of the exploration; each room is adjacent to an earlier one.
constexpr std::array<Cell, 6> kCells{{{"R1", 0, 0}, {"R2", 1, 0}, {"R3", 1, 1},
                                      {"R4", 0, 1}, {"R5", 2, 0}, {"R6", 2, 1}}};

constexpr std::array<std::pair<const char*, const char*>, 5> kDoorways{
    {{"R1", "R2"}, {"R2", "R3"}, {"R3", "R4"}, {"R2", "R5"}, {"R5", "R6"}}};

ObjectInstance wall_object(const std::string& id, const std::string& category, const Vec3& center,
                           const Vec3& normal, const Vec3& semi_axes) {
  ObjectInstance o;
  o.id = id;
  o.category = category;
  o.ellipsoid.center = center;
  o.ellipsoid.semi_axes = semi_axes;
  const Vec3 tangent = Vec3::UnitZ().cross(normal);
  o.ellipsoid.rotation.col(0) = normal;
  o.ellipsoid.rotation.col(1) = tangent;
  o.ellipsoid.rotation.col(2) = normal.cross(tangent);
  return o;
}

SceneGraph build_map(std::size_t m) {
  SceneGraph g;
  for (std::size_t i = 0; i < m; ++i) {
    const double x0 = kCells[i].col * (kWidth + kGap);
    const double y0 = kCells[i].row * (kDepth + kGap);
    add_rectangular_room(g, kCells[i].id, x0, y0, x0 + kWidth, y0 + kDepth);
  }

  const Vec3 window_axes(0.05, 0.6, 0.5);
  g.objects.push_back(wall_object("door_R1", "door", Vec3(0.1, 1.5, 1.0), Vec3::UnitX(), Vec3(0.05, 0.45, 1.0)));
  g.objects.push_back(wall_object("window_R1", "window", Vec3(2.8, 0.1, 1.5), Vec3::UnitY(), window_axes));
  // One window on an outer wall of every other room.
  for (std::size_t i = 1; i < m; ++i) {
    const double x0 = kCells[i].col * (kWidth + kGap);
    const double y0 = kCells[i].row * (kDepth + kGap);
    const bool south = kCells[i].row == 0;
    const Vec3 normal = south ? Vec3(Vec3::UnitY()) : Vec3(-Vec3::UnitY());
    const double y = south ? y0 + 0.1 : y0 + kDepth - 0.1;
    g.objects.push_back(wall_object(std::string("window_") + kCells[i].id, "window",
                                    Vec3(x0 + kWidth / 2.0, y, 1.5), normal, window_axes));
  }

  std::vector<std::tuple<NodeId, std::vector<NodeId>, std::vector<NodeId>>> links;
  for (const auto& walls : adjacent_walls(g, kGap + 1e-6, 1.0)) {
    for (const auto& [r1, r2] : kDoorways) {
      const bool match = (walls.room_a == r1 && walls.room_b == r2) || (walls.room_a == r2 && walls.room_b == r1);
      if (!match) continue;
      const NodeId id = std::string("doorway_") + r1 + r2;
      g.objects.push_back(wall_object(id, "doorway", walls.overlap_mid + Vec3(0.0, 0.0, -0.5),
                                      g.find_plane(walls.plane_a)->normal, Vec3(kGap / 2.0 + 0.05, 0.45, 1.0)));
      links.emplace_back(id, std::vector<NodeId>{walls.room_a, walls.room_b},
                         std::vector<NodeId>{walls.plane_a, walls.plane_b});
    }
  }
  g = generate_relations(g, RelationParams{});
  for (const auto& [id, rooms, planes] : links) attach_doorway(g, id, rooms, planes);
  return g;
}

}  // namespace

std::vector<Scenario> symmetric_scenarios() {
  std::vector<Scenario> out;
  for (std::size_t m = 1; m <= kCells.size(); ++m) {
    Scenario s;
    s.name = "map_" + std::to_string(m);
    s.map = build_map(m);
    for (std::size_t i = 0; i < m; ++i) s.order.push_back(kCells[i].id);
    // Only the L-shaped map of three rooms and the five-room map lack a
    // half-turn symmetry once all of their rooms are seen.
    if (m == 3 || m == 5) s.geometric_unique_k.insert(m);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace semgraph
