#include "semgraph/replay.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "semgraph/errors.hpp"

namespace semgraph {

ConvergenceRecord run_exploration(const SceneGraph& a, const std::vector<NodeId>& order,
                                  const SGraphDerivationSpec& d, const MatchConfig& cfg) {
  std::set<NodeId> seen;
  for (const auto& id : order) {
    if (!a.find_room(id)) throw InvalidArgument("run_exploration: unknown room '" + id + "'");
    if (!seen.insert(id).second) throw InvalidArgument("run_exploration: room '" + id + "' repeated");
  }
  ConvergenceRecord record;
  record.map_rooms = a.rooms.size();
  for (std::size_t k = 1; k <= order.size(); ++k) {
    SGraphDerivationSpec dk = d;
    dk.observed_rooms.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    const Derivation s = derive_sgraph(a, dk);
    const MatchResult result = match(a, s.graph, cfg);
    record.rows.push_back({k, result.outcome, result.solutions.size(), result.stats.elapsed_s});
    if (result.outcome == MatchOutcome::Unique && !record.first_unique_k) record.first_unique_k = k;
  }
  return record;
}

nlohmann::json to_json(const ConvergenceRecord& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"outcome", std::string(to_string(row.outcome))},
                    {"n_solutions", row.n_solutions},
                    {"elapsed_s", row.elapsed_s}});
  }
  nlohmann::json out{{"map_rooms", r.map_rooms}, {"rows", rows}};
  out["first_unique_k"] = r.first_unique_k ? nlohmann::json(*r.first_unique_k) : nlohmann::json(nullptr);
  return out;
}

std::string convergence_csv_rows(const std::string& scenario, bool filter, const ConvergenceRecord& r) {
  std::ostringstream os;
  os.precision(9);
  for (const auto& row : r.rows) {
    os << scenario << ',' << r.map_rooms << ',' << row.k << ',' << (filter ? "on" : "off") << ','
       << to_string(row.outcome) << ',' << row.n_solutions << ',' << row.elapsed_s << '\n';
  }
  return os.str();
}

namespace {

constexpr double kApproachDepth = 0.5;

const ObjectInstance* shared_doorway(const SceneGraph& a, const NodeId& r1, const NodeId& r2) {
  for (const auto& o : a.objects) {
    if (o.category != "doorway") continue;
    if (a.has_relation({RelationKind::ObjectInRoom, o.id, r1}) &&
        a.has_relation({RelationKind::ObjectInRoom, o.id, r2})) {
      return &o;
    }
  }
  return nullptr;
}

// Point 0.5 m inside `room`, in front of the wall that carries the doorway.
Vec3 approach_point(const SceneGraph& a, const NodeId& room, const ObjectInstance& doorway) {
  const PlaneNode* wall = nullptr;
  for (const PlaneNode* p : a.planes_of(room)) {
    if (a.has_relation({RelationKind::ObjectOnPlane, doorway.id, p->id})) wall = p;
  }
  if (!wall) {
    throw InvalidArgument("synth_trajectory: doorway '" + doorway.id + "' is not attached to a wall of '" +
                          room + "'");
  }
  const Vec3& c = doorway.ellipsoid.center;
  return c - wall->signed_distance(c) * wall->normal + kApproachDepth * wall->normal;
}

}  // namespace

std::vector<Keyframe> synth_trajectory(const SceneGraph& a, const std::vector<NodeId>& order, double step) {
  if (!(step > 0.0)) throw InvalidArgument("synth_trajectory: step must be positive");
  if (order.empty()) throw InvalidArgument("synth_trajectory: empty room order");
  for (const auto& id : order) {
    if (!a.find_room(id)) throw InvalidArgument("synth_trajectory: unknown room '" + id + "'");
  }

  std::vector<Vec3> waypoints{a.find_room(order.front())->center};
  if (order.size() == 1) {
    // Walk halfway toward the first wall so the room still gets two keyframes.
    const RoomNode& room = *a.find_room(order.front());
    const auto planes = a.planes_of(room.id);
    if (planes.empty()) throw InvalidArgument("synth_trajectory: room '" + room.id + "' has no planes");
    const PlaneNode& p = *planes.front();
    waypoints.push_back(room.center - 0.5 * p.signed_distance(room.center) * p.normal);
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const ObjectInstance* door = shared_doorway(a, order[i], order[i + 1]);
    if (!door) {
      throw InvalidArgument("synth_trajectory: no doorway between '" + order[i] + "' and '" + order[i + 1] + "'");
    }
    waypoints.push_back(approach_point(a, order[i], *door));
    waypoints.push_back(door->ellipsoid.center);
    waypoints.push_back(approach_point(a, order[i + 1], *door));
    waypoints.push_back(a.find_room(order[i + 1])->center);
  }

  std::vector<Vec3> points{waypoints.front()};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Vec3 from = waypoints[i - 1];
    const Vec3 to = waypoints[i];
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((to - from).norm() / step)));
    for (std::size_t j = 1; j <= n; ++j) {
      points.push_back(j == n ? to : Vec3(from + (to - from) * (static_cast<double>(j) / static_cast<double>(n))));
    }
  }
  std::vector<Keyframe> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back({"kf_" + std::to_string(i), points[i], static_cast<double>(i)});
  }
  return out;
}

}  // namespace semgraph
