#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <semgraph/bench.hpp>

namespace semgraph::testing {

std::filesystem::path data_dir() { return SEMGRAPH_TEST_DATA_DIR; }

bool polytope_contains(const std::vector<PlaneNode>& planes, const Vec3& x, double margin) {
  for (const auto& p : planes)
    if (p.normal.dot(x) + p.offset < margin) return false;
  return true;
}

double polytope_depth(const std::vector<PlaneNode>& planes, const Vec3& x) {
  double depth = INFINITY;
  for (const auto& p : planes) depth = std::min(depth, p.normal.dot(x) + p.offset);
  return depth;
}

namespace {

// Signed angle from u to v about +z, computed from the horizontal components.
double heading_between(const Vec3& u, const Vec3& v) {
  const double cross_z = u.x() * v.y() - u.y() * v.x();
  return std::atan2(cross_z, u.dot(v));
}

double wrapped_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi)); }

}  // namespace

std::optional<double> reference_consistency(const SceneGraph& a, const SceneGraph& s,
                                            const CandidateAssignment& cand, const MatchConfig& cfg) {
  std::set<NodeId> used;
  for (const auto& [sr, ar] : cand.room_map)
    if (!used.insert(ar).second) return std::nullopt;
  used.clear();
  for (const auto& [sp, ap] : cand.plane_map) {
    if (!used.insert(ap).second) return std::nullopt;
    auto owner = cand.room_map.find(s.find_plane(sp)->room);
    if (owner == cand.room_map.end() || owner->second != a.find_plane(ap)->room) return std::nullopt;
  }

  std::vector<double> ratios;
  auto check = [&](double diff, double limit) {
    ratios.push_back(diff / limit);
    return diff <= limit;
  };

  std::vector<std::pair<const RoomNode*, const RoomNode*>> rooms;
  for (const auto& [sr, ar] : cand.room_map) rooms.emplace_back(s.find_room(sr), a.find_room(ar));
  std::vector<std::pair<const PlaneNode*, const PlaneNode*>> planes;
  for (const auto& [sp, ap] : cand.plane_map) planes.emplace_back(s.find_plane(sp), a.find_plane(ap));

  for (std::size_t i = 0; i < rooms.size(); ++i)
    for (std::size_t j = i + 1; j < rooms.size(); ++j) {
      const double ds = (rooms[i].first->center - rooms[j].first->center).norm();
      const double da = (rooms[i].second->center - rooms[j].second->center).norm();
      if (!check(std::abs(ds - da), cfg.theta_room_dist)) return std::nullopt;
    }
  for (const auto& [ps, pa] : planes)
    for (const auto& [rs, ra] : rooms)
      if (!check(std::abs(ps->signed_distance(rs->center) - pa->signed_distance(ra->center)),
                 cfg.theta_plane_dist))
        return std::nullopt;
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const double hs = heading_between(planes[i].first->normal, planes[j].first->normal);
      const double ha = heading_between(planes[i].second->normal, planes[j].second->normal);
      if (!check(wrapped_gap(hs, ha), cfg.theta_plane_angle)) return std::nullopt;
    }

  if (ratios.empty()) return 0.0;
  double total = 0.0;
  for (double r : ratios) total += r;
  return total / static_cast<double>(ratios.size());
}

std::set<MappingKey> mapping_set(const std::vector<CandidateAssignment>& v) {
  std::set<MappingKey> out;
  for (const auto& c : v) out.emplace(c.room_map, c.plane_map);
  return out;
}

std::map<MappingKey, double> residual_map(const std::vector<CandidateAssignment>& v) {
  std::map<MappingKey, double> out;
  for (const auto& c : v) out[{c.room_map, c.plane_map}] = c.residual;
  return out;
}

bool same_residuals(const std::vector<CandidateAssignment>& x, const std::vector<CandidateAssignment>& y,
                    double tol) {
  const auto rx = residual_map(x);
  const auto ry = residual_map(y);
  if (rx.size() != x.size() || ry.size() != y.size() || rx.size() != ry.size()) return false;
  for (auto i = rx.begin(), j = ry.begin(); i != rx.end(); ++i, ++j)
    if (i->first != j->first || std::abs(i->second - j->second) > tol) return false;
  return true;
}

std::optional<Mat3> center_set_isometry(const SceneGraph& g, double tol) {
  if (g.rooms.empty()) return std::nullopt;
  Vec3 centroid = Vec3::Zero();
  for (const auto& r : g.rooms) centroid += r.center;
  centroid /= static_cast<double>(g.rooms.size());

  std::vector<Mat3> candidates;
  for (int k = 1; k < 4; ++k)
    candidates.push_back(Eigen::AngleAxisd(k * std::numbers::pi / 2, Vec3::UnitZ()).toRotationMatrix());
  for (const auto& p : g.planes) {
    const double phi = std::atan2(p.normal.y(), p.normal.x());
    for (double line : {phi, phi + std::numbers::pi / 2}) {
      Mat3 m = Mat3::Identity();
      m(0, 0) = std::cos(2 * line);
      m(0, 1) = std::sin(2 * line);
      m(1, 0) = std::sin(2 * line);
      m(1, 1) = -std::cos(2 * line);
      candidates.push_back(m);
    }
  }

  for (const auto& m : candidates) {
    std::vector<bool> taken(g.rooms.size(), false);
    bool ok = true;
    for (const auto& r : g.rooms) {
      const Vec3 image = centroid + m * (r.center - centroid);
      bool found = false;
      for (std::size_t j = 0; j < g.rooms.size() && !found; ++j)
        if (!taken[j] && (g.rooms[j].center - image).norm() <= tol) taken[j] = found = true;
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) return m;
  }
  return std::nullopt;
}

bool counts_contained(const SceneGraph& a, const NodeId& a_node, const SceneGraph& s, const NodeId& s_node) {
  auto tally = [](const SceneGraph& g, const NodeId& node) {
    std::map<std::string, int> counts;
    for (const auto& rel : g.relations) {
      if (rel.to != node) continue;
      if (rel.kind != RelationKind::ObjectInRoom && rel.kind != RelationKind::ObjectOnPlane) continue;
      counts[g.find_object(rel.from)->category] += 1;
    }
    return counts;
  };
  const auto ca = tally(a, a_node);
  for (const auto& [category, n] : tally(s, s_node)) {
    auto it = ca.find(category);
    if (it == ca.end() || it->second < n) return false;
  }
  return true;
}

SceneGraph rect_room(double w, double h, GraphKind kind, const std::string& room, const Vec3& origin) {
  SceneGraph g;
  g.kind = kind;
  add_rectangular_room(g, room, origin.x() - w / 2, origin.y() - h / 2, origin.x() + w / 2, origin.y() + h / 2);
  return g;
}

void add_wall_object(SceneGraph& g, const NodeId& id, const std::string& category, const Vec3& center,
                     const Vec3& normal, const NodeId& room, const NodeId& plane) {
  ObjectInstance o;
  o.id = id;
  o.category = category;
  o.ellipsoid.center = center;
  o.ellipsoid.semi_axes = Vec3(0.05, 0.45, 1.0);
  const Vec3 n = normal.normalized();
  const Vec3 t = Vec3::UnitZ().cross(n).normalized();
  o.ellipsoid.rotation.col(0) = n;
  o.ellipsoid.rotation.col(1) = t;
  o.ellipsoid.rotation.col(2) = n.cross(t);
  g.objects.push_back(o);
  g.add_relation({RelationKind::ObjectInRoom, id, room});
  if (!plane.empty()) g.add_relation({RelationKind::ObjectOnPlane, id, plane});
}

RigidMotion random_yaw_motion(std::mt19937_64& rng, double max_translation) {
  std::uniform_real_distribution<double> yaw(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> t(-max_translation, max_translation);
  const double angle = yaw(rng);
  return RigidMotion::yaw(angle, Vec3(t(rng), t(rng), t(rng)));
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

CorpusCase corpus_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const double densities[] = {0.0, 0.1, 0.2, 0.3};

  CorpusCase c;
  c.seed = seed;
  LayoutSpec spec;
  spec.n_rooms = static_cast<std::size_t>(pick(1, 3));
  spec.symmetry = static_cast<Symmetry>(pick(0, 2));
  spec.object_density = densities[pick(0, 3)];
  spec.seed = seed;
  c.layout = generate(spec);

  SGraphDerivationSpec d;
  const auto observed = static_cast<std::size_t>(pick(1, static_cast<int>(spec.n_rooms)));
  d.observed_rooms = connected_rooms(c.layout.graph, observed, 0.5, seed);
  d.rigid_offset = random_yaw_motion(rng, 10.0);
  if (pick(0, 1) == 1) {
    d.position_noise_sigma = 0.03;
    d.angle_noise_sigma = 0.01;
  }
  if (pick(0, 2) == 0) d.object_dropout = 0.3;
  d.seed = seed;
  c.derivation = derive_sgraph(c.layout.graph, d);
  return c;
}

}  // namespace semgraph::testing
