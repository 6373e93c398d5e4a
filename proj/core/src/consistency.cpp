#include "consistency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semgraph/errors.hpp"

namespace semgraph::detail {

namespace {

void add_category(EncodedContent& content, int category) {
  auto it = std::lower_bound(content.begin(), content.end(), std::pair<int, std::size_t>{category, 0});
  if (it != content.end() && it->first == category) {
    ++it->second;
  } else {
    content.insert(it, {category, 1});
  }
}

}  // namespace

bool contains(const EncodedContent& a, const EncodedContent& s) {
  auto it = a.begin();
  for (const auto& [category, n] : s) {
    while (it != a.end() && it->first < category) ++it;
    if (it == a.end() || it->first != category || it->second < n) return false;
  }
  return true;
}

DenseGraph make_dense(const SceneGraph& g, CategoryTable& table) {
  DenseGraph d;
  for (const auto& room : g.rooms) {
    d.room_index.emplace(room.id, static_cast<int>(d.room_ids.size()));
    d.room_ids.push_back(room.id);
    d.centers.push_back(room.center);
  }
  d.room_planes.resize(g.rooms.size());
  for (const auto& plane : g.planes) {
    auto owner = d.room_index.find(plane.room);
    if (owner == d.room_index.end()) {
      throw InvalidArgument("plane '" + plane.id + "' refers to unknown room '" + plane.room + "'");
    }
    const int idx = static_cast<int>(d.planes.size());
    d.plane_index.emplace(plane.id, idx);
    d.planes.push_back({plane.id, plane.normal, plane.offset, owner->second});
    d.room_planes[owner->second].push_back(idx);
  }

  std::unordered_map<std::string, int> objects;
  for (const auto& o : g.objects) {
    objects.emplace(o.id, table.emplace(o.category, static_cast<int>(table.size())).first->second);
  }
  d.room_content.resize(d.room_ids.size());
  d.plane_content.resize(d.planes.size());
  for (const auto& rel : g.relations) {
    if (rel.kind != RelationKind::ObjectInRoom && rel.kind != RelationKind::ObjectOnPlane) continue;
    auto obj = objects.find(rel.from);
    if (obj == objects.end()) continue;
    if (rel.kind == RelationKind::ObjectInRoom) {
      if (auto it = d.room_index.find(rel.to); it != d.room_index.end()) {
        add_category(d.room_content[it->second], obj->second);
      }
    } else if (auto it = d.plane_index.find(rel.to); it != d.plane_index.end()) {
      add_category(d.plane_content[it->second], obj->second);
    }
  }
  return d;
}

double yaw_angle(const Vec3& n1, const Vec3& n2) {
  return std::atan2(n1.cross(n2).z(), n1.dot(n2));
}

double angle_difference(double a, double b) {
  double diff = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
  return diff;
}

std::optional<double> evaluate_assignment(const DenseGraph& a, const DenseGraph& s,
                                          std::span<const int> room_map,
                                          std::span<const int> plane_map, const MatchConfig& cfg) {
  double sum = 0.0;
  std::size_t terms = 0;
  auto term = [&](double diff, double threshold) {
    if (!(diff <= threshold)) return false;
    sum += diff / threshold;
    ++terms;
    return true;
  };

  const int n_rooms = static_cast<int>(s.room_ids.size());
  const int n_planes = static_cast<int>(s.planes.size());

  for (int i = 0; i < n_rooms; ++i) {
    if (room_map[i] < 0) continue;
    for (int j = i + 1; j < n_rooms; ++j) {
      if (room_map[j] < 0) continue;
      const double ds = (s.centers[i] - s.centers[j]).norm();
      const double da = (a.centers[room_map[i]] - a.centers[room_map[j]]).norm();
      if (!term(std::abs(ds - da), cfg.theta_room_dist)) return std::nullopt;
    }
  }

  for (int p = 0; p < n_planes; ++p) {
    const int q = plane_map[p];
    if (q < 0) continue;
    const DensePlane& sp = s.planes[p];
    const DensePlane& ap = a.planes[q];
    for (int r = 0; r < n_rooms; ++r) {
      if (room_map[r] < 0) continue;
      const double ds = sp.normal.dot(s.centers[r]) + sp.offset;
      const double da = ap.normal.dot(a.centers[room_map[r]]) + ap.offset;
      if (!term(std::abs(ds - da), cfg.theta_plane_dist)) return std::nullopt;
    }
    for (int p2 = p + 1; p2 < n_planes; ++p2) {
      const int q2 = plane_map[p2];
      if (q2 < 0) continue;
      const double as = yaw_angle(sp.normal, s.planes[p2].normal);
      const double aa = yaw_angle(ap.normal, a.planes[q2].normal);
      if (!term(angle_difference(as, aa), cfg.theta_plane_angle)) return std::nullopt;
    }
  }
  return terms == 0 ? 0.0 : sum / static_cast<double>(terms);
}

}  // namespace semgraph::detail
