#include "semgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <Eigen/LU>

#include "semgraph/errors.hpp"

namespace semgraph {

std::string_view to_string(GraphKind kind) {
  return kind == GraphKind::AGraph ? "agraph" : "sgraph";
}

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::Room: return "room";
    case Layer::Plane: return "plane";
    case Layer::Object: return "object";
    case Layer::Keyframe: return "keyframe";
  }
  return "unknown";
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::RoomHasPlane: return "room_has_plane";
    case RelationKind::ObjectInRoom: return "object_in_room";
    case RelationKind::ObjectOnPlane: return "object_on_plane";
    case RelationKind::KeyframeInRoom: return "keyframe_in_room";
  }
  return "unknown";
}

std::optional<GraphKind> parse_graph_kind(std::string_view text) {
  if (text == "agraph") return GraphKind::AGraph;
  if (text == "sgraph") return GraphKind::SGraph;
  return std::nullopt;
}

std::optional<RelationKind> parse_relation_kind(std::string_view text) {
  for (auto k : {RelationKind::RoomHasPlane, RelationKind::ObjectInRoom,
                 RelationKind::ObjectOnPlane, RelationKind::KeyframeInRoom}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::pair<Layer, Layer> endpoint_layers(RelationKind kind) {
  switch (kind) {
    case RelationKind::RoomHasPlane: return {Layer::Room, Layer::Plane};
    case RelationKind::ObjectInRoom: return {Layer::Object, Layer::Room};
    case RelationKind::ObjectOnPlane: return {Layer::Object, Layer::Plane};
    case RelationKind::KeyframeInRoom: return {Layer::Keyframe, Layer::Room};
  }
  return {Layer::Room, Layer::Room};
}

CategoryCounts::CategoryCounts(
    std::initializer_list<std::pair<const std::string, std::size_t>> init) {
  for (const auto& [category, n] : init) add(category, n);
}

void CategoryCounts::add(const std::string& category, std::size_t n) {
  if (n == 0) return;
  counts_[category] += n;
}

std::size_t CategoryCounts::count(const std::string& category) const {
  auto it = counts_.find(category);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t CategoryCounts::total() const {
  std::size_t sum = 0;
  for (const auto& [_, n] : counts_) sum += n;
  return sum;
}

namespace {

template <typename T>
auto find_by_id(T& items, std::string_view id) -> decltype(&items.front()) {
  auto it = std::find_if(items.begin(), items.end(), [&](const auto& n) { return n.id == id; });
  return it == items.end() ? nullptr : &*it;
}

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

const RoomNode* SceneGraph::find_room(std::string_view id) const { return find_by_id(rooms, id); }
const PlaneNode* SceneGraph::find_plane(std::string_view id) const { return find_by_id(planes, id); }
const ObjectInstance* SceneGraph::find_object(std::string_view id) const {
  return find_by_id(objects, id);
}
ObjectInstance* SceneGraph::find_object(std::string_view id) { return find_by_id(objects, id); }
const Keyframe* SceneGraph::find_keyframe(std::string_view id) const {
  return find_by_id(keyframes, id);
}

std::optional<Layer> SceneGraph::layer_of(std::string_view id) const {
  if (find_room(id)) return Layer::Room;
  if (find_plane(id)) return Layer::Plane;
  if (find_object(id)) return Layer::Object;
  if (find_keyframe(id)) return Layer::Keyframe;
  return std::nullopt;
}

std::vector<const PlaneNode*> SceneGraph::planes_of(std::string_view room_id) const {
  std::vector<const PlaneNode*> out;
  for (const auto& p : planes) {
    if (p.room == room_id) out.push_back(&p);
  }
  return out;
}

bool SceneGraph::has_relation(const Relation& r) const {
  return std::find(relations.begin(), relations.end(), r) != relations.end();
}

bool SceneGraph::add_relation(Relation r) {
  if (has_relation(r)) return false;
  relations.push_back(std::move(r));
  return true;
}

void SceneGraph::add_plane(PlaneNode plane) {
  add_relation({RelationKind::RoomHasPlane, plane.room, plane.id});
  planes.push_back(std::move(plane));
}

std::vector<Diagnostic> validate(const SceneGraph& g) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string subject, std::string rule, std::string message) {
    out.push_back({std::move(subject), std::move(rule), std::move(message)});
  };

  std::unordered_map<std::string, Layer> layers;
  auto register_id = [&](const NodeId& id, Layer layer) {
    if (id.empty()) {
      report("<empty>", "empty-id", "node id must be non-empty");
      return;
    }
    if (!layers.emplace(id, layer).second) {
      report(id, "duplicate-id", "node id is used more than once");
    }
  };
  for (const auto& r : g.rooms) register_id(r.id, Layer::Room);
  for (const auto& p : g.planes) register_id(p.id, Layer::Plane);
  for (const auto& o : g.objects) register_id(o.id, Layer::Object);
  for (const auto& k : g.keyframes) register_id(k.id, Layer::Keyframe);

  for (const auto& r : g.rooms) {
    if (!finite(r.center)) report(r.id, "room-center-finite", "room center is not finite");
  }

  std::set<Relation> seen;
  std::unordered_map<std::string, std::vector<std::string>> plane_owners;
  for (const auto& rel : g.relations) {
    std::ostringstream subject;
    subject << to_string(rel.kind) << "(" << rel.from << " -> " << rel.to << ")";
    if (!seen.insert(rel).second) {
      report(subject.str(), "duplicate-relation", "relation listed more than once");
      continue;
    }
    const auto [from_layer, to_layer] = endpoint_layers(rel.kind);
    bool endpoints_ok = true;
    for (const auto& [id, want] : {std::pair{rel.from, from_layer}, std::pair{rel.to, to_layer}}) {
      auto it = layers.find(id);
      if (it == layers.end()) {
        report(subject.str(), "unknown-endpoint", "relation references unknown node '" + id + "'");
        endpoints_ok = false;
      } else if (it->second != want) {
        report(subject.str(), "endpoint-layer",
               "node '" + id + "' is a " + std::string(to_string(it->second)) + ", expected " +
                   std::string(to_string(want)));
        endpoints_ok = false;
      }
    }
    if (endpoints_ok && rel.kind == RelationKind::RoomHasPlane) {
      plane_owners[rel.to].push_back(rel.from);
    }
  }

  for (const auto& p : g.planes) {
    const auto& owners = plane_owners[p.id];
    if (owners.size() != 1) {
      report(p.id, "plane-owner",
             "plane must be referenced by exactly one room_has_plane relation, found " +
                 std::to_string(owners.size()));
    } else if (owners.front() != p.room) {
      report(p.id, "plane-owner",
             "plane field room='" + p.room + "' disagrees with room_has_plane owner '" +
                 owners.front() + "'");
    }
    if (!finite(p.normal) || !std::isfinite(p.offset)) {
      report(p.id, "plane-finite", "plane parameters are not finite");
      continue;
    }
    const double norm = p.normal.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "plane normal has length " << norm << ", expected 1";
      report(p.id, "plane-unit-normal", msg.str());
    }
    if (const RoomNode* owner = g.find_room(p.room); owner && finite(owner->center)) {
      if (!(p.signed_distance(owner->center) > 0.0)) {
        report(p.id, "plane-orientation",
               "normal does not point toward the center of room '" + p.room + "'");
      }
    }
  }

  for (const auto& o : g.objects) {
    if (o.category.empty()) report(o.id, "object-category", "category must be non-empty");
    const auto& e = o.ellipsoid;
    if (!finite(e.center)) report(o.id, "ellipsoid-center", "ellipsoid center is not finite");
    if (!finite(e.semi_axes) || (e.semi_axes.array() <= 0.0).any()) {
      report(o.id, "ellipsoid-axes", "semi-axes must be positive and finite");
    }
    if (!e.rotation.allFinite() ||
        (e.rotation.transpose() * e.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
        std::abs(e.rotation.determinant() - 1.0) > 1e-6) {
      report(o.id, "ellipsoid-rotation", "rotation must be orthonormal with determinant +1");
    }
  }

  for (std::size_t i = 0; i < g.keyframes.size(); ++i) {
    const auto& k = g.keyframes[i];
    if (!finite(k.position) || !std::isfinite(k.timestamp)) {
      report(k.id, "keyframe-finite", "keyframe position or timestamp is not finite");
    }
    if (i > 0 && !(k.timestamp > g.keyframes[i - 1].timestamp)) {
      report(k.id, "keyframe-order", "keyframe timestamps must be strictly increasing");
    }
  }
  return out;
}

CategoryCounts semantic_content(const SceneGraph& g, std::string_view node) {
  const auto layer = g.layer_of(node);
  if (!layer) throw InvalidArgument("semantic_content: unknown node '" + std::string(node) + "'");
  RelationKind kind;
  if (*layer == Layer::Room) {
    kind = RelationKind::ObjectInRoom;
  } else if (*layer == Layer::Plane) {
    kind = RelationKind::ObjectOnPlane;
  } else {
    throw InvalidArgument("semantic_content: node '" + std::string(node) + "' is a " +
                          std::string(to_string(*layer)) + ", expected room or plane");
  }
  CategoryCounts counts;
  for (const auto& rel : g.relations) {
    if (rel.kind != kind || rel.to != node) continue;
    if (const ObjectInstance* o = g.find_object(rel.from)) counts.add(o->category);
  }
  return counts;
}

NodeId fresh_id(const SceneGraph& g, std::string_view prefix) {
  for (std::size_t n = 0;; ++n) {
    NodeId candidate = std::string(prefix) + std::to_string(n);
    if (!g.layer_of(candidate)) return candidate;
  }
}

}  // namespace semgraph
