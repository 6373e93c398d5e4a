#include "semgraph/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "semgraph/doorways.hpp"
#include "semgraph/errors.hpp"
#include "semgraph/graph_io.hpp"

namespace semgraph {

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Local: return "local";
    case Symmetry::Global: return "global";
  }
  return "unknown";
}

std::optional<Symmetry> parse_symmetry(std::string_view text) {
  if (text == "none") return Symmetry::None;
  if (text == "local") return Symmetry::Local;
  if (text == "global") return Symmetry::Global;
  return std::nullopt;
}

RigidMotion RigidMotion::yaw(double yaw, const Vec3& translation) {
  RigidMotion m;
  m.rotation = Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
  m.translation = translation;
  return m;
}

SceneGraph transform_graph(const SceneGraph& g, const RigidMotion& m) {
  SceneGraph out = g;
  for (auto& room : out.rooms) room.center = m.apply(room.center);
  for (auto& plane : out.planes) {
    plane.normal = m.rotation * plane.normal;
    plane.offset -= plane.normal.dot(m.translation);
  }
  for (auto& o : out.objects) {
    o.ellipsoid.center = m.apply(o.ellipsoid.center);
    o.ellipsoid.rotation = m.rotation * o.ellipsoid.rotation;
    for (auto& p : o.support_points) p = m.apply(p);
  }
  for (auto& kf : out.keyframes) kf.position = m.apply(kf.position);
  return out;
}

void LayoutSpec::check() const {
  if (n_rooms == 0) throw InvalidArgument("layout spec: n_rooms must be positive");
  if (!(room_size_min > 0.0) || !(room_size_min <= room_size_max)) {
    throw InvalidArgument("layout spec: room_size range must be positive and ordered");
  }
  if (!(wall_thickness_min > 0.0) || !(wall_thickness_min <= wall_thickness_max)) {
    throw InvalidArgument("layout spec: wall_thickness range must be positive and ordered");
  }
  if (!(object_density >= 0.0) || !(object_density <= 0.8)) {
    throw InvalidArgument("layout spec: object_density must lie in [0, 0.8]");
  }
  if (object_density > 0.0) {
    double total = 0.0;
    for (const auto& c : object_categories) {
      if (c.category.empty() || !(c.weight >= 0.0)) {
        throw InvalidArgument("layout spec: object categories need a name and a weight >= 0");
      }
      total += c.weight;
    }
    if (!(total > 0.0)) throw InvalidArgument("layout spec: object category weights sum to zero");
  }
}

void SGraphDerivationSpec::check() const {
  if (!(position_noise_sigma >= 0.0) || !(angle_noise_sigma >= 0.0)) {
    throw InvalidArgument("derivation spec: noise sigmas must be >= 0");
  }
  if (!(object_dropout >= 0.0) || !(object_dropout < 1.0)) {
    throw InvalidArgument("derivation spec: object_dropout must lie in [0, 1)");
  }
  const Mat3& r = rigid_offset.rotation;
  if (!r.allFinite() || (r.transpose() * r - Mat3::Identity()).norm() > 1e-6 || r.determinant() < 0.0) {
    throw InvalidArgument("derivation spec: rigid_offset rotation must be a proper rotation");
  }
}

nlohmann::json to_json(const LayoutMetadata& m) {
  nlohmann::json out;
  out["seed"] = m.seed;
  out["symmetry"] = std::string(to_string(m.symmetry));
  if (m.certified_isometry) {
    nlohmann::json rot = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) rot.push_back(vec3_to_json(m.certified_isometry->rotation.row(i)));
    out["certified_isometry"] = {{"rotation", rot},
                                 {"translation", vec3_to_json(m.certified_isometry->translation)}};
  } else {
    out["certified_isometry"] = nullptr;
  }
  out["symmetry_breaking_objects"] = m.symmetry_breaking_objects;
  if (m.ground_truth_assignment) {
    nlohmann::json gt = to_json(*m.ground_truth_assignment);
    gt.erase("residual");
    out["ground_truth_assignment"] = gt;
  } else {
    out["ground_truth_assignment"] = nullptr;
  }
  return out;
}

void add_rectangular_room(SceneGraph& g, const NodeId& id, double x0, double y0, double x1, double y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw InvalidArgument("room '" + id + "' has an empty footprint");
  RoomNode room{id, Vec3((x0 + x1) / 2.0, (y0 + y1) / 2.0, kRoomCenterZ)};
  g.rooms.push_back(room);
  g.add_plane({id + "_w", id, Vec3::UnitX(), -x0});
  g.add_plane({id + "_e", id, -Vec3::UnitX(), x1});
  g.add_plane({id + "_s", id, Vec3::UnitY(), -y0});
  g.add_plane({id + "_n", id, -Vec3::UnitY(), y1});
}

std::size_t target_object_count(std::size_t structural_nodes, double density) {
  if (density <= 0.0) return 0;
  return static_cast<std::size_t>(
      std::llround(density * static_cast<double>(structural_nodes) / (1.0 - density)));
}

namespace {

constexpr double kCornerMargin = 0.4;
constexpr double kFreeMargin = 0.5;
constexpr double kMinDoorwayOverlap = 1.0;

// Occupied grid cells, row-major indices into a cols x rows grid.
struct Grid {
  int cols = 1;
  int rows = 1;
  std::vector<int> cells;
};

Grid plan_grid(std::size_t n, Symmetry symmetry) {
  Grid grid;
  const int count = static_cast<int>(n);
  grid.cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
  if (symmetry == Symmetry::Global && count % 2 == 1 && grid.cols % 2 == 0) ++grid.cols;
  grid.rows = (count + grid.cols - 1) / grid.cols;
  if (symmetry == Symmetry::Global && count % 2 == 1 && grid.rows % 2 == 0) ++grid.rows;

  if (symmetry != Symmetry::Global) {
    for (int i = 0; i < count; ++i) grid.cells.push_back(i);
    return grid;
  }
  // Cells come in pairs related by the half-turn about the grid center; an
  // odd room count also takes the center cell.
  const int total = grid.cols * grid.rows;
  if (count % 2 == 1) grid.cells.push_back(total / 2);
  for (int k = 0; k < total && static_cast<int>(grid.cells.size()) < count; ++k) {
    const int image = total - 1 - k;
    if (k < image) {
      grid.cells.push_back(k);
      grid.cells.push_back(image);
    }
  }
  std::sort(grid.cells.begin(), grid.cells.end());
  return grid;
}

RigidMotion half_turn_about(const Vec3& center) {
  return RigidMotion::yaw(std::numbers::pi, Vec3(2.0 * center.x(), 2.0 * center.y(), 0.0));
}

// Wall frame of a plane inside its room: the foot point below the room
// center, the horizontal tangent, and the half-length of the wall.
struct WallFrame {
  Vec3 foot;
  Vec3 normal;
  Vec3 tangent;
  double half_length = 0.0;
  double depth = 0.0;  // center-to-wall distance
};

WallFrame wall_frame(const SceneGraph& g, const RoomNode& room, const PlaneNode& plane) {
  WallFrame f;
  f.normal = plane.normal;
  f.depth = plane.signed_distance(room.center);
  f.foot = room.center - f.depth * plane.normal;
  f.tangent = Vec3::UnitZ().cross(plane.normal).normalized();
  f.half_length = std::numeric_limits<double>::infinity();
  for (const PlaneNode* other : g.planes_of(room.id)) {
    if (std::abs(other->normal.dot(f.tangent)) > 0.9) {
      f.half_length = std::min(f.half_length, other->signed_distance(room.center));
    }
  }
  if (!std::isfinite(f.half_length)) f.half_length = 0.0;
  return f;
}

Mat3 wall_rotation(const Vec3& normal, const Vec3& tangent) {
  Mat3 r;
  r.col(0) = normal;
  r.col(1) = tangent;
  r.col(2) = normal.cross(tangent);
  return r;
}

const RoomNode* room_at(const SceneGraph& g, const Vec3& center) {
  for (const auto& room : g.rooms) {
    if ((room.center - center).norm() < 1e-6) return &room;
  }
  return nullptr;
}

const PlaneNode* plane_facing(const SceneGraph& g, const NodeId& room, const Vec3& normal) {
  for (const PlaneNode* p : g.planes_of(room)) {
    if (p->normal.dot(normal) > 1.0 - 1e-6) return p;
  }
  return nullptr;
}

ObjectInstance mapped_object(const ObjectInstance& o, const RigidMotion& m) {
  ObjectInstance out = o;
  out.ellipsoid.center = m.apply(o.ellipsoid.center);
  out.ellipsoid.rotation = m.rotation * o.ellipsoid.rotation;
  for (auto& p : out.support_points) p = m.apply(p);
  return out;
}

struct DoorwayLink {
  NodeId object;
  std::vector<NodeId> rooms;
  std::vector<NodeId> planes;
};

class ObjectPlacer {
 public:
  ObjectPlacer(Layout& layout, const LayoutSpec& spec, const RelationParams& params)
      : layout_(layout), g_(layout.graph), spec_(spec), params_(params),
        rng_(spec.seed ^ 0x9e3779b97f4a7c15ULL) {
    walls_ = adjacent_walls(g_, spec.wall_thickness_max + 1e-6, kMinDoorwayOverlap);
    doorway_used_.assign(walls_.size(), false);
  }

  void run(std::size_t target) {
    std::size_t placed = 0;
    while (placed < target) {
      const std::string category = draw_category();
      const bool replicate = spec_.symmetry != Symmetry::None && target - placed >= 2;
      placed += category == "doorway" ? place_doorway(replicate) : place_room_object(category, replicate);
    }
    g_ = generate_relations(g_, params_);
    for (const auto& link : links_) attach_doorway(g_, link.object, link.rooms, link.planes);
  }

 private:
  bool doorway_available() const {
    if (spec_.symmetry == Symmetry::Local) return false;
    return std::find(doorway_used_.begin(), doorway_used_.end(), false) != doorway_used_.end();
  }

  std::string draw_category() {
    std::vector<double> weights;
    for (const auto& c : spec_.object_categories) {
      weights.push_back(c.category == "doorway" && !doorway_available() ? 0.0 : c.weight);
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w <= 0.0; })) {
      throw InvalidArgument("place_objects: object density unreachable (no free wall slots left)");
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    return spec_.object_categories[pick(rng_)].category;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  NodeId next_id() { return "obj_" + std::to_string(counter_++); }

  // Adds `o` and, when replicating, its image; returns the number added.
  std::size_t add_with_image(ObjectInstance o, const std::optional<RigidMotion>& map) {
    o.id = next_id();
    const ObjectInstance original = o;
    g_.objects.push_back(o);
    if (!map) {
      if (spec_.symmetry != Symmetry::None) layout_.metadata.symmetry_breaking_objects.push_back(o.id);
      return 1;
    }
    ObjectInstance image = mapped_object(original, *map);
    if ((image.ellipsoid.center - original.ellipsoid.center).norm() < 1e-9) return 1;
    image.id = next_id();
    g_.objects.push_back(std::move(image));
    return 2;
  }

  std::size_t place_room_object(const std::string& category, bool replicate) {
    const auto& room = g_.rooms[std::uniform_int_distribution<std::size_t>(0, g_.rooms.size() - 1)(rng_)];
    const auto planes = g_.planes_of(room.id);
    ObjectInstance o;
    o.category = category;
    if (default_wall_categories().count(category) > 0) {
      const PlaneNode& plane = *planes[std::uniform_int_distribution<std::size_t>(0, planes.size() - 1)(rng_)];
      const WallFrame f = wall_frame(g_, room, plane);
      const double span = std::max(0.0, f.half_length - kCornerMargin);
      const double u = span > 0.0 ? uniform(-span, span) : 0.0;
      const double d = uniform(0.02, params_.tau / 2.0);
      const bool window = category == "window";
      o.ellipsoid.center = f.foot + u * f.tangent + d * f.normal + Vec3(0.0, 0.0, window ? 0.0 : -0.5);
      o.ellipsoid.semi_axes = window ? Vec3(0.05, 0.6, 0.5) : Vec3(0.05, 0.45, 1.0);
      o.ellipsoid.rotation = wall_rotation(f.normal, f.tangent);
    } else {
      const WallFrame f = wall_frame(g_, room, *planes.front());
      const double a = std::max(0.0, f.half_length - kFreeMargin);
      const double b = std::max(0.0, f.depth - kFreeMargin);
      o.ellipsoid.center = room.center + (a > 0.0 ? uniform(-a, a) : 0.0) * f.tangent +
                           (b > 0.0 ? uniform(-b, b) : 0.0) * f.normal + Vec3(0.0, 0.0, -1.0);
      o.ellipsoid.semi_axes = Vec3(0.25, 0.25, 0.5);
      o.ellipsoid.rotation = wall_rotation(f.normal, f.tangent);
    }
    std::optional<RigidMotion> map;
    if (replicate) {
      map = spec_.symmetry == Symmetry::Local ? half_turn_about(room.center)
                                              : *layout_.metadata.certified_isometry;
    }
    return add_with_image(std::move(o), map);
  }

  std::size_t place_doorway(bool replicate) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < walls_.size(); ++i) {
      if (!doorway_used_[i]) free.push_back(i);
    }
    const std::size_t w = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng_)];
    const AdjacentWalls& link = walls_[w];
    doorway_used_[w] = true;

    const RoomNode& room_a = *g_.find_room(link.room_a);
    const PlaneNode& plane_a = *g_.find_plane(link.plane_a);
    const WallFrame f = wall_frame(g_, room_a, plane_a);

    // The pair that the global map sends onto this one, if it is different.
    std::optional<std::size_t> image_pair;
    const RigidMotion* iso = layout_.metadata.certified_isometry ? &*layout_.metadata.certified_isometry : nullptr;
    bool self_symmetric = false;
    if (iso) {
      const RoomNode* ia = room_at(g_, iso->apply(room_a.center));
      const RoomNode* ib = room_at(g_, iso->apply(g_.find_room(link.room_b)->center));
      for (std::size_t i = 0; ia && ib && i < walls_.size(); ++i) {
        const bool same = (walls_[i].room_a == ia->id && walls_[i].room_b == ib->id) ||
                          (walls_[i].room_a == ib->id && walls_[i].room_b == ia->id);
        if (!same) continue;
        if (i == w) self_symmetric = true;
        else image_pair = i;
      }
    }

    double shift = 0.0;
    const double span = std::max(0.0, link.overlap / 2.0 - kCornerMargin - 0.45);
    if (!self_symmetric && span > 0.0) shift = uniform(-span, span);
    ObjectInstance o;
    o.category = "doorway";
    o.ellipsoid.center = link.overlap_mid + shift * f.tangent + Vec3(0.0, 0.0, -0.5);
    o.ellipsoid.semi_axes = Vec3(link.gap / 2.0 + 0.05, 0.45, 1.0);
    o.ellipsoid.rotation = wall_rotation(f.normal, f.tangent);
    o.id = next_id();
    g_.objects.push_back(o);
    links_.push_back({o.id, {link.room_a, link.room_b}, {link.plane_a, link.plane_b}});

    if (spec_.symmetry == Symmetry::None || self_symmetric) return 1;
    if (!replicate || !image_pair || doorway_used_[*image_pair]) {
      layout_.metadata.symmetry_breaking_objects.push_back(o.id);
      return 1;
    }
    doorway_used_[*image_pair] = true;
    ObjectInstance image = mapped_object(o, *iso);
    image.id = next_id();
    g_.objects.push_back(image);
    std::vector<NodeId> rooms;
    std::vector<NodeId> planes;
    for (const auto& [room, plane] : {std::pair{link.room_a, link.plane_a}, std::pair{link.room_b, link.plane_b}}) {
      const RoomNode* mapped_room = room_at(g_, iso->apply(g_.find_room(room)->center));
      const PlaneNode* mapped_plane = plane_facing(g_, mapped_room->id, iso->rotation * g_.find_plane(plane)->normal);
      rooms.push_back(mapped_room->id);
      planes.push_back(mapped_plane->id);
    }
    links_.push_back({image.id, rooms, planes});
    return 2;
  }

  Layout& layout_;
  SceneGraph& g_;
  const LayoutSpec& spec_;
  const RelationParams& params_;
  std::mt19937_64 rng_;
  std::vector<AdjacentWalls> walls_;
  std::vector<bool> doorway_used_;
  std::vector<DoorwayLink> links_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<AdjacentWalls> adjacent_walls(const SceneGraph& g, double max_gap, double min_overlap) {
  std::vector<AdjacentWalls> out;
  for (std::size_t i = 0; i < g.rooms.size(); ++i) {
    for (std::size_t j = i + 1; j < g.rooms.size(); ++j) {
      const RoomNode& ri = g.rooms[i];
      const RoomNode& rj = g.rooms[j];
      for (const PlaneNode* p : g.planes_of(ri.id)) {
        for (const PlaneNode* q : g.planes_of(rj.id)) {
          if (p->normal.dot(q->normal) > -1.0 + 1e-6) continue;
          const WallFrame fp = wall_frame(g, ri, *p);
          const WallFrame fq = wall_frame(g, rj, *q);
          const double gap = -q->signed_distance(fp.foot);
          if (!(gap > 1e-9) || gap > max_gap) continue;
          const double sp = fp.tangent.dot(fp.foot);
          const double sq = fp.tangent.dot(fq.foot);
          const double lo = std::max(sp - fp.half_length, sq - fq.half_length);
          const double hi = std::min(sp + fp.half_length, sq + fq.half_length);
          if (hi - lo < min_overlap) continue;
          AdjacentWalls a;
          a.room_a = ri.id;
          a.plane_a = p->id;
          a.room_b = rj.id;
          a.plane_b = q->id;
          a.gap = gap;
          a.overlap = hi - lo;
          a.overlap_mid = fp.foot + ((lo + hi) / 2.0 - sp) * fp.tangent - (gap / 2.0) * fp.normal;
          out.push_back(std::move(a));
        }
      }
    }
  }
  return out;
}

Layout generate_layout(const LayoutSpec& spec) {
  spec.check();
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  const Grid grid = plan_grid(spec.n_rooms, spec.symmetry);
  const std::size_t n = spec.n_rooms;
  const bool congruent = spec.symmetry != Symmetry::None;

  // Congruent layouts share one room size. Otherwise rows get their own
  // height and every room its own width, so rows are staggered like bricks
  // while neighbours stay wall to wall.
  const int cells = grid.cols * grid.rows;
  std::vector<double> cell_w(cells);
  std::vector<double> row_h(grid.rows);
  if (congruent) {
    const double cw = uniform(spec.room_size_min, spec.room_size_max);
    const double ch = uniform(spec.room_size_min, spec.room_size_max);
    std::fill(cell_w.begin(), cell_w.end(), cw);
    std::fill(row_h.begin(), row_h.end(), ch);
  } else {
    for (auto& v : cell_w) v = uniform(spec.room_size_min, spec.room_size_max);
    for (auto& v : row_h) v = uniform(spec.room_size_min, spec.room_size_max);
  }

  auto sample_gaps = [&](int count) {
    std::vector<double> gaps(std::max(count - 1, 0));
    for (auto& g : gaps) g = uniform(spec.wall_thickness_min, spec.wall_thickness_max);
    if (spec.symmetry == Symmetry::Global) {
      for (std::size_t k = 0; k < gaps.size() / 2; ++k) gaps[gaps.size() - 1 - k] = gaps[k];
    }
    return gaps;
  };
  const auto col_gap = sample_gaps(grid.cols);
  const auto row_gap = sample_gaps(grid.rows);

  std::vector<double> cell_x(cells, 0.0);
  for (int k = 0; k < cells; ++k)
    if (k % grid.cols > 0) cell_x[k] = cell_x[k - 1] + cell_w[k - 1] + col_gap[k % grid.cols - 1];
  std::vector<double> row_y(grid.rows, 0.0);
  for (int r = 1; r < grid.rows; ++r) row_y[r] = row_y[r - 1] + row_h[r - 1] + row_gap[r - 1];
  const double total_w = cell_x[grid.cols - 1] + cell_w[grid.cols - 1];
  const double total_h = row_y.back() + row_h.back();

  Layout layout;
  layout.graph.kind = GraphKind::AGraph;
  for (std::size_t i = 0; i < n; ++i) {
    const int k = grid.cells[i];
    const int r = k / grid.cols;
    add_rectangular_room(layout.graph, "room_" + std::to_string(i), cell_x[k], row_y[r], cell_x[k] + cell_w[k],
                         row_y[r] + row_h[r]);
  }

  const RigidMotion placement =
      RigidMotion::yaw(uniform(0.0, 2.0 * std::numbers::pi), Vec3(uniform(-20.0, 20.0), uniform(-20.0, 20.0), 0.0));
  layout.graph = transform_graph(layout.graph, placement);
  layout.metadata.seed = spec.seed;
  layout.metadata.symmetry = spec.symmetry;
  if (spec.symmetry == Symmetry::Global) {
    layout.metadata.certified_isometry =
        half_turn_about(placement.apply(Vec3(total_w / 2.0, total_h / 2.0, 0.0)));
  }
  return layout;
}

Layout place_objects(Layout layout, const LayoutSpec& spec, const RelationParams& params) {
  spec.check();
  params.check();
  const std::size_t target =
      target_object_count(layout.graph.rooms.size() + layout.graph.planes.size(), spec.object_density);
  if (target == 0) return layout;
  if (spec.symmetry == Symmetry::Global && !layout.metadata.certified_isometry) {
    throw InvalidArgument("place_objects: global symmetry requires a certified isometry");
  }
  ObjectPlacer placer(layout, spec, params);
  placer.run(target);
  return layout;
}

Layout generate(const LayoutSpec& spec, const RelationParams& params) {
  return place_objects(generate_layout(spec), spec, params);
}

Derivation derive_sgraph(const SceneGraph& a, const SGraphDerivationSpec& d) {
  d.check();
  std::set<NodeId> observed;
  for (const auto& id : d.observed_rooms) {
    if (!a.find_room(id)) throw InvalidArgument("derive_sgraph: unknown room '" + id + "'");
    if (!observed.insert(id).second) throw InvalidArgument("derive_sgraph: room '" + id + "' listed twice");
  }
  std::mt19937_64 rng(d.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution drop(d.object_dropout);
  const std::set<NodeId> dropped(d.dropped_objects.begin(), d.dropped_objects.end());

  Derivation out;
  SceneGraph& s = out.graph;
  s.kind = GraphKind::SGraph;
  std::map<NodeId, NodeId> s_id;  // A id -> S id

  for (std::size_t i = 0; i < d.observed_rooms.size(); ++i) {
    const RoomNode& room = *a.find_room(d.observed_rooms[i]);
    RoomNode copy{"s_room_" + std::to_string(i), room.center};
    s_id[room.id] = copy.id;
    s.rooms.push_back(copy);
  }
  std::size_t plane_counter = 0;
  for (const auto& plane : a.planes) {
    if (!observed.count(plane.room)) continue;
    PlaneNode copy = plane;
    copy.id = "s_plane_" + std::to_string(plane_counter++);
    copy.room = s_id.at(plane.room);
    s_id[plane.id] = copy.id;
    s.planes.push_back(copy);
  }
  std::set<NodeId> in_observed;
  for (const auto& rel : a.relations) {
    if (rel.kind == RelationKind::ObjectInRoom && observed.count(rel.to)) in_observed.insert(rel.from);
  }
  std::size_t object_counter = 0;
  for (const auto& o : a.objects) {
    if (!in_observed.count(o.id)) continue;
    const bool lost = drop(rng);
    if (lost || dropped.count(o.id)) continue;
    ObjectInstance copy = o;
    copy.id = "s_obj_" + std::to_string(object_counter++);
    s_id[o.id] = copy.id;
    s.objects.push_back(copy);
  }
  for (const auto& rel : a.relations) {
    auto from = s_id.find(rel.from);
    auto to = s_id.find(rel.to);
    if (from != s_id.end() && to != s_id.end()) s.add_relation({rel.kind, from->second, to->second});
  }

  s = transform_graph(s, d.rigid_offset);
  if (d.position_noise_sigma > 0.0 || d.angle_noise_sigma > 0.0) {
    const double sp = d.position_noise_sigma;
    const double sa = d.angle_noise_sigma;
    for (auto& room : s.rooms) room.center += sp * Vec3(unit(rng), unit(rng), unit(rng));
    for (auto& plane : s.planes) {
      plane.normal = Eigen::AngleAxisd(sa * unit(rng), Vec3::UnitZ()) * plane.normal;
      plane.offset += sp * unit(rng);
    }
    for (auto& o : s.objects) o.ellipsoid.center += sp * Vec3(unit(rng), unit(rng), unit(rng));
  }

  for (const auto& [a_id, sid] : s_id) out.a_id[sid] = a_id;
  for (const auto& room : s.rooms) out.ground_truth.room_map[room.id] = out.a_id.at(room.id);
  for (const auto& plane : s.planes) out.ground_truth.plane_map[plane.id] = out.a_id.at(plane.id);
  return out;
}

}  // namespace semgraph
