#include "semgraph/config_io.hpp"

#include <set>

#include "semgraph/errors.hpp"
#include "semgraph/graph_io.hpp"

namespace semgraph {

namespace {

using nlohmann::json;

class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw SchemaError(where_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (const json* v = find(key)) {
      try {
        out = v->get<T>();
      } catch (const json::exception&) {
        throw SchemaError(where_ + "." + key + ": wrong type");
      }
    }
  }

  const json* find(const char* key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return where_ + "." + key; }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!used_.count(item.key())) throw SchemaError(where_ + ": unknown field '" + item.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

void read_range(Fields& f, const char* key, double& lo, double& hi) {
  if (const json* v = f.find(key)) {
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      throw SchemaError(f.path(key) + ": expected [min, max]");
    }
    lo = (*v)[0].get<double>();
    hi = (*v)[1].get<double>();
  }
}

Symmetry symmetry_from(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  auto s = parse_symmetry(v.get<std::string>());
  if (!s) throw SchemaError(where + ": unknown symmetry '" + v.get<std::string>() + "'");
  return *s;
}

}  // namespace

MatchConfig match_config_from_json(const json& j) {
  MatchConfig c;
  Fields f(j, "match");
  f.read("theta_room_dist", c.theta_room_dist);
  f.read("theta_plane_angle", c.theta_plane_angle);
  f.read("theta_plane_dist", c.theta_plane_dist);
  f.read("delta_gap", c.delta_gap);
  f.read("use_semantic_filter", c.use_semantic_filter);
  f.read("max_candidates", c.max_candidates);
  f.finish();
  c.check();
  return c;
}

json to_json(const MatchConfig& c) {
  return {{"theta_room_dist", c.theta_room_dist},   {"theta_plane_angle", c.theta_plane_angle},
          {"theta_plane_dist", c.theta_plane_dist}, {"delta_gap", c.delta_gap},
          {"use_semantic_filter", c.use_semantic_filter}, {"max_candidates", c.max_candidates}};
}

RelationParams relation_params_from_json(const json& j) {
  RelationParams p;
  Fields f(j, "relations");
  f.read("epsilon", p.epsilon);
  f.read("tau", p.tau);
  f.read("overlap_scale", p.overlap_scale);
  f.read("ellipsoid_k", p.ellipsoid_k);
  f.finish();
  p.check();
  return p;
}

json to_json(const RelationParams& p) {
  return {{"epsilon", p.epsilon}, {"tau", p.tau}, {"overlap_scale", p.overlap_scale}, {"ellipsoid_k", p.ellipsoid_k}};
}

LayoutSpec layout_spec_from_json(const json& j, LayoutSpec s) {
  Fields f(j, "layout");
  f.read("n_rooms", s.n_rooms);
  read_range(f, "room_size_range", s.room_size_min, s.room_size_max);
  read_range(f, "wall_thickness_range", s.wall_thickness_min, s.wall_thickness_max);
  if (const json* v = f.find("symmetry")) s.symmetry = symmetry_from(*v, f.path("symmetry"));
  f.read("object_density", s.object_density);
  if (const json* v = f.find("object_categories")) {
    if (!v->is_array()) throw SchemaError(f.path("object_categories") + ": expected an array");
    s.object_categories.clear();
    for (const auto& item : *v) {
      CategoryWeight cw;
      Fields cf(item, f.path("object_categories") + "[]");
      cf.read("category", cw.category);
      cf.read("weight", cw.weight);
      cf.finish();
      s.object_categories.push_back(cw);
    }
  }
  f.read("seed", s.seed);
  f.finish();
  return s;
}

json to_json(const LayoutSpec& s) {
  json categories = json::array();
  for (const auto& c : s.object_categories) categories.push_back({{"category", c.category}, {"weight", c.weight}});
  return {{"n_rooms", s.n_rooms},
          {"room_size_range", {s.room_size_min, s.room_size_max}},
          {"wall_thickness_range", {s.wall_thickness_min, s.wall_thickness_max}},
          {"symmetry", std::string(to_string(s.symmetry))},
          {"object_density", s.object_density},
          {"object_categories", categories},
          {"seed", s.seed}};
}

SGraphDerivationSpec derivation_spec_from_json(const json& j) {
  SGraphDerivationSpec d;
  Fields f(j, "derivation");
  f.read("observed_rooms", d.observed_rooms);
  f.read("position_noise_sigma", d.position_noise_sigma);
  f.read("angle_noise_sigma", d.angle_noise_sigma);
  f.read("object_dropout", d.object_dropout);
  f.read("dropped_objects", d.dropped_objects);
  f.read("seed", d.seed);
  if (const json* v = f.find("rigid_offset")) {
    Fields rf(*v, f.path("rigid_offset"));
    double yaw = 0.0;
    Vec3 t = Vec3::Zero();
    rf.read("yaw", yaw);
    if (const json* tv = rf.find("translation")) t = vec3_from_json(*tv, rf.path("translation"));
    rf.finish();
    d.rigid_offset = RigidMotion::yaw(yaw, t);
  }
  f.finish();
  d.check();
  return d;
}

BenchSpec bench_spec_from_json(const json& j) {
  BenchSpec b;
  Fields f(j, "bench");
  f.read("a_rooms", b.a_rooms);
  f.read("s_rooms", b.s_rooms);
  if (const json* v = f.find("symmetries")) {
    if (!v->is_array()) throw SchemaError(f.path("symmetries") + ": expected an array");
    b.symmetries.clear();
    for (const auto& item : *v) b.symmetries.push_back(symmetry_from(item, f.path("symmetries")));
  }
  f.read("densities", b.densities);
  f.read("seeds_per_cell", b.seeds_per_cell);
  f.read("base_seed", b.base_seed);
  if (const json* v = f.find("filter")) {
    auto mode = v->is_string() ? parse_filter_mode(v->get<std::string>()) : std::nullopt;
    if (!mode) throw SchemaError(f.path("filter") + ": expected \"on\", \"off\" or \"both\"");
    b.filter = *mode;
  }
  f.read("timing_repeats", b.timing_repeats);
  if (const json* v = f.find("match")) b.match = match_config_from_json(*v);
  if (const json* v = f.find("layout")) b.layout = layout_spec_from_json(*v, b.layout);
  if (const json* v = f.find("relations")) b.relations = relation_params_from_json(*v);
  f.finish();
  b.check();
  return b;
}

}  // namespace semgraph
