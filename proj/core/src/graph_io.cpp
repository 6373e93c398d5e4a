#include "semgraph/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "semgraph/errors.hpp"

namespace semgraph {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) throw SchemaError(where + ": missing field '" + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw SchemaError(where + ": unknown field '" + key + "'");
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw SchemaError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_array()) throw SchemaError(where + ": field '" + key + "' must be an array");
  return v;
}

std::string item_where(const char* section, std::size_t i, const json& item) {
  std::ostringstream os;
  os << section << "[" << i << "]";
  if (item.is_object() && item.contains("id") && item["id"].is_string()) {
    os << " (id '" << item["id"].get<std::string>() << "')";
  }
  return os.str();
}

}  // namespace

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(where + ": expected [x, y, z]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw SchemaError(where + ": vector entries must be numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json graph_to_json(const SceneGraph& g) {
  json doc;
  doc["format"] = kGraphFormatVersion;
  doc["kind"] = std::string(to_string(g.kind));

  json rooms = json::array();
  for (const auto& r : g.rooms) rooms.push_back({{"id", r.id}, {"center", vec3_to_json(r.center)}});
  doc["rooms"] = std::move(rooms);

  json planes = json::array();
  for (const auto& p : g.planes) {
    planes.push_back({{"id", p.id},
                      {"room", p.room},
                      {"normal", vec3_to_json(p.normal)},
                      {"offset", p.offset}});
  }
  doc["planes"] = std::move(planes);

  json objects = json::array();
  for (const auto& o : g.objects) {
    json rot = json::array();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) rot.push_back(o.ellipsoid.rotation(r, c));
    }
    json obj = {{"id", o.id},
                {"category", o.category},
                {"ellipsoid",
                 {{"center", vec3_to_json(o.ellipsoid.center)},
                  {"semi_axes", vec3_to_json(o.ellipsoid.semi_axes)},
                  {"rotation", std::move(rot)}}}};
    if (!o.support_points.empty()) {
      json pts = json::array();
      for (const auto& p : o.support_points) pts.push_back(vec3_to_json(p));
      obj["support_points"] = std::move(pts);
    }
    objects.push_back(std::move(obj));
  }
  doc["objects"] = std::move(objects);

  json keyframes = json::array();
  for (const auto& k : g.keyframes) {
    keyframes.push_back({{"id", k.id}, {"position", vec3_to_json(k.position)}, {"t", k.timestamp}});
  }
  doc["keyframes"] = std::move(keyframes);

  json relations = json::array();
  for (const auto& rel : g.relations) {
    relations.push_back({{"kind", std::string(to_string(rel.kind))}, {"from", rel.from}, {"to", rel.to}});
  }
  doc["relations"] = std::move(relations);
  return doc;
}

SceneGraph graph_from_json(const json& doc) {
  require_object(doc, "graph", {"format", "kind", "rooms", "planes", "objects", "keyframes", "relations"});
  if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kGraphFormatVersion) {
    throw SchemaError("graph: unsupported format version (expected 1)");
  }
  SceneGraph g;
  const auto kind = parse_graph_kind(get_string(doc, "kind", "graph"));
  if (!kind) throw SchemaError("graph: kind must be \"agraph\" or \"sgraph\"");
  g.kind = *kind;

  const json& rooms = get_array(doc, "rooms", "graph");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const std::string where = item_where("rooms", i, rooms[i]);
    require_object(rooms[i], where, {"id", "center"});
    g.rooms.push_back({get_string(rooms[i], "id", where), vec3_from_json(rooms[i]["center"], where + ".center")});
  }

  const json& planes = get_array(doc, "planes", "graph");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::string where = item_where("planes", i, planes[i]);
    require_object(planes[i], where, {"id", "room", "normal", "offset"});
    PlaneNode p;
    p.id = get_string(planes[i], "id", where);
    p.room = get_string(planes[i], "room", where);
    p.normal = vec3_from_json(planes[i]["normal"], where + ".normal");
    p.offset = get_number(planes[i], "offset", where);
    g.planes.push_back(std::move(p));
  }

  const json& objects = get_array(doc, "objects", "graph");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string where = item_where("objects", i, objects[i]);
    require_object(objects[i], where, {"id", "category", "ellipsoid"}, {"support_points"});
    ObjectInstance o;
    o.id = get_string(objects[i], "id", where);
    o.category = get_string(objects[i], "category", where);
    const json& e = objects[i]["ellipsoid"];
    require_object(e, where + ".ellipsoid", {"center", "semi_axes", "rotation"});
    o.ellipsoid.center = vec3_from_json(e["center"], where + ".ellipsoid.center");
    o.ellipsoid.semi_axes = vec3_from_json(e["semi_axes"], where + ".ellipsoid.semi_axes");
    const json& rot = e["rotation"];
    if (!rot.is_array() || rot.size() != 9) {
      throw SchemaError(where + ".ellipsoid.rotation: expected 9 numbers (row-major)");
    }
    for (int k = 0; k < 9; ++k) {
      if (!rot[k].is_number()) throw SchemaError(where + ".ellipsoid.rotation: entries must be numbers");
      o.ellipsoid.rotation(k / 3, k % 3) = rot[k].get<double>();
    }
    if (objects[i].contains("support_points")) {
      const json& pts = get_array(objects[i], "support_points", where);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        o.support_points.push_back(vec3_from_json(pts[k], where + ".support_points"));
      }
    }
    g.objects.push_back(std::move(o));
  }

  const json& keyframes = get_array(doc, "keyframes", "graph");
  for (std::size_t i = 0; i < keyframes.size(); ++i) {
    const std::string where = item_where("keyframes", i, keyframes[i]);
    require_object(keyframes[i], where, {"id", "position", "t"});
    g.keyframes.push_back({get_string(keyframes[i], "id", where),
                           vec3_from_json(keyframes[i]["position"], where + ".position"),
                           get_number(keyframes[i], "t", where)});
  }

  const json& relations = get_array(doc, "relations", "graph");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string where = "relations[" + std::to_string(i) + "]";
    require_object(relations[i], where, {"kind", "from", "to"});
    const auto kind_text = get_string(relations[i], "kind", where);
    const auto rk = parse_relation_kind(kind_text);
    if (!rk) throw SchemaError(where + ": unknown relation kind '" + kind_text + "'");
    g.relations.push_back({*rk, get_string(relations[i], "from", where), get_string(relations[i], "to", where)});
  }
  return g;
}

std::string dump_graph(const SceneGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SceneGraph read_graph(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return graph_from_json(doc);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

SceneGraph load_graph(const std::filesystem::path& path) {
  SceneGraph g = read_graph(path);
  for (const auto& rel : g.relations) {
    for (const auto& id : {rel.from, rel.to}) {
      if (!g.layer_of(id)) {
        throw SchemaError(path.string() + ": relation " + std::string(to_string(rel.kind)) +
                          " references unknown node id '" + id + "'");
      }
    }
  }
  const auto diags = validate(g);
  if (!diags.empty()) {
    std::vector<std::string> details;
    for (const auto& d : diags) details.push_back(d.subject + ": [" + d.rule + "] " + d.message);
    const std::string what = path.string() + ": graph violates " + std::to_string(diags.size()) +
                             " invariant(s); first: " + details.front();
    throw InvariantError(what, std::move(details));
  }
  return g;
}

void save_graph(const SceneGraph& g, const std::filesystem::path& path) {
  write_text_file(path, dump_graph(g));
}

}  // namespace semgraph
