#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <semgraph/errors.hpp>
#include <semgraph/graph_io.hpp>
#include <semgraph/synthgen.hpp>

#include "oracles.hpp"

using namespace semgraph;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fixture(const std::string& name) { return semgraph::testing::data_dir() / "fixtures" / name; }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "semgraph_test_graph_io";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json minimal_doc() { return read_json_file(fixture("minimal_room.json")); }

}  // namespace

TEST(GraphIo, MinimalFixture) {
  SceneGraph g = load_graph(fixture("minimal_room.json"));
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.rooms.size(), 1u);
  EXPECT_EQ(g.planes.size(), 4u);
  EXPECT_EQ(g.relations.size(), 4u);
  for (const auto& r : g.relations) EXPECT_EQ(r.kind, RelationKind::RoomHasPlane);
}

TEST(GraphIo, FixturesRoundTripByteIdentical) {
  for (const char* name : {"minimal_room.json", "two_rooms_enriched.json"}) {
    SceneGraph g = load_graph(fixture(name));
    EXPECT_EQ(dump_graph(g), slurp(fixture(name))) << name;
  }
}

TEST(GraphIo, GeneratedGraphRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LayoutSpec spec;
    spec.n_rooms = 3;
    spec.object_density = 0.2;
    spec.seed = seed;
    SceneGraph g = generate(spec).graph;
    const fs::path p = scratch("gen.json");
    save_graph(g, p);
    SceneGraph back = load_graph(p);
    EXPECT_EQ(dump_graph(back), dump_graph(g));
    EXPECT_EQ(back.relations, g.relations);
  }
}

TEST(GraphIo, KeyframesAndSupportPointsSurvive) {
  SceneGraph g = semgraph::testing::rect_room(3, 4);
  g.keyframes.push_back({"kf_0", Vec3(0.1, 0.2, 0.3), 0.5});
  g.keyframes.push_back({"kf_1", Vec3(0.4, 0.2, 0.3), 1.5});
  g.add_relation({RelationKind::KeyframeInRoom, "kf_0", "r"});
  semgraph::testing::add_wall_object(g, "d", "door", Vec3(-1.45, 0, 1), Vec3::UnitX(), "r", "r_w");
  g.objects[0].support_points = {Vec3(1, 2, 3), Vec3(-1, 0.5, 0.25)};
  SceneGraph back = graph_from_json(graph_to_json(g));
  ASSERT_EQ(back.keyframes.size(), 2u);
  EXPECT_EQ(back.keyframes[1].timestamp, 1.5);
  EXPECT_EQ(back.objects[0].support_points, g.objects[0].support_points);
  EXPECT_EQ(dump_graph(back), dump_graph(g));
}

TEST(GraphIo, UnknownFieldRejected) {
  auto doc = minimal_doc();
  doc["planes"][0]["colour"] = "red";
  EXPECT_THROW(graph_from_json(doc), SchemaError);
  doc = minimal_doc();
  doc["extra"] = 1;
  EXPECT_THROW(graph_from_json(doc), SchemaError);
}

TEST(GraphIo, MissingFieldAndBadTypes) {
  auto doc = minimal_doc();
  doc["rooms"][0].erase("center");
  EXPECT_THROW(graph_from_json(doc), SchemaError);
  doc = minimal_doc();
  doc["rooms"][0]["center"] = {1, 2};
  EXPECT_THROW(graph_from_json(doc), SchemaError);
  doc = minimal_doc();
  doc["format"] = 2;
  EXPECT_THROW(graph_from_json(doc), SchemaError);
  doc = minimal_doc();
  doc["relations"][0]["kind"] = "owns";
  EXPECT_THROW(graph_from_json(doc), SchemaError);
}

TEST(GraphIo, UnknownRelationEndpointNamesId) {
  auto doc = minimal_doc();
  doc["relations"].push_back({{"kind", "room_has_plane"}, {"from", "room_a"}, {"to", "ghost_plane"}});
  const fs::path p = scratch("ghost.json");
  write_text_file(p, doc.dump(2));
  try {
    load_graph(p);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost_plane"), std::string::npos) << e.what();
  }
}

TEST(GraphIo, InvariantViolationOnLoad) {
  auto doc = minimal_doc();
  doc["planes"][0]["normal"] = {1.1, 0.0, 0.0};
  const fs::path p = scratch("nonunit.json");
  write_text_file(p, doc.dump(2));
  EXPECT_NO_THROW(read_graph(p));
  try {
    load_graph(p);
    FAIL() << "expected InvariantError";
  } catch (const InvariantError& e) {
    ASSERT_EQ(e.details().size(), 1u);
    EXPECT_NE(e.details()[0].find("room_a_w"), std::string::npos);
  }
}

TEST(GraphIo, IoAndParseErrors) {
  EXPECT_THROW(load_graph(scratch("does_not_exist.json")), IoError);
  const fs::path p = scratch("garbage.json");
  write_text_file(p, "{ not json");
  EXPECT_THROW(load_graph(p), SchemaError);
}
