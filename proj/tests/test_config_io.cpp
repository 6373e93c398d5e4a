#include <gtest/gtest.h>

#include <numbers>

#include <semgraph/config_io.hpp>
#include <semgraph/errors.hpp>
#include <semgraph/graph_io.hpp>

#include "oracles.hpp"

using namespace semgraph;
using nlohmann::json;

TEST(ConfigIo, MatchConfigDefaultsAndOverrides) {
  const MatchConfig d = match_config_from_json(json::object());
  EXPECT_EQ(d.theta_room_dist, 0.5);
  EXPECT_EQ(d.theta_plane_dist, 0.25);
  EXPECT_EQ(d.theta_plane_angle, 0.1);
  EXPECT_EQ(d.delta_gap, 0.05);
  EXPECT_EQ(d.max_candidates, 1'000'000u);
  EXPECT_TRUE(d.use_semantic_filter);

  const MatchConfig c = match_config_from_json({{"delta_gap", 0.1}, {"use_semantic_filter", false}});
  EXPECT_EQ(c.delta_gap, 0.1);
  EXPECT_FALSE(c.use_semantic_filter);
  EXPECT_EQ(match_config_from_json(to_json(c)).delta_gap, 0.1);
}

TEST(ConfigIo, MatchConfigRejectsBadInput) {
  EXPECT_THROW(match_config_from_json({{"delta", 0.1}}), SchemaError);
  EXPECT_THROW(match_config_from_json({{"delta_gap", "big"}}), SchemaError);
  EXPECT_THROW(match_config_from_json({{"theta_room_dist", -1.0}}), InvalidArgument);
  EXPECT_THROW(match_config_from_json(json::array()), SchemaError);
}

TEST(ConfigIo, RelationParams) {
  const RelationParams p = relation_params_from_json({{"tau", 0.2}});
  EXPECT_EQ(p.tau, 0.2);
  EXPECT_EQ(p.epsilon, 0.05);
  EXPECT_EQ(relation_params_from_json(to_json(p)).tau, 0.2);
  EXPECT_THROW(relation_params_from_json({{"epsilon", 0.6}}), InvalidArgument);
  EXPECT_THROW(relation_params_from_json({{"margin", 0.1}}), SchemaError);
}

TEST(ConfigIo, LayoutSpecRoundTrip) {
  const json j{{"n_rooms", 4},
               {"room_size_range", {3.5, 5.0}},
               {"symmetry", "local"},
               {"object_density", 0.2},
               {"object_categories", {{{"category", "door"}, {"weight", 2.0}}, {{"category", "window"}, {"weight", 1.0}}}},
               {"seed", 17}};
  const LayoutSpec s = layout_spec_from_json(j);
  EXPECT_EQ(s.n_rooms, 4u);
  EXPECT_EQ(s.room_size_min, 3.5);
  EXPECT_EQ(s.room_size_max, 5.0);
  EXPECT_EQ(s.symmetry, Symmetry::Local);
  ASSERT_EQ(s.object_categories.size(), 2u);
  EXPECT_EQ(s.object_categories[0].weight, 2.0);
  EXPECT_EQ(s.seed, 17u);
  EXPECT_EQ(to_json(layout_spec_from_json(to_json(s))), to_json(s));
  EXPECT_THROW(layout_spec_from_json({{"symmetry", "radial"}}), SchemaError);
  EXPECT_THROW(layout_spec_from_json({{"room_size_range", {3.0}}}), SchemaError);
}

TEST(ConfigIo, DerivationSpec) {
  const json j{{"observed_rooms", {"room_0", "room_2"}},
               {"rigid_offset", {{"yaw", std::numbers::pi / 2}, {"translation", {10, 5, 0}}}},
               {"object_dropout", 0.25},
               {"seed", 3}};
  const SGraphDerivationSpec d = derivation_spec_from_json(j);
  EXPECT_EQ(d.observed_rooms, (std::vector<NodeId>{"room_0", "room_2"}));
  EXPECT_LT((d.rigid_offset.apply(Vec3(1, 0, 0)) - Vec3(10, 6, 0)).norm(), 1e-12);
  EXPECT_EQ(d.object_dropout, 0.25);
  EXPECT_THROW(derivation_spec_from_json({{"object_dropout", 1.0}}), InvalidArgument);
  EXPECT_THROW(derivation_spec_from_json({{"rigid_offset", {{"pitch", 1.0}}}}), SchemaError);
}

TEST(ConfigIo, BenchSpec) {
  const json j{{"a_rooms", {2, 3}},
               {"s_rooms", {1, 2}},
               {"symmetries", {"none", "global"}},
               {"densities", {0.0, 0.2}},
               {"seeds_per_cell", 4},
               {"filter", "off"},
               {"match", {{"delta_gap", 0.02}}},
               {"layout", {{"room_size_range", {3.0, 4.0}}}}};
  const BenchSpec b = bench_spec_from_json(j);
  EXPECT_EQ(b.a_rooms, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(b.symmetries, (std::vector<Symmetry>{Symmetry::None, Symmetry::Global}));
  EXPECT_EQ(b.filter, FilterMode::Off);
  EXPECT_EQ(b.match.delta_gap, 0.02);
  EXPECT_EQ(b.layout.room_size_max, 4.0);
  EXPECT_THROW(bench_spec_from_json({{"seeds_per_cell", 0}}), InvalidArgument);
  EXPECT_THROW(bench_spec_from_json({{"a_rooms", {2}}, {"s_rooms", {3}}}), InvalidArgument);
  EXPECT_THROW(bench_spec_from_json({{"filter", "sometimes"}}), SchemaError);
}

TEST(ConfigIo, ShippedConfigsParse) {
  const auto dir = semgraph::testing::data_dir() / "configs";
  EXPECT_NO_THROW(bench_spec_from_json(read_json_file(dir / "sweep.json")));
  EXPECT_NO_THROW(bench_spec_from_json(read_json_file(dir / "sweep_quick.json")));
  EXPECT_NO_THROW(layout_spec_from_json(read_json_file(dir / "layout.json")));
  EXPECT_NO_THROW(derivation_spec_from_json(read_json_file(dir / "derivation.json")));
  EXPECT_NO_THROW(match_config_from_json(read_json_file(dir / "match.json")));
}
