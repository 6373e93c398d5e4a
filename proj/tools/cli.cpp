#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "semgraph/bench.hpp"
#include "semgraph/config_io.hpp"
#include "semgraph/detection.hpp"
#include "semgraph/doorways.hpp"
#include "semgraph/ellipsoid.hpp"
#include "semgraph/errors.hpp"
#include "semgraph/graph_io.hpp"
#include "semgraph/replay.hpp"
#include "semgraph/scenarios.hpp"

namespace semgraph::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Settings {
  MatchConfig match;
  RelationParams relations;
};

// A config file is either a bare match config or an object with optional
// "match" and "relations" sections.
Settings load_settings(const std::string& path) {
  Settings s;
  if (path.empty()) return s;
  const json doc = read_json_file(path);
  if (doc.is_object() && (doc.contains("match") || doc.contains("relations"))) {
    for (const auto& item : doc.items()) {
      if (item.key() != "match" && item.key() != "relations") {
        throw SchemaError(path + ": unknown section '" + item.key() + "'");
      }
    }
    if (doc.contains("match")) s.match = match_config_from_json(doc["match"]);
    if (doc.contains("relations")) s.relations = relation_params_from_json(doc["relations"]);
  } else {
    s.match = match_config_from_json(doc);
  }
  return s;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::vector<bool> filter_modes(const std::string& text) {
  auto mode = parse_filter_mode(text);
  if (!mode) throw InvalidArgument("--filter must be on, off or both");
  if (*mode == FilterMode::On) return {true};
  if (*mode == FilterMode::Off) return {false};
  return {true, false};
}

std::vector<ObjectInstance> objects_from_file(const std::string& path) {
  const json doc = read_json_file(path);
  if (doc.is_array()) {
    // Bare object list in graph-file form.
    json wrapper = graph_to_json(SceneGraph{});
    wrapper["objects"] = doc;
    return graph_from_json(wrapper).objects;
  }
  return graph_from_json(doc).objects;
}

int run_generate(const std::string& spec_path, const std::string& out_dir, const std::optional<std::uint64_t>& seed,
                 const std::string& derive_path, const std::string& config_path, std::ostream& out) {
  const Settings settings = load_settings(config_path);
  LayoutSpec spec = layout_spec_from_json(read_json_file(spec_path));
  if (seed) spec.seed = *seed;
  Layout layout = generate(spec, settings.relations);
  const fs::path dir(out_dir);
  save_graph(layout.graph, dir / "agraph.json");
  if (!derive_path.empty()) {
    const SGraphDerivationSpec d = derivation_spec_from_json(read_json_file(derive_path));
    const Derivation s = derive_sgraph(layout.graph, d);
    save_graph(s.graph, dir / "sgraph.json");
    layout.metadata.ground_truth_assignment = s.ground_truth;
  }
  write_text_file(dir / "metadata.json", to_json(layout.metadata).dump(2) + "\n");
  out << "wrote " << (dir / "agraph.json").string() << '\n';
  return 0;
}

int run_enrich(const std::string& graph_path, const std::string& clusters_path, const std::string& out_path,
               const std::string& config_path, std::ostream& out) {
  const Settings settings = load_settings(config_path);
  SceneGraph g = load_graph(graph_path);
  const json clusters = read_json_file(clusters_path);
  if (!clusters.is_array()) throw SchemaError(clusters_path + ": expected an array of clusters");
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const json& c = clusters[i];
    const std::string where = clusters_path + "[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("category") || !c.contains("points") || c.size() != 2 ||
        !c["category"].is_string() || !c["points"].is_array()) {
      throw SchemaError(where + ": expected {\"category\": string, \"points\": [[x, y, z], ...]}");
    }
    std::vector<Vec3> points;
    for (const auto& p : c["points"]) points.push_back(vec3_from_json(p, where + ".points"));
    if (points.empty()) throw SchemaError(where + ": empty point cluster");
    const NodeId id = fresh_id(g, "obj_");
    auto assoc = associate_object(points, c["category"].get<std::string>(), std::move(g.objects),
                                  settings.relations, id);
    g.objects = std::move(assoc.objects);
  }
  g = generate_relations(g, settings.relations);
  emit(dump_graph(g), out_path, out);
  return 0;
}

int run_doorways(const std::string& graph_path, const std::string& out_path, const std::string& config_path,
                 std::ostream& out) {
  const Settings settings = load_settings(config_path);
  const SceneGraph g = load_graph(graph_path);
  const DoorwayDetection det = detect_doorways(g, settings.relations);
  json events = json::array();
  for (const auto& e : det.events) {
    events.push_back({{"kf_inside", e.kf_inside},
                      {"kf_outside", e.kf_outside},
                      {"room", e.room},
                      {"crossed_plane", e.crossed_plane},
                      {"location", vec3_to_json(e.location)},
                      {"doorway", e.doorway}});
  }
  json doc{{"events", events}};
  if (out_path.empty()) {
    doc["graph"] = graph_to_json(det.graph);
  } else {
    save_graph(det.graph, out_path);
  }
  out << doc.dump(2) << '\n';
  return 0;
}

int run_match(const std::string& a_path, const std::string& s_path, const std::string& config_path,
              const std::string& filter, bool all, const std::string& out_path, std::ostream& out) {
  const Settings settings = load_settings(config_path);
  const SceneGraph a = load_graph(a_path);
  const SceneGraph s = load_graph(s_path);
  const auto modes = filter.empty() ? std::vector<bool>{settings.match.use_semantic_filter} : filter_modes(filter);
  json doc;
  for (bool mode : modes) {
    MatchConfig cfg = settings.match;
    cfg.use_semantic_filter = mode;
    json r = to_json(match(a, s, cfg), all);
    if (modes.size() == 1) {
      doc = std::move(r);
    } else {
      doc[mode ? "on" : "off"] = std::move(r);
    }
  }
  emit(doc.dump(2) + "\n", out_path, out);
  return 0;
}

int run_replay(const std::string& layout_path, bool family, const std::vector<std::string>& order,
               const std::string& config_path, const std::string& filter, const std::string& out_path,
               std::ostream& out) {
  const Settings settings = load_settings(config_path);
  const auto modes = filter_modes(filter.empty() ? "both" : filter);
  std::vector<Scenario> scenarios;
  if (family) {
    if (!layout_path.empty()) throw InvalidArgument("replay: give either a layout or --scenario-family");
    scenarios = symmetric_scenarios();
  } else {
    if (layout_path.empty()) throw InvalidArgument("replay: a layout file or --scenario-family is required");
    Scenario s;
    s.name = fs::path(layout_path).stem().string();
    s.map = load_graph(layout_path);
    s.order = order;
    if (s.order.empty()) {
      for (const auto& room : s.map.rooms) s.order.push_back(room.id);
    }
    scenarios.push_back(std::move(s));
  }
  std::ostringstream csv;
  csv << kConvergenceCsvHeader << '\n';
  for (const auto& sc : scenarios) {
    for (bool mode : modes) {
      MatchConfig cfg = settings.match;
      cfg.use_semantic_filter = mode;
      csv << convergence_csv_rows(sc.name, mode, run_exploration(sc.map, sc.order, {}, cfg));
    }
  }
  emit(csv.str(), out_path, out);
  return 0;
}

int run_eval_det(const std::string& pred_path, const std::string& gt_path, double dist, const std::string& out_path,
                 std::ostream& out) {
  const DetectionReport r = eval_detections(objects_from_file(pred_path), objects_from_file(gt_path), dist);
  emit(to_json(r).dump(2) + "\n", out_path, out);
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out_dir, std::size_t jobs,
              const std::optional<std::uint64_t>& seed, const std::string& filter, std::ostream& out,
              std::ostream& err) {
  BenchSpec spec = bench_spec_from_json(read_json_file(spec_path));
  if (seed) spec.base_seed = *seed;
  if (!filter.empty()) spec.filter = *parse_filter_mode(filter);
  const BenchReport report = bench_matching(spec, jobs);
  const fs::path dir(out_dir);
  write_text_file(dir / "runs.csv", runs_csv(report));
  write_text_file(dir / "aggregate.csv", aggregate_csv(report));
  for (const auto& f : report.failures) {
    err << "run failed: seed=" << f.seed << " symmetry=" << to_string(f.symmetry) << " a_rooms=" << f.a_rooms
        << " s_rooms=" << f.s_rooms << " density=" << f.density << ": " << f.message << '\n';
  }
  out << report.rows.size() << " rows written to " << dir.string() << '\n';
  return 0;
}

int run_validate(const std::string& graph_path, std::ostream& out) {
  const SceneGraph g = read_graph(graph_path);
  const auto diags = validate(g);
  for (const auto& d : diags) out << d.subject << ": [" << d.rule << "] " << d.message << '\n';
  if (!diags.empty()) {
    out << diags.size() << " problem(s) found\n";
    return 1;
  }
  out << "ok\n";
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic scene-graph matching toolkit", "semgraph"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string filter;
  std::optional<std::uint64_t> seed;

  auto* gen = app.add_subcommand("generate", "Generate a synthetic A-Graph from a layout spec");
  std::string gen_spec;
  std::string gen_derive;
  gen->add_option("spec", gen_spec, "Layout spec JSON")->required()->check(CLI::ExistingFile);
  gen->add_option("-o,--out", out_path, "Output directory")->required();
  gen->add_option("--seed", seed, "Override the spec seed");
  gen->add_option("--derive", gen_derive, "Derivation spec; also writes sgraph.json")->check(CLI::ExistingFile);
  gen->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);

  auto* enrich = app.add_subcommand("enrich", "Associate labeled point clusters and generate relations");
  std::string enrich_graph;
  std::string enrich_clusters;
  enrich->add_option("graph", enrich_graph, "Graph JSON")->required()->check(CLI::ExistingFile);
  enrich->add_option("clusters", enrich_clusters, "Clusters JSON")->required()->check(CLI::ExistingFile);
  enrich->add_option("-o,--out", out_path, "Output graph (default: stdout)");
  enrich->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);

  auto* doors = app.add_subcommand("doorways", "Detect doorways from the keyframe trajectory");
  std::string doors_graph;
  doors->add_option("graph", doors_graph, "Graph JSON with keyframes")->required()->check(CLI::ExistingFile);
  doors->add_option("-o,--out", out_path, "Output graph (default: embedded in stdout)");
  doors->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);

  auto* m = app.add_subcommand("match", "Match an S-Graph against an A-Graph");
  std::string m_a;
  std::string m_s;
  bool m_all = false;
  m->add_option("agraph", m_a, "A-Graph JSON")->required()->check(CLI::ExistingFile);
  m->add_option("sgraph", m_s, "S-Graph JSON")->required()->check(CLI::ExistingFile);
  m->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);
  m->add_option("--filter", filter, "Semantic filter: on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
  m->add_flag("--all", m_all, "Include every consistent solution");
  m->add_option("-o,--out", out_path, "Output file (default: stdout)");

  auto* rep = app.add_subcommand("replay", "Incremental exploration; prints convergence CSV");
  std::string rep_layout;
  bool rep_family = false;
  std::vector<std::string> rep_order;
  rep->add_option("layout", rep_layout, "A-Graph JSON")->check(CLI::ExistingFile);
  rep->add_flag("--scenario-family", rep_family, "Use the built-in symmetric scenario family");
  rep->add_option("--order", rep_order, "Room visiting order")->delimiter(',');
  rep->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);
  rep->add_option("--filter", filter, "Semantic filter: on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
  rep->add_option("-o,--out", out_path, "Output CSV (default: stdout)");

  auto* det = app.add_subcommand("eval-det", "Precision, recall and F1 of predicted objects");
  std::string det_pred;
  std::string det_gt;
  double det_dist = 0.5;
  det->add_option("pred", det_pred, "Predicted objects (graph JSON or object list)")->required()->check(CLI::ExistingFile);
  det->add_option("gt", det_gt, "Ground-truth objects (graph JSON or object list)")->required()->check(CLI::ExistingFile);
  det->add_option("--dist", det_dist, "Match distance threshold in meters");
  det->add_option("-o,--out", out_path, "Output file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Run a matching sweep and write runs.csv and aggregate.csv");
  std::string bench_spec;
  std::size_t jobs = 1;
  bench->add_option("spec", bench_spec, "Bench spec JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("-o,--out", out_path, "Output directory")->required();
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Override base_seed");
  bench->add_option("--filter", filter, "Semantic filter: on, off or both")->check(CLI::IsMember({"on", "off", "both"}));

  auto* val = app.add_subcommand("validate", "Check a graph file and list its problems");
  std::string val_graph;
  val->add_option("graph", val_graph, "Graph JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen)) return run_generate(gen_spec, out_path, seed, gen_derive, config, out);
    if (app.got_subcommand(enrich)) return run_enrich(enrich_graph, enrich_clusters, out_path, config, out);
    if (app.got_subcommand(doors)) return run_doorways(doors_graph, out_path, config, out);
    if (app.got_subcommand(m)) return run_match(m_a, m_s, config, filter, m_all, out_path, out);
    if (app.got_subcommand(rep)) return run_replay(rep_layout, rep_family, rep_order, config, filter, out_path, out);
    if (app.got_subcommand(det)) return run_eval_det(det_pred, det_gt, det_dist, out_path, out);
    if (app.got_subcommand(bench)) return run_bench(bench_spec, out_path, jobs, seed, filter, out, err);
    if (app.got_subcommand(val)) return run_validate(val_graph, out);
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& d : e.details()) err << "  " << d << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace semgraph::cli
