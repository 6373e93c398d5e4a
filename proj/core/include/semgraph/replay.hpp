#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semgraph/graph.hpp"
#include "semgraph/matcher.hpp"
#include "semgraph/synthgen.hpp"

namespace semgraph {

struct ConvergenceRow {
  std::size_t k = 0;  // rooms observed so far
  MatchOutcome outcome = MatchOutcome::NoMatch;
  std::size_t n_solutions = 0;
  double elapsed_s = 0.0;
};

struct ConvergenceRecord {
  std::size_t map_rooms = 0;
  std::vector<ConvergenceRow> rows;
  std::optional<std::size_t> first_unique_k;
};

/// Observes the rooms of `order` one at a time. For each prefix, derives the
/// S-Graph with `d` (its observed_rooms is replaced by the prefix) and runs
/// match() against `a`.
ConvergenceRecord run_exploration(const SceneGraph& a, const std::vector<NodeId>& order,
                                  const SGraphDerivationSpec& d, const MatchConfig& cfg);

nlohmann::json to_json(const ConvergenceRecord& r);

inline constexpr const char* kConvergenceCsvHeader = "scenario,map_rooms,k,filter,outcome,n_solutions,elapsed_s";

/// One CSV line per row of `r`, without the header.
std::string convergence_csv_rows(const std::string& scenario, bool filter, const ConvergenceRecord& r);

/// Keyframes walking through the rooms of `order`: center, a point 0.5 m
/// in front of the doorway, the doorway, the matching point in the next room,
/// its center, and so on. Segments are sampled every `step` meters and every
/// waypoint is a keyframe. Consecutive rooms must share a doorway object.
std::vector<Keyframe> synth_trajectory(const SceneGraph& a, const std::vector<NodeId>& order, double step);

}  // namespace semgraph
