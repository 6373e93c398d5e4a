#pragma once

#include <set>
#include <string>
#include <vector>

#include "semgraph/graph.hpp"

namespace semgraph {

/// Incremental-exploration scenario: a map and the order its rooms are seen.
struct Scenario {
  std::string name;
  SceneGraph map;
  std::vector<NodeId> order;
  /// Prefix lengths at which the observed rooms are geometrically
  /// unambiguous in `map`.
  std::set<std::size_t> geometric_unique_k;
};

/// Six nested maps on a 3 x 2 grid of congruent 4 x 3 m rooms. Map m holds
/// the first m rooms R1..Rm, connected by doorways; R1 alone carries a door,
/// which is enough to fix both the room and its orientation.
std::vector<Scenario> symmetric_scenarios();

}  // namespace semgraph
