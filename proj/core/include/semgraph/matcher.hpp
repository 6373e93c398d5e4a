#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semgraph/graph.hpp"

namespace semgraph {

/// Thresholds and switches for graph matching. Rule tolerances are in meters
/// or radians; delta_gap is in normalized-residual units.
struct MatchConfig {
  double theta_room_dist = 0.5;
  double theta_plane_angle = 0.1;
  double theta_plane_dist = 0.25;
  double delta_gap = 0.05;
  bool use_semantic_filter = true;
  std::size_t max_candidates = 1'000'000;

  void check() const;
};

/// Partial mapping from S-Graph ids to A-Graph ids.
struct CandidateAssignment {
  std::map<NodeId, NodeId> room_map;
  std::map<NodeId, NodeId> plane_map;
  double residual = 0.0;

  /// Equal room and plane maps, residual ignored.
  bool same_mapping(const CandidateAssignment& other) const {
    return room_map == other.room_map && plane_map == other.plane_map;
  }
};

enum class MatchOutcome { Unique, Ambiguous, Deferred, NoMatch };

std::string_view to_string(MatchOutcome outcome);

struct MatchStats {
  std::size_t candidates_before_filter = 0;
  std::size_t candidates_after_filter = 0;
  std::size_t combinations_evaluated = 0;
  double elapsed_s = 0.0;
  bool truncated = false;  // search stopped at max_candidates
};

struct MatchResult {
  MatchOutcome outcome = MatchOutcome::NoMatch;
  /// Unique: the match. Deferred: every solution within delta_gap of the
  /// best. Ambiguous: the exact ties. NoMatch: empty.
  std::vector<CandidateAssignment> assignments;
  /// Every complete consistent assignment, sorted by residual then mapping.
  std::vector<CandidateAssignment> solutions;
  MatchStats stats;
};

/// Semantic containment: every category seen on the S side must be present
/// on the A side with at least as many instances.
bool semantic_filter_accepts(const CategoryCounts& content_a, const CategoryCounts& content_s);

enum class MatchLevel { Room, Plane };

struct CandidatePairs {
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (s-id, a-id)
  std::size_t before_filter = 0;
  std::size_t after_filter = 0;
};

/// All same-layer (S, A) pairs, minus those failing the semantic filter when
/// it is enabled.
CandidatePairs candidate_pairs(const SceneGraph& a, const SceneGraph& s, MatchLevel level,
                               const MatchConfig& cfg);

/// Checks the pairwise rigid-motion invariants of a (possibly partial)
/// assignment and returns its normalized residual, or nothing when any check
/// fails:
///   room pairs      | |c_r - c_r'|_S - |c_r - c_r'|_A |          <= theta_room_dist
///   plane vs owner  | (n.c_owner + d)_S - (n.c_owner + d)_A |  <= theta_plane_dist
///   plane pairs     | yaw-angle(n, n')_S - yaw-angle(n, n')_A | <= theta_plane_angle
///   plane vs rooms  | (n.c_r + d)_S - (n.c_r + d)_A |          <= theta_plane_dist
/// Yaw angles are signed about +z, which excludes mirror-image assignments.
/// The residual is the mean of every term divided by its threshold.
std::optional<double> geometric_consistency(const SceneGraph& a, const SceneGraph& s,
                                            const CandidateAssignment& cand, const MatchConfig& cfg);

/// Hierarchical search: room assignments pruned by room-pair distances, then
/// plane assignments per room, then cross-room plane checks. Throws
/// InvalidArgument when `s` has no rooms.
MatchResult match(const SceneGraph& a, const SceneGraph& s, const MatchConfig& cfg);

/// Exhaustive oracle with no pruning. Requires at most 4 A-rooms and at most
/// 6 planes per room.
std::vector<CandidateAssignment> brute_force_match(const SceneGraph& a, const SceneGraph& s,
                                                   const MatchConfig& cfg);

/// Sorts solutions and derives the outcome from the two best residuals.
MatchResult classify_solutions(std::vector<CandidateAssignment> solutions, const MatchConfig& cfg);

nlohmann::json to_json(const CandidateAssignment& c);
nlohmann::json to_json(const MatchResult& r, bool include_solutions = false);

}  // namespace semgraph
