#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <semgraph/graph.hpp>
#include <semgraph/matcher.hpp>
#include <semgraph/synthgen.hpp>

// Reference implementations used as test oracles. They work directly on the
// public graph types and avoid the library's internal index structures.
namespace semgraph::testing {

std::filesystem::path data_dir();

// Half-space containment of a convex room. `margin` is the signed slack
// required on every plane (negative values shrink the tolerance away).
bool polytope_contains(const std::vector<PlaneNode>& planes, const Vec3& x, double margin = 0.0);

// Smallest signed plane distance of x; positive inside the room.
double polytope_depth(const std::vector<PlaneNode>& planes, const Vec3& x);

// Re-derivation of the pairwise consistency rules on raw node ids.
std::optional<double> reference_consistency(const SceneGraph& a, const SceneGraph& s,
                                            const CandidateAssignment& cand, const MatchConfig& cfg);

using MappingKey = std::pair<std::map<NodeId, NodeId>, std::map<NodeId, NodeId>>;
std::set<MappingKey> mapping_set(const std::vector<CandidateAssignment>& v);
std::map<MappingKey, double> residual_map(const std::vector<CandidateAssignment>& v);

// Same mappings in any order, residuals within tol.
bool same_residuals(const std::vector<CandidateAssignment>& x, const std::vector<CandidateAssignment>& y, double tol);

// Searches planar isometries (rotations about z by multiples of 90 degrees
// and reflections across wall-aligned lines through the centroid) that map
// the room centers onto themselves, excluding the identity.
std::optional<Mat3> center_set_isometry(const SceneGraph& g, double tol);

// Independent count-based containment for the semantic filter.
bool counts_contained(const SceneGraph& a, const NodeId& a_node, const SceneGraph& s, const NodeId& s_node);

// Axis-aligned rectangular room centered at `origin` with sides (w, h).
SceneGraph rect_room(double w, double h, GraphKind kind = GraphKind::AGraph, const std::string& room = "r",
                     const Vec3& origin = Vec3::Zero());

// Wall-mounted object whose thin axis follows `normal`.
void add_wall_object(SceneGraph& g, const NodeId& id, const std::string& category, const Vec3& center,
                     const Vec3& normal, const NodeId& room, const NodeId& plane);

RigidMotion random_yaw_motion(std::mt19937_64& rng, double max_translation = 20.0);
Mat3 random_rotation(std::mt19937_64& rng);

// A small (<= 3 rooms) layout plus an S-Graph derived from a random room
// subset, used as the oracle-equivalence corpus.
struct CorpusCase {
  std::uint64_t seed = 0;
  Layout layout;
  Derivation derivation;
};
CorpusCase corpus_case(std::uint64_t seed);

}  // namespace semgraph::testing
