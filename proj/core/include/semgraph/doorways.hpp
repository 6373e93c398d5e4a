#pragma once

#include <vector>

#include "semgraph/graph.hpp"
#include "semgraph/relations.hpp"

namespace semgraph {

inline constexpr double kDoorwayRadius = 0.1;

/// A keyframe pair whose membership in `room` changes. `location` is where
/// the segment between the two keyframes crosses `crossed_plane`.
struct DoorwayEvent {
  NodeId kf_inside;
  NodeId kf_outside;
  NodeId room;
  NodeId crossed_plane;
  Vec3 location = Vec3::Zero();
  NodeId doorway;  // object the event was associated with
};

struct DoorwayDetection {
  SceneGraph graph;
  std::vector<DoorwayEvent> events;
};

/// Six points whose moment fit (with axis scale k) is a sphere of `radius`.
std::vector<Vec3> sphere_cluster(const Vec3& center, double radius, double k);

/// Trajectory-based doorway detection. Keyframes are assigned to rooms with
/// the visibility test; each membership transition is localized on the
/// crossed wall plane. Events belonging to one passage (leaving one room and
/// entering the next) form one doorway cluster, and clusters are
/// deduplicated through associate_object.
DoorwayDetection detect_doorways(const SceneGraph& g, const RelationParams& params);

/// Adds object_in_room and object_on_plane relations for a doorway object
/// connecting the given rooms and planes.
void attach_doorway(SceneGraph& g, const NodeId& doorway, std::span<const NodeId> rooms,
                    std::span<const NodeId> planes);

}  // namespace semgraph
