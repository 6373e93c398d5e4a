#pragma once

#include <span>
#include <string>
#include <vector>

#include "semgraph/graph.hpp"
#include "semgraph/relations.hpp"

namespace semgraph {

inline constexpr double kMinSemiAxis = 0.01;

/// Moment-based fit: centroid, eigenvectors of the (1/N) covariance in
/// ascending eigenvalue order forming a right-handed frame, and
/// semi-axes max(k * sqrt(lambda), kMinSemiAxis).
Ellipsoid fit_ellipsoid(std::span<const Vec3> points, double k);

/// Mahalanobis distance of `x` under `e` with its axes multiplied by `scale`.
double scaled_mahalanobis(const Ellipsoid& e, const Vec3& x, double scale);

/// Overlap score: the smaller of the two center-under-other Mahalanobis
/// distances. The ellipsoids overlap iff the score is <= 1.
double overlap_score(const Ellipsoid& a, const Ellipsoid& b, double scale);

struct Association {
  std::vector<ObjectInstance> objects;
  std::size_t index = 0;  // position of the created or updated instance
  bool merged = false;
};

/// Fits the new cluster and merges it into the best-overlapping instance of
/// the same category, or appends it as a new instance named `new_id`.
Association associate_object(std::span<const Vec3> new_points, const std::string& category,
                             std::vector<ObjectInstance> existing, const RelationParams& params,
                             const NodeId& new_id);

}  // namespace semgraph
