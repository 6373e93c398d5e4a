#include "semgraph/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "semgraph/errors.hpp"

namespace semgraph {

namespace {

// Flips v so that its largest-magnitude component is positive.
Vec3 canonical_sign(const Vec3& v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return v[i] < 0.0 ? Vec3(-v) : v;
}

}  // namespace

Ellipsoid fit_ellipsoid(std::span<const Vec3> points, double k) {
  if (points.empty()) throw InvalidArgument("fit_ellipsoid: empty point set");
  const double n = static_cast<double>(points.size());
  Vec3 center = Vec3::Zero();
  for (const auto& p : points) center += p;
  center /= n;

  Mat3 cov = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - center;
    cov += d * d.transpose();
  }
  cov /= n;

  Eigen::SelfAdjointEigenSolver<Mat3> solver(cov);
  const Vec3 eigenvalues = solver.eigenvalues();
  const Mat3 vectors = solver.eigenvectors();

  Ellipsoid e;
  e.center = center;
  const Vec3 x = canonical_sign(vectors.col(0));
  const Vec3 y = canonical_sign(vectors.col(1));
  e.rotation.col(0) = x;
  e.rotation.col(1) = y;
  e.rotation.col(2) = x.cross(y).normalized();
  for (int j = 0; j < 3; ++j) {
    e.semi_axes[j] = std::max(k * std::sqrt(std::max(eigenvalues[j], 0.0)), kMinSemiAxis);
  }
  return e;
}

double scaled_mahalanobis(const Ellipsoid& e, const Vec3& x, double scale) {
  const Vec3 local = e.rotation.transpose() * (x - e.center);
  return local.cwiseQuotient(e.semi_axes * scale).norm();
}

double overlap_score(const Ellipsoid& a, const Ellipsoid& b, double scale) {
  return std::min(scaled_mahalanobis(a, b.center, scale), scaled_mahalanobis(b, a.center, scale));
}

Association associate_object(std::span<const Vec3> new_points, const std::string& category,
                             std::vector<ObjectInstance> existing, const RelationParams& params,
                             const NodeId& new_id) {
  if (category.empty()) throw InvalidArgument("associate_object: empty category");
  if (new_points.empty()) throw InvalidArgument("associate_object: empty point cluster");
  const Ellipsoid fresh = fit_ellipsoid(new_points, params.ellipsoid_k);

  std::size_t best = existing.size();
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < existing.size(); ++i) {
    if (existing[i].category != category) continue;
    const double score = overlap_score(existing[i].ellipsoid, fresh, params.overlap_scale);
    if (score <= 1.0 && score < best_score) {
      best = i;
      best_score = score;
    }
  }

  Association out;
  if (best == existing.size()) {
    ObjectInstance obj;
    obj.id = new_id;
    obj.category = category;
    obj.ellipsoid = fresh;
    obj.support_points.assign(new_points.begin(), new_points.end());
    existing.push_back(std::move(obj));
    out.index = existing.size() - 1;
    out.merged = false;
  } else {
    auto& target = existing[best];
    target.support_points.insert(target.support_points.end(), new_points.begin(), new_points.end());
    target.ellipsoid = fit_ellipsoid(target.support_points, params.ellipsoid_k);
    out.index = best;
    out.merged = true;
  }
  out.objects = std::move(existing);
  return out;
}

}  // namespace semgraph
