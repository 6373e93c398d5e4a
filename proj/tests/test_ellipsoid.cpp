#include <gtest/gtest.h>

#include <random>

#include <semgraph/ellipsoid.hpp>
#include <semgraph/errors.hpp>

#include "oracles.hpp"

using namespace semgraph;

namespace {

std::vector<Vec3> box_corners(const Vec3& center, const Vec3& half) {
  std::vector<Vec3> out;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) out.push_back(center + Vec3(sx * half.x(), sy * half.y(), sz * half.z()));
  return out;
}

Mat3 covariance(const std::vector<Vec3>& pts) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 m = Mat3::Zero();
  for (const auto& p : pts)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += (p[i] - c[i]) * (p[j] - c[j]);
  return m / static_cast<double>(pts.size());
}

std::vector<Vec3> anisotropic_cloud(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.emplace_back(0.3 * g(rng), 1.0 * g(rng), 2.5 * g(rng));
  return out;
}

}  // namespace

TEST(FitEllipsoid, BoxCorners) {
  const auto pts = box_corners(Vec3::Zero(), Vec3(1, 2, 3));
  const Ellipsoid e = fit_ellipsoid(pts, 2.0);
  EXPECT_LT(e.center.norm(), 1e-12);
  // Per-axis variance of the corners is (1, 4, 9).
  EXPECT_NEAR(e.semi_axes.x(), 2.0, 1e-12);
  EXPECT_NEAR(e.semi_axes.y(), 4.0, 1e-12);
  EXPECT_NEAR(e.semi_axes.z(), 6.0, 1e-12);
  EXPECT_LT((e.rotation.cwiseAbs() - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(e.rotation.determinant(), 1.0, 1e-12);
}

TEST(FitEllipsoid, SinglePointFloors) {
  const std::vector<Vec3> pts{Vec3(1, 2, 3)};
  const Ellipsoid e = fit_ellipsoid(pts, 2.0);
  EXPECT_EQ(e.center, Vec3(1, 2, 3));
  EXPECT_EQ(e.semi_axes, Vec3::Constant(kMinSemiAxis));
  EXPECT_NEAR(e.rotation.determinant(), 1.0, 1e-12);
  EXPECT_THROW(fit_ellipsoid(std::vector<Vec3>{}, 2.0), InvalidArgument);
}

TEST(FitEllipsoid, AxesAreCovarianceEigenpairs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = anisotropic_cloud(rng, 40);
    const Mat3 R = semgraph::testing::random_rotation(rng);
    for (auto& p : pts) p = R * p;
    const Ellipsoid e = fit_ellipsoid(pts, 2.0);
    const Mat3 cov = covariance(pts);
    for (int i = 0; i < 3; ++i) {
      const Vec3 v = e.rotation.col(i);
      const double lambda = std::pow(e.semi_axes[i] / 2.0, 2);
      EXPECT_LT((cov * v - lambda * v).norm(), 1e-9);
    }
    EXPECT_LE(e.semi_axes.x(), e.semi_axes.y());
    EXPECT_LE(e.semi_axes.y(), e.semi_axes.z());
    EXPECT_LT((e.rotation.transpose() * e.rotation - Mat3::Identity()).norm(), 1e-12);
    EXPECT_NEAR(e.rotation.determinant(), 1.0, 1e-12);
  }
}

TEST(FitEllipsoid, EquivariantUnderRigidMotion) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  const auto pts = anisotropic_cloud(rng, 30);
  const Ellipsoid base = fit_ellipsoid(pts, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 R = semgraph::testing::random_rotation(rng);
    const Vec3 shift(t(rng), t(rng), t(rng));
    std::vector<Vec3> moved;
    for (const auto& p : pts) moved.push_back(R * p + shift);
    const Ellipsoid e = fit_ellipsoid(moved, 2.0);
    EXPECT_LT((e.center - (R * base.center + shift)).norm(), 1e-9);
    EXPECT_LT((e.semi_axes - base.semi_axes).cwiseAbs().maxCoeff(), 1e-9);
    for (int i = 0; i < 3; ++i) {
      // Axis directions are defined up to sign.
      EXPECT_NEAR(std::abs(e.rotation.col(i).dot(R * base.rotation.col(i))), 1.0, 1e-9);
    }
  }
}

TEST(Association, TwoViewsOfOneWindowMerge) {
  RelationParams p;
  const auto view1 = box_corners(Vec3(1.0, 0.0, 1.5), Vec3(0.02, 0.25, 0.25));
  const auto view2 = box_corners(Vec3(1.05, 0.0, 1.5), Vec3(0.02, 0.25, 0.25));
  auto a = associate_object(view1, "window", {}, p, "window_0");
  EXPECT_FALSE(a.merged);
  // Thin axis inflated to 2 * 0.02 * 1.5 = 0.06 > 0.05 center offset.
  auto b = associate_object(view2, "window", a.objects, p, "window_1");
  EXPECT_TRUE(b.merged);
  ASSERT_EQ(b.objects.size(), 1u);
  EXPECT_EQ(b.objects[0].id, "window_0");
  EXPECT_EQ(b.objects[0].support_points.size(), 16u);
  EXPECT_NEAR(b.objects[0].ellipsoid.center.x(), 1.025, 1e-12);
}

TEST(Association, DistantDoorsStaySeparate) {
  RelationParams p;
  auto a = associate_object(box_corners(Vec3(0, 0, 1), Vec3(0.05, 0.45, 1.0)), "door", {}, p, "door_0");
  auto b = associate_object(box_corners(Vec3(3, 0, 1), Vec3(0.05, 0.45, 1.0)), "door", a.objects, p, "door_1");
  EXPECT_FALSE(b.merged);
  EXPECT_EQ(b.objects.size(), 2u);
  EXPECT_EQ(b.index, 1u);
}

TEST(Association, CategoryGate) {
  RelationParams p;
  auto a = associate_object(box_corners(Vec3(0, 0, 1), Vec3(0.05, 0.5, 0.5)), "window", {}, p, "window_0");
  auto b = associate_object(box_corners(Vec3(0, 0.02, 1), Vec3(0.05, 0.5, 0.5)), "door", a.objects, p, "door_0");
  EXPECT_FALSE(b.merged);
  EXPECT_EQ(b.objects.size(), 2u);
}

TEST(Association, CountIsStableUnderClusterPermutation) {
  RelationParams p;
  std::vector<std::vector<Vec3>> clusters;
  for (int i = 0; i < 4; ++i) {
    clusters.push_back(box_corners(Vec3(2.0 * i, 0, 1), Vec3(0.05, 0.4, 0.4)));
    clusters.push_back(box_corners(Vec3(2.0 * i + 0.03, 0.02, 1), Vec3(0.05, 0.4, 0.4)));
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(clusters.begin(), clusters.end(), rng);
    std::vector<ObjectInstance> objs;
    int next = 0;
    for (const auto& c : clusters)
      objs = associate_object(c, "window", objs, p, "w" + std::to_string(next++)).objects;
    EXPECT_EQ(objs.size(), 4u);
  }
}

TEST(Overlap, ScoreIsSymmetricMinimum) {
  Ellipsoid a, b;
  a.semi_axes = Vec3(1, 1, 1);
  b.center = Vec3(2, 0, 0);
  b.semi_axes = Vec3(0.5, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(scaled_mahalanobis(a, b.center, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(scaled_mahalanobis(b, a.center, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(overlap_score(a, b, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(overlap_score(b, a, 2.0), 1.0);
}
