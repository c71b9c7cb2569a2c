#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "papersurf/geometry.hpp"

using namespace papersurf;

namespace {

Polygon unit_square() { return Polygon::create("P", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon l_shape() { return Polygon::create("L", {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

// Frozen from oracle::one_bend_geodesic at h = 0.01 and 0.005 (both 1.41421).
constexpr double kLShapeGeodesic = 1.4142135623730951;

}  // namespace

TEST(Geometry, ArcLengthPoint) {
  const auto sq = unit_square();
  EXPECT_EQ(sq.point_at(0.5), (Point2{0.5, 0.0}));
  EXPECT_EQ(sq.point_at(1.5), (Point2{1.0, 0.5}));
  EXPECT_EQ(sq.point_at(4.0), (Point2{0.0, 0.0}));
  EXPECT_EQ(sq.point_at(-0.5), (Point2{0.0, 0.5}));
  EXPECT_DOUBLE_EQ(sq.perimeter(), 4.0);
}

TEST(Geometry, BoundaryProjectionInvertsArcLength) {
  const auto L = l_shape();
  for (double s = 0.0; s < L.perimeter(); s += 0.137) {
    auto back = L.project_to_boundary(L.point_at(s));
    ASSERT_TRUE(back.has_value());
    EXPECT_NEAR(*back, s, 1e-12);
  }
}

TEST(Geometry, PathLength) {
  const std::vector<Point2> a{{0, 0}, {1, 0}, {1, 1}};
  EXPECT_DOUBLE_EQ(path_length(a, Metric::euclidean), 2.0);
  const std::vector<Point2> b{{0, 0}, {1, 1}};
  EXPECT_DOUBLE_EQ(path_length(b, Metric::max), 1.0);
  const std::vector<Point2> c{{0.3, 0.3}};
  EXPECT_DOUBLE_EQ(path_length(c, Metric::euclidean), 0.0);
  EXPECT_DOUBLE_EQ(path_length(c, Metric::max), 0.0);
}

TEST(Geometry, ClockwiseInputIsReversed) {
  auto p = Polygon::create("cw", {{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_TRUE(p.was_reversed());
  EXPECT_GT(p.area(), 0.0);
  EXPECT_EQ(p.vertices()[0], (Point2{0, 0}));
  EXPECT_EQ(p.vertices()[1], (Point2{1, 0}));
}

TEST(Geometry, RejectsDegeneratePolygons) {
  EXPECT_THROW(Polygon::create("x", {{0, 0}, {1, 0}}), DomainError);
  EXPECT_THROW(Polygon::create("bowtie", {{0, 0}, {1, 1}, {1, 0}, {0, 1}}), DomainError);
  EXPECT_THROW(Polygon::create("flat", {{0, 0}, {1, 0}, {2, 0}}), DomainError);
}

TEST(Geometry, InteriorAngles) {
  const auto L = l_shape();
  EXPECT_NEAR(L.interior_angle(0), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(L.interior_angle(3), 1.5 * std::numbers::pi, 1e-15);
  EXPECT_TRUE(L.is_reflex(3));
  EXPECT_FALSE(L.is_convex());
  EXPECT_TRUE(L.is_rectilinear());
  double area = 0.0;
  for (const auto& r : L.rectangles()) area += r.area();
  EXPECT_DOUBLE_EQ(area, 3.0);
}

TEST(Geometry, IntrinsicDistanceConvex) {
  const auto sq = unit_square();
  EXPECT_NEAR(intrinsic_distance(sq, {0.1, 0.1}, {0.9, 0.9}, Metric::euclidean), std::sqrt(1.28), 1e-12);
  EXPECT_NEAR(intrinsic_distance(sq, {0.1, 0.1}, {0.9, 0.9}, Metric::max), 0.8, 1e-12);
  EXPECT_THROW((void)intrinsic_distance(sq, {1.5, 0.5}, {0.5, 0.5}, Metric::max), DomainError);
}

TEST(Geometry, LShapeOracleIsStable) {
  const auto inside = [](Point2 p) {
    return p.x >= -1e-12 && p.y >= -1e-12 && p.x <= 2 + 1e-12 && p.y <= 2 + 1e-12 && (p.x <= 1 + 1e-12 || p.y <= 1 + 1e-12);
  };
  const Rect box{0, 0, 2, 2};
  const double coarse = oracle::one_bend_geodesic(inside, box, {1.5, 0.5}, {0.5, 1.5}, 0.01);
  const double fine = oracle::one_bend_geodesic(inside, box, {1.5, 0.5}, {0.5, 1.5}, 0.005);
  EXPECT_NEAR(coarse, fine, 1e-4);
  EXPECT_NEAR(fine, kLShapeGeodesic, 1e-4);
}

TEST(Geometry, IntrinsicDistanceBendsAtReflexVertex) {
  const auto L = l_shape();
  EXPECT_NEAR(intrinsic_distance(L, {1.5, 0.5}, {0.5, 1.5}, Metric::euclidean), kLShapeGeodesic, 1e-12);
  // Same bend, lengths measured in the max metric: 0.5 + 0.5.
  EXPECT_NEAR(intrinsic_distance(L, {1.5, 0.5}, {0.5, 1.5}, Metric::max), 1.0, 1e-12);
}

TEST(Geometry, IntrinsicAtLeastAmbient) {
  const auto L = l_shape();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  int checked = 0;
  while (checked < 300) {
    const Point2 p{u(rng), u(rng)}, q{u(rng), u(rng)};
    if (!L.contains(p) || !L.contains(q)) continue;
    ++checked;
    for (auto m : {Metric::euclidean, Metric::max}) {
      EXPECT_GE(intrinsic_distance(L, p, q, m), distance(p, q, m) - 1e-12);
    }
  }
}

TEST(Geometry, MetricAxiomsAndLipschitzEquivalence) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    for (auto m : {Metric::euclidean, Metric::max}) {
      ASSERT_EQ(distance(a, b, m), distance(b, a, m));
      ASSERT_LE(distance(a, c, m), distance(a, b, m) + distance(b, c, m) + 1e-12);
    }
    const double dm = distance(a, b, Metric::max);
    const double de = distance(a, b, Metric::euclidean);
    ASSERT_LE(dm, de + 1e-15);
    ASSERT_LE(de, std::sqrt(2.0) * dm + 1e-12);
  }
}

TEST(Geometry, ConeDistance) {
  EXPECT_NEAR(cone_distance(1, 1, std::numbers::pi / 2), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(cone_distance(0.3, 0.7, std::numbers::pi), 1.0, 1e-15);
  EXPECT_NEAR(cone_distance(0.3, 0.7, std::numbers::pi - 1e-9), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(cone_distance(0, 0.4, 2.0), 0.4);
  EXPECT_DOUBLE_EQ(cone_distance(0, 0.4, 5.0), 0.4);

  // Triangle inequality for points (radius, direction) on a cone of total angle 3*pi.
  const double total = 3 * std::numbers::pi;
  const auto angdist = [&](double x, double y) {
    const double d = std::fmod(std::abs(x - y), total);
    return std::min(d, total - d);
  };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rad(0.0, 2.0), dir(0.0, total);
  for (int i = 0; i < 5000; ++i) {
    const double t1 = rad(rng), t2 = rad(rng), t3 = rad(rng);
    const double a1 = dir(rng), a2 = dir(rng), a3 = dir(rng);
    const double d12 = cone_distance(t1, t2, angdist(a1, a2));
    const double d23 = cone_distance(t2, t3, angdist(a2, a3));
    const double d13 = cone_distance(t1, t3, angdist(a1, a3));
    ASSERT_LE(d13, d12 + d23 + 1e-12);
  }
}

TEST(Geometry, SegmentDistanceMaxMetric) {
  EXPECT_DOUBLE_EQ(point_segment_distance({0.5, 2}, {0, 0}, {1, 0}, Metric::max), 2.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({2, 1}, {0, 0}, {1, 1}, Metric::max), 1.0);
  // Interior minimum on an anti-diagonal segment.
  EXPECT_DOUBLE_EQ(point_segment_distance({0, 0}, {0, 2}, {2, 0}, Metric::max), 1.0);
  EXPECT_NEAR(point_segment_distance({0, 0}, {0, 2}, {2, 0}, Metric::euclidean), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(segment_distance({0, 0}, {1, 0}, {0, 1}, {1, 1}, Metric::max), 1.0);
  EXPECT_DOUBLE_EQ(segment_distance({0, 0}, {1, 1}, {0, 1}, {1, 0}, Metric::euclidean), 0.0);
}

TEST(Geometry, MultiPolygonConstants) {
  MultiPolygon mp({unit_square(), Polygon::create("Q", {{2, 0}, {3, 0}, {3, 1}, {2, 1}})});
  EXPECT_DOUBLE_EQ(mp.diameter(Metric::max), 3.0);
  EXPECT_DOUBLE_EQ(mp.min_nonadjacent_distance(Metric::max), 1.0);
  EXPECT_DOUBLE_EQ(mp.total_area(), 2.0);
  EXPECT_EQ(mp.locate({2.5, 0.5}), std::optional<std::size_t>(1));
  EXPECT_THROW(MultiPolygon({unit_square(), Polygon::create("Z", {{0.5, 0.5}, {3, 0.5}, {3, 3}})}), DomainError);
}
