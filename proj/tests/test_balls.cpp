#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "papersurf/balls.hpp"
#include "papersurf/measure.hpp"
#include "papersurf/scheme_io.hpp"

using namespace papersurf;

namespace {

double area_of(const PairingScheme& s, const BallDecomposition& d) { return union_area(s, d.pieces).value; }

bool has_radius(const BallDecomposition& d, double r) {
  return std::any_of(d.pieces.begin(), d.pieces.end(), [&](const BallPiece& p) { return std::abs(p.radius - r) < 1e-12; });
}

}  // namespace

TEST(Balls, InteriorCenterIsOneBox) {
  const auto s = builtin_scheme("example-1.3");
  const auto d = decompose_ball(s, {0, {0.5, 0.5}}, 0.05);
  ASSERT_EQ(d.pieces.size(), 1u);
  EXPECT_EQ(d.pieces[0].tag(), "main");
  EXPECT_NEAR(area_of(s, d), 0.01, 1e-15);
  EXPECT_FALSE(d.center_class.has_value());
}

TEST(Balls, FoldPointIsOneSemiBall) {
  const auto s = builtin_scheme("example-1.3");
  const auto d = decompose_ball(s, {0, {1.0, 0.5}}, 0.05);
  ASSERT_TRUE(d.center_class.has_value());
  EXPECT_EQ(d.center_class->members.size(), 1u);
  EXPECT_NEAR(area_of(s, d), 2 * 0.05 * 0.05, 1e-15);
}

TEST(Balls, AccumulationLadder) {
  const auto s = builtin_scheme("example-1.3");
  const auto& ex = s.expansions()[0];
  ASSERT_TRUE(ex.infinite);
  const SurfacePoint acc = s.surface_point({0, ex.accumulation});
  const auto d = decompose_ball(s, acc, 0.1);
  for (double r : {0.0375, 0.06875, 0.084375, 0.0921875}) EXPECT_TRUE(has_radius(d, r)) << r;
  // Explicit semi-ball at the accumulation point itself.
  EXPECT_TRUE(std::any_of(d.pieces.begin(), d.pieces.end(), [&](const BallPiece& p) {
    return p.center.p == acc.p && std::abs(p.radius - 0.1) < 1e-15;
  }));
  const auto sched = spawn_schedule(s, 0, 0.1);
  ASSERT_GE(sched.size(), 4u);
  EXPECT_EQ(sched[0].index, 1u);
  EXPECT_NEAR(sched[0].radius, 0.0375, 1e-15);
  EXPECT_NEAR(sched[1].radius, 0.06875, 1e-15);
  EXPECT_NEAR(sched[2].radius, 0.084375, 1e-15);
  const double a = area_of(s, d);
  EXPECT_GE(a, 2 * 0.01);
  EXPECT_LE(a, 5.5 * 0.01);
  EXPECT_LT(d.tail_area_bound, 1e-3 * 0.01);
}

TEST(Balls, ConicPointUnionOfSemiBalls) {
  const auto s = builtin_scheme("finite-w");
  const PointClass* three = nullptr;
  for (const auto& c : s.special_classes()) {
    if (c.cone_angle && std::abs(*c.cone_angle - 3 * std::numbers::pi) < 1e-9) three = &c;
  }
  ASSERT_NE(three, nullptr);
  ASSERT_EQ(three->members.size(), 3u);
  const double r = 0.01;
  const auto d = decompose_ball(s, s.surface_point(three->representative), r);
  EXPECT_EQ(d.pieces.size(), 3u);
  for (const auto& m : three->members) {
    const Point2 p = s.position(m);
    EXPECT_TRUE(std::any_of(d.pieces.begin(), d.pieces.end(), [&](const BallPiece& q) { return q.center.p == p; }));
  }
  EXPECT_NEAR(area_of(s, d), 6 * r * r, 1e-15);
}

TEST(Balls, SpawnScheduleBoundaryAndConic) {
  const auto s = builtin_scheme("example-1.3");
  // r equals sum_{n>2} a_n: r_2 = 0 is excluded, so the ladder starts at 3.
  const double r = s.w_specs()[0].a.tail_sum(3);
  const auto acc = spawn_schedule(s, 0, r);
  ASSERT_FALSE(acc.empty());
  EXPECT_EQ(acc[0].index, 3u);
  const auto con = spawn_schedule(s, 0, 0.2, 3);
  ASSERT_EQ(con.size(), 3u);
  EXPECT_EQ(con[0].index, 3u);
  EXPECT_DOUBLE_EQ(con[0].radius, 0.2);
  EXPECT_DOUBLE_EQ(con[1].radius, 0.2 - 1.0 / 32);
  EXPECT_DOUBLE_EQ(con[2].radius, 0.2 - 1.0 / 32 - 1.0 / 16);
  const auto fin = spawn_schedule(builtin_scheme("finite-w"), 0, 10.0);
  EXPECT_EQ(fin.size(), 3u);
  EXPECT_THROW((void)spawn_schedule(builtin_scheme("torus"), 0, 0.1), DomainError);
}

TEST(Balls, ContainsCenterNotFarPoints) {
  const auto s = builtin_scheme("example-1.3");
  const SurfacePoint c{0, {0.4, 0.6}};
  const auto d = decompose_ball(s, c, 0.1);
  EXPECT_TRUE(ball_contains(s, d, c));
  EXPECT_FALSE(ball_contains(s, d, {0, {0.4 + 0.11, 0.6}}));
  EXPECT_THROW((void)decompose_ball(s, c, 0.0), DomainError);
  EXPECT_THROW((void)decompose_ball(s, {0, {2, 2}}, 0.1), DomainError);
}

TEST(Balls, TorusWrapsAcrossGluing) {
  const auto s = builtin_scheme("torus");
  const auto d = decompose_ball(s, {0, {0.5, 0.05}}, 0.1);
  EXPECT_TRUE(ball_contains(s, d, {0, {0.5, 0.97}}));
  EXPECT_NEAR(area_of(s, d), 0.04, 1e-14);
}

TEST(Balls, MonotoneInRadius) {
  const auto s = builtin_scheme("example-1.3");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const SurfacePoint c{0, {u(rng), u(rng)}};
    const auto small = decompose_ball(s, c, 0.05);
    const auto big = decompose_ball(s, c, 0.12);
    auto both = big.pieces;
    both.insert(both.end(), small.pieces.begin(), small.pieces.end());
    EXPECT_NEAR(union_area(s, both).value, area_of(s, big), 1e-12);
  }
}

TEST(Balls, AgreesWithDistanceOracle) {
  for (const char* name : {"example-1.3", "four-rectangle"}) {
    SCOPED_TRACE(name);
    const auto s = builtin_scheme(name);
    const double r0 = scale_constants(s).r0;
    const auto centers = sample_centers(s, 8, 21);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (const auto& c : centers) {
      const double r = r0 * u(rng);
      const auto d = decompose_ball(s, c, r);
      const double area = area_of(s, d);
      const double coarse = oracle::symmetric_difference(s, d.pieces, oracle::distance_ball(s, c, r, r / 100));
      const double fine = oracle::symmetric_difference(s, d.pieces, oracle::distance_ball(s, c, r, r / 200));
      EXPECT_LT(coarse, 0.01 * area) << c.p.x << "," << c.p.y << " r=" << r;
      EXPECT_LE(fine, coarse + 1e-12);
    }
  }
}

TEST(Balls, AreaInvariantUnderSplit) {
  const auto s = builtin_scheme("example-1.3");
  const auto split = s.split_pairing(0, 0.37).split_pairing(2, 0.11);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const SurfacePoint c{0, {u(rng), u(rng)}};
    const double r = 0.02 + 0.2 * u(rng);
    EXPECT_NEAR(area_of(s, decompose_ball(s, c, r)), area_of(split, decompose_ball(split, c, r)), 1e-9);
  }
}

TEST(Balls, Exports) {
  const auto s = builtin_scheme("example-1.3");
  const auto d = decompose_ball(s, {0, {1.0, 0.5}}, 0.05);
  const auto csv = pieces_csv(s, d);
  EXPECT_EQ(csv.rfind("cx,cy,r,polygon,provenance\n", 0), 0u);
  EXPECT_NE(csv.find(",P,main"), std::string::npos);
  const auto svg = pieces_svg(s, d);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<rect"), std::string::npos);
}
