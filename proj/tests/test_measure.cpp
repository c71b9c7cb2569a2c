#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "papersurf/measure.hpp"
#include "papersurf/scheme_io.hpp"

using namespace papersurf;

TEST(Measure, RectUnionSmallCases) {
  const std::vector<Rect> two{{0, 0, 1, 1}, {0.5, 0, 1.5, 1}};
  EXPECT_DOUBLE_EQ(rect_union_area(two), 1.5);
  const std::vector<Rect> nested{{0, 0, 2, 2}, {0.5, 0.5, 1, 1}};
  EXPECT_DOUBLE_EQ(rect_union_area(nested), 4.0);
  EXPECT_DOUBLE_EQ(rect_union_area(std::vector<Rect>{}), 0.0);
}

TEST(Measure, RectUnionMatchesGridCount) {
  // Rectangles on a 1/64 grid: the union area is an exact cell count.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> u(0, 64);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rect> rects;
    std::vector<char> cell(64 * 64, 0);
    for (int k = 0; k < 15; ++k) {
      int x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      rects.push_back({x0 / 64.0, y0 / 64.0, x1 / 64.0, y1 / 64.0});
      for (int i = x0; i < x1; ++i) {
        for (int j = y0; j < y1; ++j) cell[static_cast<std::size_t>(i * 64 + j)] = 1;
      }
    }
    double want = 0.0;
    for (char c : cell) want += c;
    EXPECT_NEAR(rect_union_area(rects), want / 4096.0, 1e-12);
  }
}

TEST(Measure, SemiBallAndPlanarPoint) {
  const auto s = builtin_scheme("torus");
  const double r = 0.05;
  // Semi-ball alone (union_area of a single boundary piece).
  const std::vector<BallPiece> semi{{{0, {0.5, 0.0}}, r, Provenance::main, 0}};
  EXPECT_NEAR(union_area(s, semi).value, 2 * r * r, 1e-15);
  // Planar boundary point: two semi-balls glued.
  EXPECT_NEAR(ball_area(s, {0, {0.5, 0.0}}, r).area, 4 * r * r, 1e-15);
  EXPECT_NEAR(ball_area(s, {0, {0.3, 0.6}}, r).area, 4 * r * r, 1e-15);
}

TEST(Measure, ConePointArea) {
  // Three preimages of angle pi each: 2k r^2 with k = 3.
  const auto s = builtin_scheme("finite-w");
  for (const auto& c : s.special_classes()) {
    if (!c.cone_angle || c.members.size() != 3) continue;
    const double k = *c.cone_angle / std::numbers::pi;
    EXPECT_NEAR(ball_area(s, s.surface_point(c.representative), 0.01).area, 2 * k * 1e-4, 1e-15);
  }
}

TEST(Measure, AreaMonotoneInRadius) {
  const auto s = builtin_scheme("example-1.3");
  const auto centers = sample_centers(s, 12, 5);
  for (const auto& c : centers) {
    double prev = 0.0;
    for (double r = 0.01; r <= 0.5; r *= 1.5) {
      const double a = ball_area(s, c, r).area;
      EXPECT_GE(a, prev - 1e-15);
      prev = a;
    }
  }
}

TEST(Measure, MonteCarloFallback) {
  const Polygon tri = Polygon::create("T", {{0, 0}, {1, 0}, {0, 1}});
  PairingScheme s(MultiPolygon({tri}), {}, {});
  const std::vector<BallPiece> pieces{{{0, {0.25, 0.25}}, 0.1, Provenance::main, 0}};
  const auto a = union_area(s, pieces, 3);
  EXPECT_FALSE(a.exact);
  EXPECT_NEAR(a.value, 0.04, 4 * a.std_error + 1e-12);
  EXPECT_LE(a.std_error, 0.005 * a.value + 1e-12);
}

TEST(Measure, ScaleConstantsAndExtendedConstant) {
  const auto c = scale_constants(builtin_scheme("example-1.3"));
  EXPECT_DOUBLE_EQ(c.K, 1.0);
  EXPECT_DOUBLE_EQ(c.r0, 0.5);
  EXPECT_DOUBLE_EQ(extended_regularity_constant(4.0, 1.0, 0.25), 16.0);
  EXPECT_DOUBLE_EQ(extended_regularity_constant(40.0, 1.0, 0.25), 40.0);
}

TEST(Measure, FitLine) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(Measure, SequenceConstants) {
  const auto k = sequence_constants(builtin_scheme("example-1.3"), 0);
  EXPECT_NEAR(k.K1, 1.0, 1e-12);
  EXPECT_NEAR(k.K2, 1.0, 1e-12);
  EXPECT_FALSE(k.p.has_value());
  const auto f = sequence_constants(builtin_scheme("finite-w"), 0);
  EXPECT_EQ(f.n_F, 3u);
  EXPECT_THROW((void)sequence_constants(builtin_scheme("torus"), 0), DomainError);
}

TEST(Measure, AccumulationBound) {
  const auto s = builtin_scheme("example-1.3");
  const auto acc = s.surface_point({0, s.expansions()[0].accumulation});
  std::vector<std::pair<SurfacePoint, double>> samples;
  for (double r : log_radii(0.5, 8)) samples.push_back({acc, r});
  const auto t = verify_paper_bounds(s, BoundCase::accumulation, 0, samples);
  EXPECT_DOUBLE_EQ(t.factor, 5.5);
  EXPECT_TRUE(t.all_ok);
  EXPECT_THROW((void)verify_paper_bounds(s, BoundCase::finite_w, 0, samples), DomainError);
}

TEST(Measure, RegularityScanOnExample) {
  const auto s = builtin_scheme("example-1.3");
  const auto centers = sample_centers(s, 10, 2);
  const auto radii = log_radii(scale_constants(s).r0, 6);
  const auto rep = regularity_scan(s, centers, radii);
  EXPECT_EQ(rep.samples.size(), 60u);
  EXPECT_GE(rep.ratio_min, 2.0 - 1e-6);
  EXPECT_TRUE(rep.regular) << rep.summary();
  EXPECT_GE(rep.extended_C, rep.c0);
  EXPECT_NE(rep.csv().find("center_x,center_y,kind,r,area,ratio"), std::string::npos);
  const std::vector<double> too_big{1.0};
  EXPECT_THROW((void)regularity_scan(s, centers, too_big), DomainError);
  EXPECT_THROW((void)regularity_scan(s, {}, radii), DomainError);
}

TEST(Measure, LipschitzEquivalence) {
  const auto s = builtin_scheme("torus");
  const std::vector<std::pair<SurfacePoint, double>> interior{{{0, {0.5, 0.5}}, 0.2}};
  const auto a = lipschitz_equivalence_check(s, interior, 1000, 1);
  EXPECT_TRUE(a.containment_ok);
  EXPECT_EQ(a.containment_checks, 1000u);
  EXPECT_NEAR(a.ratio_max, 4.0 / std::numbers::pi, 0.01);
  const std::vector<std::pair<SurfacePoint, double>> semi{{{0, {0.5, 0.0}}, 0.2}};
  const auto b = lipschitz_equivalence_check(s, semi, 100, 1);
  EXPECT_NEAR(b.ratio_max, 4.0 / std::numbers::pi, 0.01);
  EXPECT_GE(b.ratio_min, std::numbers::pi / 4);
  EXPECT_LE(b.ratio_max, 2.0);
}
