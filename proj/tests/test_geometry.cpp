#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "percolab/errors.hpp"
#include "percolab/geometry.hpp"

using namespace percolab;

TEST(Segments, Intersections) {
  EXPECT_TRUE(segments_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  EXPECT_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
  // Touching at an endpoint counts.
  EXPECT_TRUE(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}));
  // Collinear overlap and collinear gap.
  EXPECT_TRUE(segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
  EXPECT_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
}

TEST(Segments, Distance) {
  EXPECT_NEAR(point_segment_distance({0, 1}, {{-1, 0}, {1, 0}}), 1.0, 1e-15);
  EXPECT_NEAR(point_segment_distance({3, 4}, {{0, 0}, {0, 0}}), 5.0, 1e-15);
  EXPECT_NEAR(point_segment_distance({2, 1}, {{-1, 0}, {1, 0}}), std::sqrt(2.0), 1e-15);
}

TEST(Arcs, BondCrossing) {
  const CircleArc right{Vec2::Zero(), 10.0, -std::numbers::pi / 4, std::numbers::pi / 2};
  EXPECT_TRUE(segment_hits_arc({{9.5, 0.5}, {10.5, 0.5}}, right));
  EXPECT_FALSE(segment_hits_arc({{-10.5, 0.5}, {-9.5, 0.5}}, right));
  EXPECT_FALSE(segment_hits_arc({{0, 0}, {1, 0}}, right));
  EXPECT_NEAR(point_arc_distance({12, 0}, right), 2.0, 1e-12);
}

TEST(Polygon, MatchesConvexOracle) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = 0.05 + 0.9 * (U(gen) + 1) / 2;
    const double r = std::exp(U(gen));
    const double rot = std::numbers::pi * U(gen);
    const auto v = make_parallelogram(alpha, r, 1.0, rot);
    const std::vector<Vec2> poly(v.begin(), v.end());
    for (int k = 0; k < 200; ++k) {
      const Vec2 p(2 * U(gen), 2 * U(gen));
      ASSERT_EQ(strictly_inside_polygon(poly, p), oracle::convex_inside(poly, p));
    }
  }
}

TEST(Polygon, BoundaryIsOutside) {
  const std::vector<Vec2> sq{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  EXPECT_FALSE(strictly_inside_polygon(sq, {0.5, 0.0}));
  EXPECT_FALSE(strictly_inside_polygon(sq, {1.0, 1.0}));
  EXPECT_TRUE(strictly_inside_polygon(sq, {0.5, 0.5}));
  EXPECT_NEAR(polygon_area(sq), -1.0, 1e-15);
}

TEST(Parallelogram, Shape) {
  const double alpha = 0.25, r = 2.0, area = 100.0;
  const auto v = make_parallelogram(alpha, r, area, 0.0);
  const Vec2 left = v[1] - v[0], bottom = v[3] - v[0];
  EXPECT_NEAR(bottom.norm() / left.norm(), r, 1e-12);
  EXPECT_NEAR(std::acos(left.dot(bottom) / (left.norm() * bottom.norm())), alpha * std::numbers::pi, 1e-12);
  EXPECT_NEAR(std::abs(polygon_area({v.begin(), v.end()})), area, 1e-9);
  EXPECT_NEAR(bottom.y(), 0.0, 1e-12);
  EXPECT_NEAR((v[0] + v[1] + v[2] + v[3]).norm(), 0.0, 1e-12);
}
