#pragma once

#include <array>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace percolab {

using Vec2 = Eigen::Vector2d;

struct Segment {
  Vec2 a, b;
};

// Closed-segment intersection (touching counts).
bool segments_intersect(const Segment& s, const Segment& t);
double point_segment_distance(const Vec2& p, const Segment& s);

// Arc of the circle |x - center| = radius swept counter-clockwise from angle
// `from` through `sweep` radians (sweep = 2π gives the full circle).
struct CircleArc {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
  double from = 0.0;
  double sweep = 0.0;
};

bool segment_hits_arc(const Segment& s, const CircleArc& arc);
double point_arc_distance(const Vec2& p, const CircleArc& arc);

// A piece of a region's boundary: a straight segment or a circular arc.
using BoundaryPiece = std::variant<Segment, CircleArc>;
bool bond_crosses(const Segment& bond, const BoundaryPiece& piece);
double distance_to(const Vec2& p, const BoundaryPiece& piece);

// Strict interior test for a simple polygon (either orientation); points
// within `tol` of an edge count as outside.
bool strictly_inside_polygon(const std::vector<Vec2>& poly, const Vec2& p, double tol = 1e-12);
double polygon_area(const std::vector<Vec2>& poly);  // signed, counter-clockwise positive

// Parallelogram with vertices in clockwise order: bottom-left, top-left,
// top-right, bottom-right. The bottom side has length r * left, the
// interior angle at bottom-left is alpha * π, the area is `area`, the
// centroid is at the origin and the figure is rotated by `rotation`.
std::array<Vec2, 4> make_parallelogram(double alpha, double r, double area, double rotation);

}  // namespace percolab
