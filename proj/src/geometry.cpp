#include "percolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

double wrap_angle(double a) {
  constexpr double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

bool angle_on_arc(double angle, const CircleArc& arc) {
  if (arc.sweep >= 2 * std::numbers::pi) return true;
  return wrap_angle(angle - arc.from) <= arc.sweep;
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  const int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

double point_segment_distance(const Vec2& p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (s.a + t * d - p).norm();
}

bool segment_hits_arc(const Segment& s, const CircleArc& arc) {
  const Vec2 d = s.b - s.a, f = s.a - arc.center;
  const double A = d.squaredNorm(), B = 2 * f.dot(d), C = f.squaredNorm() - arc.radius * arc.radius;
  const double disc = B * B - 4 * A * C;
  if (A == 0.0 || disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
    if (t < 0.0 || t > 1.0) continue;
    const Vec2 q = f + t * d;
    if (angle_on_arc(std::atan2(q.y(), q.x()), arc)) return true;
  }
  return false;
}

double point_arc_distance(const Vec2& p, const CircleArc& arc) {
  const Vec2 q = p - arc.center;
  const double rho = q.norm();
  if (rho > 0 && angle_on_arc(std::atan2(q.y(), q.x()), arc)) return std::abs(rho - arc.radius);
  const Vec2 e1 = arc.center + arc.radius * Vec2(std::cos(arc.from), std::sin(arc.from));
  const double to = arc.from + arc.sweep;
  const Vec2 e2 = arc.center + arc.radius * Vec2(std::cos(to), std::sin(to));
  return std::min((p - e1).norm(), (p - e2).norm());
}

bool bond_crosses(const Segment& bond, const BoundaryPiece& piece) {
  return std::visit(
      [&](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Segment>) {
          return segments_intersect(bond, g);
        } else {
          return segment_hits_arc(bond, g);
        }
      },
      piece);
}

double distance_to(const Vec2& p, const BoundaryPiece& piece) {
  return std::visit(
      [&](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Segment>) {
          return point_segment_distance(p, g);
        } else {
          return point_arc_distance(p, g);
        }
      },
      piece);
}

bool strictly_inside_polygon(const std::vector<Vec2>& poly, const Vec2& p, double tol) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if (point_segment_distance(p, {a, b}) <= tol) return false;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) s += cross(poly[j], poly[i]);
  return 0.5 * s;
}

std::array<Vec2, 4> make_parallelogram(double alpha, double r, double area, double rotation) {
  if (!(alpha > 0 && alpha < 1 && r > 0 && area > 0)) throw DomainError("invalid parallelogram parameters");
  const double phi = alpha * std::numbers::pi;
  const double left = std::sqrt(area / (r * std::sin(phi)));
  const Vec2 bottom_dir(1.0, 0.0), left_dir(std::cos(phi), std::sin(phi));
  const Vec2 bl = -0.5 * (r * left * bottom_dir + left * left_dir);
  std::array<Vec2, 4> v = {bl, bl + left * left_dir, bl + left * left_dir + r * left * bottom_dir,
                           bl + r * left * bottom_dir};
  const Eigen::Rotation2Dd rot(rotation);
  for (Vec2& p : v) p = rot * p;
  return v;
}

}  // namespace percolab
