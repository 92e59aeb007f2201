#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "percolab/conformal.hpp"
#include "percolab/errors.hpp"
#include "percolab/lattice.hpp"

namespace percolab {

namespace {

using cd = std::complex<double>;
using Index = DiscreteDomain::Index;

constexpr Cell kSteps[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

cd to_c(const Vec2& v) { return {v.x(), v.y()}; }
Vec2 to_v(cd z) { return {z.real(), z.imag()}; }

// Does the lift through z of the w-plane bond [z², z² + delta] meet the
// z-plane segment [P, Q]? Points of the segment P + s u satisfy
// (P + s u)² = w + t delta for real t in [0,1]; the imaginary part of that
// relation is a quadratic in s. The root must also lie on the lift through
// z rather than its mirror image -z.
bool lifted_bond_crosses(cd z, cd delta, cd P, cd Q) {
  const cd w = z * z;
  if (w == 0.0 || w + delta == 0.0) {
    const cd end = w == 0.0 ? std::sqrt(delta) : cd(0.0);
    if (w == 0.0) {
      return segments_intersect({Vec2::Zero(), to_v(end)}, {to_v(P), to_v(Q)}) ||
             segments_intersect({Vec2::Zero(), to_v(-end)}, {to_v(P), to_v(Q)});
    }
    return segments_intersect({to_v(z), Vec2::Zero()}, {to_v(P), to_v(Q)});
  }
  const double len = std::abs(Q - P);
  const cd u = (Q - P) / len;
  const cd A = (P * P - w) / delta, B = 2.0 * P * u / delta, C = u * u / delta;
  const double a0 = A.imag(), a1 = B.imag(), a2 = C.imag();
  double roots[2];
  int nroots = 0;
  const double scale = std::abs(a1) + std::abs(a2) * len + std::abs(a0) / std::max(len, 1.0);
  if (std::abs(a2) * len <= 1e-14 * scale) {
    if (a1 != 0.0) roots[nroots++] = -a0 / a1;
  } else {
    const double disc = a1 * a1 - 4 * a2 * a0;
    if (disc < 0.0) return false;
    const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
    roots[nroots++] = q / a2;
    if (q != 0.0) roots[nroots++] = a0 / q;
  }
  for (int k = 0; k < nroots; ++k) {
    const double s = roots[k];
    if (s < 0.0 || s > len) continue;
    const double t = (A + B * s + C * s * s).real();
    if (t < 0.0 || t > 1.0) continue;
    const cd zl = P + s * u;
    const cd zc = z * std::sqrt(1.0 + t * delta / w);
    if (std::abs(zl - zc) <= std::abs(zl + zc)) return true;
  }
  return false;
}

}  // namespace

std::array<Vec2, 4> branched_vertices(const BranchedRegion& region) {
  if (!(region.alpha > 0 && region.alpha < 1 && region.r > 0 && region.sites > 0)) {
    throw DomainError("branched cover needs 0 < alpha < 1, r > 0 and a positive site count");
  }
  const double phi = region.alpha * std::numbers::pi;
  const Vec2 a(region.r, 0.0), b(std::cos(phi), std::sin(phi));
  // A unit-left parallelogram holds about area (|a|² + |b|²) / 3 cover
  // sites; the count grows as the fourth power of the scale.
  const double area1 = region.r * std::sin(phi);
  const double n1 = area1 * (a.squaredNorm() + b.squaredNorm()) / 3.0;
  const double lambda = std::pow(region.sites / n1, 0.25);
  const Vec2 bl = -0.5 * lambda * (a + b);
  return {bl, bl + lambda * b, bl + lambda * (a + b), bl + lambda * a};
}

std::complex<double> cover_point(const DiscreteDomain& dom, Index i) {
  const Cell& c = dom.cell(i);
  const cd z = std::sqrt(cd(c[0], c[1]));
  return dom.sheet(i) == 1 ? -z : z;
}

DiscreteDomain build_branched_double_cover(const BranchedRegion& region) {
  const auto v = branched_vertices(region);
  const std::vector<Vec2> poly(v.begin(), v.end());
  if (!strictly_inside_polygon(poly, Vec2::Zero())) throw DomainError("branch point is not interior to D");

  double rmax2 = 0.0;
  for (const Vec2& p : v) rmax2 = std::max(rmax2, p.squaredNorm());
  const int R = static_cast<int>(std::ceil(rmax2)) + 1;
  const long side = 2L * R + 1;
  std::vector<Index> grid(static_cast<std::size_t>(2 * side * side), -1);
  auto slot = [&](int x, int y, int sheet) -> Index& {
    return grid[static_cast<std::size_t>((sheet * side + (y + R)) * side + (x + R))];
  };

  DiscreteDomain::Builder b(LatticeKind::SquareSite,
                            {Topology::DoubleCover, 0, 0, "double cover of w = z^2 branched at 0"}, Vec2::Zero());
  std::vector<cd> zs;
  const Index origin = b.add_site({0, 0}, 2);
  zs.push_back(0.0);
  slot(0, 0, 0) = slot(0, 0, 1) = origin;
  for (int y = -R; y <= R; ++y) {
    for (int x = -R; x <= R; ++x) {
      if (x == 0 && y == 0) continue;
      if (double(x) * x + double(y) * y > rmax2 * rmax2) continue;
      const cd z = std::sqrt(cd(x, y));
      for (int sheet = 0; sheet < 2; ++sheet) {
        const cd zsheet = sheet == 0 ? z : -z;
        if (!strictly_inside_polygon(poly, to_v(zsheet))) continue;
        slot(x, y, sheet) = b.add_site({x, y}, static_cast<std::uint8_t>(sheet));
        zs.push_back(zsheet);
      }
    }
  }
  auto lookup = [&](int x, int y, int sheet) -> Index {
    if (std::abs(x) > R || std::abs(y) > R) return -1;
    return slot(x, y, sheet);
  };

  const ParallelogramEquivalence eq = solve_parallelogram(region.alpha, region.r);
  const DiagonalSplit split = diagonal_split(region.alpha, eq.z, DiagonalDefinition::Second);
  const cd BL = to_c(v[0]), TL = to_c(v[1]), TR = to_c(v[2]), BR = to_c(v[3]);
  const cd LS = TL + split.left_fraction * (BL - TL);
  const cd BS = BL + split.bottom_fraction * (BR - BL);
  struct Named {
    const char* name;
    std::vector<std::pair<cd, cd>> pieces;
  };
  const std::vector<Named> boundaries = {
      {"left", {{BL, TL}}},     {"top", {{TL, TR}}},       {"right", {{TR, BR}}},
      {"bottom", {{BL, BR}}},   {"d_left", {{TL, LS}}},    {"d_bottom", {{BS, BR}}},
      {"dbar_a", {{LS, BL}, {BL, BS}}}, {"dbar_b", {{BR, TR}, {TR, TL}}}};
  for (const auto& nb : boundaries) b.declare_interval(nb.name);

  const Index n = static_cast<Index>(b.size());
  for (Index i = 0; i < n; ++i) {
    const Cell c = b.cell(i);
    const cd z = zs[i];
    const cd w(c[0], c[1]);
    double reach = 0.0;
    for (const Cell& d : kSteps) {
      const cd delta(d[0], d[1]);
      const cd w2 = w + delta;
      if (i == origin) {
        for (int sheet = 0; sheet < 2; ++sheet) {
          const Index j = lookup(d[0], d[1], sheet);
          if (j >= 0) b.add_edge(i, j);
        }
        reach = std::max(reach, 1.0);
        continue;
      }
      if (w2 == 0.0) {
        b.add_edge(i, origin);
        reach = std::max(reach, std::abs(z));
        continue;
      }
      const cd z2 = z * std::sqrt(w2 / w);
      const cd root = std::sqrt(w2);
      const int sheet = std::abs(z2 - root) < std::abs(z2 + root) ? 0 : 1;
      const Index j = lookup(c[0] + d[0], c[1] + d[1], sheet);
      if (j >= 0) b.add_edge(i, j);
      reach = std::max(reach, 1.5 * std::abs(z2 - z));
    }
    for (const auto& nb : boundaries) {
      bool hit = false;
      for (const auto& [P, Q] : nb.pieces) {
        if (point_segment_distance(to_v(z), {to_v(P), to_v(Q)}) > reach + 1e-9) continue;
        for (const Cell& d : kSteps) {
          if (lifted_bond_crosses(z, cd(d[0], d[1]), P, Q)) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      if (hit) b.add_to_interval(nb.name, i);
    }
  }
  return b.finish();
}

}  // namespace percolab
