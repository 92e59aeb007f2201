#include "percolab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "percolab/errors.hpp"

namespace percolab {

bool DiscreteDomain::has_interval(std::string_view name) const { return intervals_.find(name) != intervals_.end(); }

const std::vector<DiscreteDomain::Index>& DiscreteDomain::interval(std::string_view name) const {
  auto it = intervals_.find(name);
  if (it == intervals_.end()) throw ContractError("domain has no interval named '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> DiscreteDomain::interval_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : intervals_) out.push_back(k);
  return out;
}

DiscreteDomain::Builder::Builder(LatticeKind lattice, TopologyInfo topology, Vec2 offset) {
  dom_.lattice_ = lattice;
  dom_.topology_ = std::move(topology);
  dom_.offset_ = offset;
}

DiscreteDomain::Index DiscreteDomain::Builder::add_site(Cell cell, std::uint8_t sheet) {
  dom_.cells_.push_back(cell);
  // Sheets are stored once any site is off sheet 0.
  if (sheet != 0 || !dom_.sheets_.empty()) {
    dom_.sheets_.resize(dom_.cells_.size() - 1, 0);
    dom_.sheets_.push_back(sheet);
  }
  return static_cast<Index>(dom_.cells_.size() - 1);
}

void DiscreteDomain::Builder::add_edge(Index i, Index j) {
  if (i == j) return;
  edges_.emplace_back(std::min(i, j), std::max(i, j));
}

void DiscreteDomain::Builder::add_to_interval(const std::string& name, Index i) { dom_.intervals_[name].push_back(i); }

void DiscreteDomain::Builder::declare_interval(const std::string& name) { dom_.intervals_[name]; }

DiscreteDomain DiscreteDomain::Builder::finish() {
  if (dom_.cells_.empty()) throw EmptyDomainError("region contains no lattice site");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  const std::size_t n = dom_.cells_.size();
  std::vector<std::size_t> deg(n + 1, 0);
  for (auto [a, b] : edges_) {
    ++deg[a + 1];
    ++deg[b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) deg[i + 1] += deg[i];
  dom_.offsets_ = deg;
  dom_.adj_.assign(edges_.size() * 2, 0);
  std::vector<std::size_t> fill(deg.begin(), deg.end() - 1);
  for (auto [a, b] : edges_) {
    dom_.adj_[fill[a]++] = b;
    dom_.adj_[fill[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(dom_.adj_.begin() + dom_.offsets_[i], dom_.adj_.begin() + dom_.offsets_[i + 1]);
  }
  for (auto& [name, v] : dom_.intervals_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  edges_.clear();
  return std::move(dom_);
}

std::span<const Cell> forward_steps(LatticeKind kind) {
  static const Cell square[] = {{1, 0}, {0, 1}};
  static const Cell triangular[] = {{1, 0}, {0, 1}, {1, 1}};
  if (kind == LatticeKind::SquareSite) return square;
  return triangular;
}

namespace {

using Index = DiscreteDomain::Index;
using Pieces = std::vector<BoundaryPiece>;

struct NamedBoundary {
  std::string name;
  Pieces pieces;
};

// Sites of the offset lattice strictly inside a planar region, with lattice
// adjacency restricted to the region and boundary intervals assigned by bond
// crossings.
struct PlanarRegion {
  std::function<bool(const Vec2&)> inside;
  Vec2 lo, hi;  // bounding box
  std::vector<NamedBoundary> boundaries;
};

DiscreteDomain build_planar(const PlanarRegion& region, LatticeKind lattice, Vec2 offset, TopologyInfo topo) {
  const int i0 = static_cast<int>(std::floor(region.lo.x() - offset.x())) - 1;
  const int j0 = static_cast<int>(std::floor(region.lo.y() - offset.y())) - 1;
  const int i1 = static_cast<int>(std::ceil(region.hi.x() - offset.x())) + 1;
  const int j1 = static_cast<int>(std::ceil(region.hi.y() - offset.y())) + 1;
  const long nx = i1 - i0 + 1, ny = j1 - j0 + 1;
  std::vector<Index> grid(static_cast<std::size_t>(nx * ny), -1);
  DiscreteDomain::Builder b(lattice, std::move(topo), offset);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Vec2 p(i + offset.x(), j + offset.y());
      if (region.inside(p)) grid[(j - j0) * nx + (i - i0)] = b.add_site({i, j});
    }
  }
  auto at = [&](int i, int j) -> Index {
    if (i < i0 || i > i1 || j < j0 || j > j1) return -1;
    return grid[(j - j0) * nx + (i - i0)];
  };
  const auto steps = forward_steps(lattice);
  for (const auto& nb : region.boundaries) b.declare_interval(nb.name);
  const double reach = lattice == LatticeKind::SquareSite ? 1.0 + 1e-9 : std::sqrt(2.0) + 1e-9;
  for (Index s = 0; s < static_cast<Index>(b.size()); ++s) {
    const Cell c = b.cell(s);
    for (const Cell& d : steps) {
      const Index t = at(c[0] + d[0], c[1] + d[1]);
      if (t >= 0) b.add_edge(s, t);
    }
    const Vec2 p(c[0] + offset.x(), c[1] + offset.y());
    for (const auto& nb : region.boundaries) {
      bool hit = false;
      for (const auto& piece : nb.pieces) {
        if (distance_to(p, piece) > reach) continue;
        for (const Cell& d : steps) {
          for (int sign : {1, -1}) {
            const Vec2 q = p + sign * Vec2(d[0], d[1]);
            if (bond_crosses({p, q}, piece)) {
              hit = true;
              break;
            }
          }
          if (hit) break;
        }
        if (hit) break;
      }
      if (hit) b.add_to_interval(nb.name, s);
    }
  }
  return b.finish();
}

const Vec2 kHalf(0.5, 0.5);

// Sides plus the d intervals (upper part of the left side, right part of
// the bottom side) and their complements.
std::vector<NamedBoundary> quadrilateral_boundaries(Vec2 bl, Vec2 tl, Vec2 tr, Vec2 br, double left_split,
                                                    double bottom_split) {
  const Vec2 ls = tl + left_split * (bl - tl);
  const Vec2 bs = bl + bottom_split * (br - bl);
  return {{"left", {Segment{bl, tl}}},
          {"top", {Segment{tl, tr}}},
          {"right", {Segment{tr, br}}},
          {"bottom", {Segment{bl, br}}},
          {"d_left", {Segment{tl, ls}}},
          {"d_bottom", {Segment{bs, br}}},
          {"dbar_a", {Segment{ls, bl}, Segment{bl, bs}}},
          {"dbar_b", {Segment{br, tr}, Segment{tr, tl}}}};
}

DiscreteDomain rectangle(const RectangleRegion& r, LatticeKind lattice, double mesh) {
  if (!(r.width > 0 && r.height > 0)) throw DomainError("rectangle sides must be positive");
  const double w = r.width / mesh, h = r.height / mesh;
  const Vec2 o = r.origin / mesh;
  const Vec2 bl = o, tl = o + Vec2(0, h), tr = o + Vec2(w, h), br = o + Vec2(w, 0);
  PlanarRegion reg;
  reg.inside = [=](const Vec2& p) {
    return p.x() > bl.x() && p.x() < tr.x() && p.y() > bl.y() && p.y() < tr.y();
  };
  reg.lo = bl;
  reg.hi = tr;
  reg.boundaries = quadrilateral_boundaries(bl, tl, tr, br, 0.5, 0.5);
  TopologyInfo topo{Topology::Planar, 0, 0, "rectangle"};
  return build_planar(reg, lattice, kHalf, topo);
}

DiscreteDomain parallelogram(const ParallelogramRegion& pr, LatticeKind lattice, double mesh) {
  std::array<Vec2, 4> v = pr.vertices;
  Vec2 centroid = Vec2::Zero();
  for (const Vec2& p : v) centroid += p / 4.0;
  const Eigen::Rotation2Dd rot(pr.rotation);
  for (Vec2& p : v) p = (centroid + rot * (p - centroid)) / mesh;
  std::vector<Vec2> poly(v.begin(), v.end());
  const double area = polygon_area(poly);
  if (!(area < 0)) throw DomainError("parallelogram vertices must be clockwise with positive area");
  if ((v[0] + v[2] - v[1] - v[3]).norm() > 1e-9 * std::sqrt(-area)) {
    throw DomainError("vertices do not form a parallelogram");
  }
  if (!(pr.left_split > 0 && pr.left_split < 1 && pr.bottom_split > 0 && pr.bottom_split < 1)) {
    throw DomainError("split fractions must lie in (0,1)");
  }
  const Vec2 bl = v[0], tl = v[1], tr = v[2], br = v[3];
  PlanarRegion reg;
  reg.inside = [poly](const Vec2& p) { return strictly_inside_polygon(poly, p); };
  reg.lo = reg.hi = bl;
  for (const Vec2& p : v) {
    reg.lo = reg.lo.cwiseMin(p);
    reg.hi = reg.hi.cwiseMax(p);
  }
  reg.boundaries = quadrilateral_boundaries(bl, tl, tr, br, pr.left_split, pr.bottom_split);
  TopologyInfo topo{Topology::Planar, 0, 0, "parallelogram"};
  return build_planar(reg, lattice, kHalf, topo);
}

const char* const kQuarterNames[] = {"right", "top", "left", "bottom"};

// Arcs k = 0..arcs-1 named numbered + k, centred on direction 2πk/arcs; with
// four arcs they are also named alias + right/top/left/bottom.
std::vector<NamedBoundary> circle_arcs(double radius, int arcs, const std::string& numbered,
                                       const std::string& alias, const std::string& full) {
  std::vector<NamedBoundary> out;
  const double sweep = 2 * std::numbers::pi / arcs;
  for (int k = 0; k < arcs; ++k) {
    CircleArc a{Vec2::Zero(), radius, k * sweep - sweep / 2, sweep};
    out.push_back({numbered + std::to_string(k), {a}});
    if (arcs == 4) out.push_back({alias + kQuarterNames[k], {a}});
  }
  out.push_back({full, {CircleArc{Vec2::Zero(), radius, 0.0, 2 * std::numbers::pi}}});
  return out;
}

DiscreteDomain annulus(const AnnulusRegion& a, LatticeKind lattice, double mesh) {
  if (!(a.r1 > 0 && a.r2 > a.r1)) throw DomainError("annulus requires 0 < r1 < r2");
  if (a.arcs < 1) throw DomainError("annulus needs at least one arc per circle");
  const double r1 = a.r1 / mesh, r2 = a.r2 / mesh;
  PlanarRegion reg;
  reg.inside = [=](const Vec2& p) {
    const double d = p.norm();
    return d > r1 && d < r2;
  };
  reg.lo = Vec2(-r2, -r2);
  reg.hi = Vec2(r2, r2);
  reg.boundaries = circle_arcs(r1, a.arcs, "inner_", "inner_", "inner");
  for (auto& nb : circle_arcs(r2, a.arcs, "outer_", "outer_", "outer")) reg.boundaries.push_back(std::move(nb));
  TopologyInfo topo{Topology::Planar, 0, 0, "annulus"};
  return build_planar(reg, lattice, kHalf, topo);
}

DiscreteDomain disk(const DiskRegion& d, LatticeKind lattice, double mesh) {
  if (!(d.radius > 0)) throw DomainError("disk radius must be positive");
  const double R = d.radius / mesh;
  PlanarRegion reg;
  reg.inside = [=](const Vec2& p) { return p.norm() < R; };
  reg.lo = Vec2(-R, -R);
  reg.hi = Vec2(R, R);
  reg.boundaries = circle_arcs(R, 4, "arc_", "", "boundary");
  TopologyInfo topo{Topology::Planar, 0, 0, "disk"};
  return build_planar(reg, lattice, kHalf, topo);
}

}  // namespace

DiscreteDomain build_torus(int lx, int ly) {
  if (lx < 2 || ly < 2) throw DomainError("torus sides must be at least 2");
  DiscreteDomain::Builder b(LatticeKind::SquareSite, {Topology::Torus, lx, ly, "torus"}, Vec2::Zero());
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) b.add_site({x, y});
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      const Index s = y * lx + x;
      b.add_edge(s, y * lx + (x + 1) % lx);
      b.add_edge(s, ((y + 1) % ly) * lx + x);
    }
  }
  return b.finish();
}

DiscreteDomain build_cylinder(int width, int circumference) {
  if (width < 1 || circumference < 1) throw DomainError("cylinder needs width >= 1 and circumference >= 1");
  DiscreteDomain::Builder b(LatticeKind::SquareSite, {Topology::PeriodicY, 0, circumference, "cylinder"}, kHalf);
  for (int y = 0; y < circumference; ++y)
    for (int x = 0; x < width; ++x) b.add_site({x, y});
  for (int y = 0; y < circumference; ++y) {
    for (int x = 0; x < width; ++x) {
      const Index s = y * width + x;
      if (x + 1 < width) b.add_edge(s, s + 1);
      b.add_edge(s, ((y + 1) % circumference) * width + x);
    }
  }
  for (const char* side : {"left", "right"}) {
    const int x = side[0] == 'l' ? 0 : width - 1;
    b.declare_interval(side);
    for (int k = 0; k < 4; ++k) b.declare_interval(std::string(side) + "_q" + std::to_string(k));
    for (int y = 0; y < circumference; ++y) {
      const Index s = y * width + x;
      const int k = static_cast<int>(4L * y / circumference);
      b.add_to_interval(side, s);
      b.add_to_interval(std::string(side) + "_q" + std::to_string(k), s);
    }
  }
  return b.finish();
}

DiscreteDomain build_glued_exterior(double r1, double r2) {
  if (!(r1 > 0 && r2 > r1)) throw DomainError("glued exterior requires 0 < r1 < r2");
  const DiscreteDomain ann = annulus({r1, r2, 4}, LatticeKind::SquareSite, 1.0);
  const DiscreteDomain aux = disk({r2}, LatticeKind::SquareSite, 1.0);
  DiscreteDomain::Builder b(LatticeKind::SquareSite, {Topology::Glued, 0, 0, "glued exterior"}, kHalf);
  for (Index i = 0; i < static_cast<Index>(ann.size()); ++i) b.add_site(ann.cell(i), 0);
  // Ring sites of the annulus (those whose bonds cross the outer circle)
  // stand for the same sites of the auxiliary disk.
  std::map<Cell, Index> ring;
  for (Index i : ann.interval("outer")) ring.emplace(ann.cell(i), i);
  std::vector<Index> disk_to_glued(aux.size());
  for (Index i = 0; i < static_cast<Index>(aux.size()); ++i) {
    auto it = ring.find(aux.cell(i));
    disk_to_glued[i] = it != ring.end() ? it->second : b.add_site(aux.cell(i), 1);
  }
  for (Index i = 0; i < static_cast<Index>(ann.size()); ++i)
    for (Index j : ann.neighbors(i))
      if (i < j) b.add_edge(i, j);
  for (Index i = 0; i < static_cast<Index>(aux.size()); ++i)
    for (Index j : aux.neighbors(i))
      if (i < j) b.add_edge(disk_to_glued[i], disk_to_glued[j]);
  for (const std::string& name : ann.interval_names()) {
    if (name.rfind("inner", 0) != 0) continue;
    b.declare_interval(name);
    for (Index i : ann.interval(name)) b.add_to_interval(name, i);
  }
  b.declare_interval("ring");
  for (const auto& [c, i] : ring) b.add_to_interval("ring", i);
  return b.finish();
}

DiscreteDomain build_domain(const RegionSpec& region, LatticeKind lattice, double mesh) {
  if (!(mesh > 0) || !std::isfinite(mesh)) throw DomainError("mesh must be positive");
  return std::visit(
      [&](const auto& r) -> DiscreteDomain {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RectangleRegion>) {
          return rectangle(r, lattice, mesh);
        } else if constexpr (std::is_same_v<T, ParallelogramRegion>) {
          return parallelogram(r, lattice, mesh);
        } else if constexpr (std::is_same_v<T, AnnulusRegion>) {
          return annulus(r, lattice, mesh);
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          return disk(r, lattice, mesh);
        } else {
          if (lattice != LatticeKind::SquareSite) throw ContractError("this region supports the square lattice only");
          if constexpr (std::is_same_v<T, TorusRegion>) {
            return build_torus(r.lx, r.ly);
          } else if constexpr (std::is_same_v<T, CylinderRegion>) {
            return build_cylinder(r.width, r.circumference);
          } else if constexpr (std::is_same_v<T, BranchedRegion>) {
            return build_branched_double_cover(r);
          } else {
            return build_glued_exterior(r.r1 / mesh, r.r2 / mesh);
          }
        }
      },
      region);
}

namespace {
int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

bool StriatedField::is_band(const Cell& c) const {
  const Cell k{floor_mod(c[0], cell_x), floor_mod(c[1], cell_y)};
  return std::find(tile.begin(), tile.end(), k) != tile.end();
}

double field_probability(const ProbabilityField& field, const Cell& cell) {
  if (const auto* c = std::get_if<ConstantField>(&field)) return c->p;
  const auto& s = std::get<StriatedField>(field);
  return s.is_band(cell) ? s.p2 * s.band_factor : s.p2;
}

void validate_field(const ProbabilityField& field) {
  auto check = [](double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("site probability must lie in [0,1], got " + std::to_string(p));
  };
  if (const auto* c = std::get_if<ConstantField>(&field)) {
    check(c->p);
    return;
  }
  const auto& s = std::get<StriatedField>(field);
  check(s.p2);
  check(s.p2 * s.band_factor);
  if (s.cell_x < 1 || s.cell_y < 1) throw DomainError("striated cell dimensions must be positive");
}

Configuration sample_configuration(const DiscreteDomain& dom, const ProbabilityField& field, RandomSource& src) {
  validate_field(field);
  Configuration cfg;
  cfg.open.resize(dom.size());
  const int bits = src.bits();
  if (const auto* c = std::get_if<ConstantField>(&field)) {
    const std::uint64_t t = bernoulli_threshold(c->p, bits);
    src.visit([&](auto& eng) {
      for (auto& o : cfg.open) o = eng.next() < t;
    });
    return cfg;
  }
  const auto& s = std::get<StriatedField>(field);
  const std::uint64_t t_off = bernoulli_threshold(s.p2, bits);
  const std::uint64_t t_band = bernoulli_threshold(s.p2 * s.band_factor, bits);
  src.visit([&](auto& eng) {
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const std::uint64_t t = s.is_band(dom.cell(static_cast<Index>(i))) ? t_band : t_off;
      cfg.open[i] = eng.next() < t;
    }
  });
  return cfg;
}

}  // namespace percolab
