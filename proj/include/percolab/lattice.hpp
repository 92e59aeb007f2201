#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "percolab/geometry.hpp"
#include "percolab/rng.hpp"

namespace percolab {

enum class LatticeKind { SquareSite, TriangularSite };

enum class Topology { Planar, PeriodicY, Torus, DoubleCover, Glued };

struct TopologyInfo {
  Topology kind = Topology::Planar;
  int lx = 0;  // torus width
  int ly = 0;  // torus height, or cylinder circumference
  std::string description;
};

using Cell = std::array<std::int32_t, 2>;

// Rectangle [0,width] x [0,height] shifted by `origin`.
struct RectangleRegion {
  double width = 1.0;
  double height = 1.0;
  Vec2 origin = Vec2::Zero();
};

// Vertices in clockwise order: bottom-left, top-left, top-right,
// bottom-right; rotated by `rotation` about their centroid. The split
// fractions place the ends of the d intervals: along the left side from the
// top-left corner and along the bottom side from the bottom-left corner.
struct ParallelogramRegion {
  std::array<Vec2, 4> vertices;
  double rotation = 0.0;
  double left_split = 0.5;
  double bottom_split = 0.5;
};

// Boundary circles divided into `arcs` equal arcs centred on the directions
// 2πk/arcs.
struct AnnulusRegion {
  double r1 = 1.0;
  double r2 = 2.0;
  int arcs = 4;
};

struct DiskRegion {
  double radius = 1.0;
};

struct TorusRegion {
  int lx = 2;
  int ly = 2;
};

// width x circumference, periodic in y. The left and right sides are each
// divided into four intervals of (nearly) equal length.
struct CylinderRegion {
  int width = 1;
  int circumference = 4;
};

// Parallelogram D in the z-plane, centred on the branch point 0 with
// horizontal top and bottom sides, interior angle απ at the bottom-left
// corner and bottom/left = r. Sites are the points z with z² on the unit
// square lattice of the w-plane (both square roots), so the lattice is a
// two-sheeted cover branched at w = 0; D is scaled so that it holds about
// `sites` of them. d intervals use the split points φ(1), φ(i).
struct BranchedRegion {
  double alpha = 0.5;
  double r = 1.0;
  double sites = 40000.0;
};

struct GluedExteriorRegion {
  double r1 = 1.0;
  double r2 = 2.0;
};

using RegionSpec = std::variant<RectangleRegion, ParallelogramRegion, AnnulusRegion, DiskRegion, TorusRegion,
                                CylinderRegion, BranchedRegion, GluedExteriorRegion>;

// Finite site graph. Immutable once built.
class DiscreteDomain {
 public:
  using Index = std::int32_t;

  std::size_t size() const noexcept { return cells_.size(); }
  LatticeKind lattice() const noexcept { return lattice_; }
  const TopologyInfo& topology() const noexcept { return topology_; }

  const Cell& cell(Index i) const { return cells_[i]; }
  // Plane coordinates (the w-plane for double covers).
  Vec2 position(Index i) const {
    return {cells_[i][0] + offset_.x(), cells_[i][1] + offset_.y()};
  }
  const Vec2& lattice_offset() const noexcept { return offset_; }
  // Sheet of a double cover (0/1, 2 for the branch point) or of a glued
  // domain (0 annulus, 1 auxiliary disk); 0 otherwise.
  std::uint8_t sheet(Index i) const { return sheets_.empty() ? 0 : sheets_[i]; }

  std::span<const Index> neighbors(Index i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::size_t degree(Index i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t edge_count() const noexcept { return adj_.size() / 2; }

  bool has_interval(std::string_view name) const;
  // Sorted site indices; ContractError if absent.
  const std::vector<Index>& interval(std::string_view name) const;
  std::vector<std::string> interval_names() const;

  class Builder;

 private:
  LatticeKind lattice_ = LatticeKind::SquareSite;
  TopologyInfo topology_;
  Vec2 offset_ = Vec2::Zero();
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> sheets_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> adj_;
  std::map<std::string, std::vector<Index>, std::less<>> intervals_;
};

class DiscreteDomain::Builder {
 public:
  Builder(LatticeKind lattice, TopologyInfo topology, Vec2 offset);

  Index add_site(Cell cell, std::uint8_t sheet = 0);
  void add_edge(Index i, Index j);
  void add_to_interval(const std::string& name, Index i);
  void declare_interval(const std::string& name);
  std::size_t size() const { return dom_.cells_.size(); }
  const Cell& cell(Index i) const { return dom_.cells_[i]; }

  // Sorts and deduplicates adjacency and intervals. Throws EmptyDomainError
  // when no site was added.
  DiscreteDomain finish();

 private:
  DiscreteDomain dom_;
  std::vector<std::pair<Index, Index>> edges_;
};

// Lattice steps (one per undirected bond direction, both signs expanded by
// callers): square (1,0),(0,1); triangular adds (1,1).
std::span<const Cell> forward_steps(LatticeKind kind);

DiscreteDomain build_domain(const RegionSpec& region, LatticeKind lattice = LatticeKind::SquareSite,
                            double mesh = 1.0);
DiscreteDomain build_torus(int lx, int ly);
DiscreteDomain build_cylinder(int width, int circumference);
DiscreteDomain build_glued_exterior(double r1, double r2);
DiscreteDomain build_branched_double_cover(const BranchedRegion& region);

// z-plane location of a site of a branched double cover.
std::complex<double> cover_point(const DiscreteDomain& dom, DiscreteDomain::Index i);
// z-plane vertices of D (bottom-left, top-left, top-right, bottom-right).
std::array<Vec2, 4> branched_vertices(const BranchedRegion& region);

// Band tile of the striated model inside its repeating cell.
inline const std::vector<Cell>& default_band_tile() {
  static const std::vector<Cell> tile = {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 2}, {4, 2}, {4, 3}, {5, 3}};
  return tile;
}

struct ConstantField {
  double p = 0.5;
};

// Band sites get p2 * band_factor, all others p2. The band tile repeats with
// period (cell_x, cell_y).
struct StriatedField {
  double p2 = 0.84928;
  double band_factor = 0.2;
  int cell_x = 6;
  int cell_y = 4;
  std::vector<Cell> tile = default_band_tile();

  bool is_band(const Cell& c) const;
};

using ProbabilityField = std::variant<ConstantField, StriatedField>;

double field_probability(const ProbabilityField& field, const Cell& cell);
void validate_field(const ProbabilityField& field);

struct Configuration {
  std::vector<std::uint8_t> open;
};

// One draw per site in index order.
Configuration sample_configuration(const DiscreteDomain& dom, const ProbabilityField& field, RandomSource& src);

}  // namespace percolab
