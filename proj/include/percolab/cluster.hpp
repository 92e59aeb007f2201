#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"

namespace percolab {

// Union by rank with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }
  void reset(std::size_t n);
  std::int32_t find(std::int32_t i);
  // Returns false when already joined.
  bool unite(std::int32_t i, std::int32_t j);

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct ClusterLabeling {
  // Root label per site, -1 for closed sites.
  std::vector<std::int32_t> root;
  std::size_t clusters = 0;

  bool connected(std::int32_t i, std::int32_t j) const { return root[i] >= 0 && root[i] == root[j]; }
};

ClusterLabeling label_clusters(const DiscreteDomain& dom, const Configuration& cfg);

struct CrossingBattery {
  bool h = false;
  bool v = false;
  bool hv = false;  // h and v both occur (not necessarily in one cluster)
  bool d = false;
  bool dbar = false;
};

struct IntervalPair {
  std::string from;
  std::string to;
};

struct BatteryIntervals {
  IntervalPair h{"left", "right"};
  IntervalPair v{"top", "bottom"};
  IntervalPair d{"d_left", "d_bottom"};
  IntervalPair dbar{"dbar_a", "dbar_b"};
};

// Is some open cluster touching both intervals? ContractError if either
// interval is missing.
bool intervals_connected(const DiscreteDomain& dom, const ClusterLabeling& lab, const std::string& a,
                         const std::string& b);

CrossingBattery crossing_battery(const DiscreteDomain& dom, const Configuration& cfg,
                                 const BatteryIntervals& defs = {});

using WrapVector = std::array<std::int64_t, 2>;

// Winding generators of each torus cluster, keyed by the cluster's root.
// Bonds are processed site by site ((x,y) -> (x+1,y), then (x,y) -> (x,y+1)),
// each carrying its own lattice step so that the two parallel bonds of a
// side-2 torus are both seen. Closing a cycle whose lifted endpoints differ
// by (m Lx, n Ly) records (m, n).
std::map<std::int32_t, std::vector<WrapVector>> wrapping_vectors(const DiscreteDomain& dom,
                                                                 const Configuration& cfg);

struct HomologySubgroup {
  enum class Kind { Trivial, Cyclic, Full };
  Kind kind = Kind::Trivial;
  std::int64_t m = 0;  // Cyclic only: primitive, m > 0 or (m, n) = (0, 1)
  std::int64_t n = 0;

  friend bool operator==(const HomologySubgroup&, const HomologySubgroup&) = default;
  std::string label() const;  // "0", "H", "(m,n)"
};

struct SpanReduction {
  int rank = 0;
  // Hermite normal form rows (rank many): [[a, b], [0, d]] with a > 0, d > 0,
  // 0 <= b < d for rank 2; [[a, b]] with a > 0 or (0, b), b > 0 for rank 1.
  std::array<WrapVector, 2> basis{};
  // Index of the span inside its saturation (gcd for rank 1, |det| for rank 2).
  std::int64_t index = 1;
};

SpanReduction reduce_span(const std::vector<WrapVector>& vectors);
HomologySubgroup image_subgroup(const std::vector<WrapVector>& vectors);

}  // namespace percolab
