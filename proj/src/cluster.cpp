#include "percolab/cluster.hpp"

#include <numeric>

#include "percolab/errors.hpp"

namespace percolab {

void UnionFind::reset(std::size_t n) {
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0);
  rank_.assign(n, 0);
}

std::int32_t UnionFind::find(std::int32_t i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool UnionFind::unite(std::int32_t i, std::int32_t j) {
  i = find(i);
  j = find(j);
  if (i == j) return false;
  if (rank_[i] < rank_[j]) std::swap(i, j);
  parent_[j] = i;
  if (rank_[i] == rank_[j]) ++rank_[i];
  return true;
}

ClusterLabeling label_clusters(const DiscreteDomain& dom, const Configuration& cfg) {
  if (cfg.open.size() != dom.size()) throw ContractError("configuration does not belong to the domain");
  const auto n = static_cast<std::int32_t>(dom.size());
  UnionFind uf(dom.size());
  for (std::int32_t i = 0; i < n; ++i) {
    if (!cfg.open[i]) continue;
    for (std::int32_t j : dom.neighbors(i))
      if (j > i && cfg.open[j]) uf.unite(i, j);
  }
  ClusterLabeling lab;
  lab.root.assign(dom.size(), -1);
  for (std::int32_t i = 0; i < n; ++i) {
    if (!cfg.open[i]) continue;
    lab.root[i] = uf.find(i);
    if (lab.root[i] == i) ++lab.clusters;
  }
  return lab;
}

bool intervals_connected(const DiscreteDomain& dom, const ClusterLabeling& lab, const std::string& a,
                         const std::string& b) {
  const auto& ia = dom.interval(a);
  const auto& ib = dom.interval(b);
  std::vector<std::int32_t> roots;
  for (std::int32_t s : ia)
    if (lab.root[s] >= 0) roots.push_back(lab.root[s]);
  std::sort(roots.begin(), roots.end());
  for (std::int32_t s : ib)
    if (lab.root[s] >= 0 && std::binary_search(roots.begin(), roots.end(), lab.root[s])) return true;
  return false;
}

CrossingBattery crossing_battery(const DiscreteDomain& dom, const Configuration& cfg, const BatteryIntervals& defs) {
  for (const IntervalPair* p : {&defs.h, &defs.v, &defs.d, &defs.dbar}) {
    dom.interval(p->from);
    dom.interval(p->to);
  }
  const ClusterLabeling lab = label_clusters(dom, cfg);
  CrossingBattery out;
  out.h = intervals_connected(dom, lab, defs.h.from, defs.h.to);
  out.v = intervals_connected(dom, lab, defs.v.from, defs.v.to);
  out.hv = out.h && out.v;
  out.d = intervals_connected(dom, lab, defs.d.from, defs.d.to);
  out.dbar = intervals_connected(dom, lab, defs.dbar.from, defs.dbar.to);
  return out;
}

std::map<std::int32_t, std::vector<WrapVector>> wrapping_vectors(const DiscreteDomain& dom,
                                                                 const Configuration& cfg) {
  const TopologyInfo& topo = dom.topology();
  if (topo.kind != Topology::Torus) throw ContractError("wrapping_vectors needs a torus domain");
  if (cfg.open.size() != dom.size()) throw ContractError("configuration does not belong to the domain");
  const int lx = topo.lx, ly = topo.ly;
  const auto n = static_cast<std::int32_t>(dom.size());
  // parent pointers carry the lifted offset pos(i) - pos(parent(i)).
  std::vector<std::int32_t> parent(n);
  std::vector<std::array<std::int64_t, 2>> off(n, {0, 0});
  std::vector<std::uint8_t> rank(n, 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t i) {
    std::array<std::int64_t, 2> acc{0, 0};
    std::int32_t r = i;
    while (parent[r] != r) {
      acc[0] += off[r][0];
      acc[1] += off[r][1];
      r = parent[r];
    }
    // compress: every node on the path now points at r with its full offset
    std::array<std::int64_t, 2> rest = acc;
    while (parent[i] != i) {
      const std::int32_t next = parent[i];
      const auto step = off[i];
      parent[i] = r;
      off[i] = rest;
      rest[0] -= step[0];
      rest[1] -= step[1];
      i = next;
    }
    return std::pair{r, acc};
  };
  std::vector<std::pair<std::int32_t, WrapVector>> raw;
  auto bond = [&](std::int32_t i, std::int32_t j, int dx, int dy) {
    auto [ri, di] = find(i);
    auto [rj, dj] = find(j);
    // pos(j) = pos(i) + (dx, dy) along this bond.
    const std::int64_t ex = di[0] + dx - dj[0], ey = di[1] + dy - dj[1];
    if (ri == rj) {
      if (ex != 0 || ey != 0) raw.push_back({ri, {ex / lx, ey / ly}});
      return;
    }
    // offset of rj relative to ri: pos(rj) - pos(ri) = ex, ey
    if (rank[ri] < rank[rj]) {
      parent[ri] = rj;
      off[ri] = {-ex, -ey};
    } else {
      parent[rj] = ri;
      off[rj] = {ex, ey};
      if (rank[ri] == rank[rj]) ++rank[ri];
    }
  };
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      const std::int32_t s = y * lx + x;
      if (!cfg.open[s]) continue;
      const std::int32_t e = y * lx + (x + 1) % lx;
      const std::int32_t u = ((y + 1) % ly) * lx + x;
      if (cfg.open[e]) bond(s, e, 1, 0);
      if (cfg.open[u]) bond(s, u, 0, 1);
    }
  }
  std::map<std::int32_t, std::vector<WrapVector>> out;
  for (const auto& [r, vec] : raw) out[find(r).first].push_back(vec);
  return out;
}

std::string HomologySubgroup::label() const {
  switch (kind) {
    case Kind::Trivial:
      return "0";
    case Kind::Full:
      return "H";
    case Kind::Cyclic:
      break;
  }
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

SpanReduction reduce_span(const std::vector<WrapVector>& vectors) {
  // Row-reduce the 2-column integer matrix by Euclid on the first column.
  std::vector<WrapVector> rows;
  for (const auto& v : vectors)
    if (v[0] != 0 || v[1] != 0) rows.push_back(v);
  SpanReduction out;
  if (rows.empty()) return out;
  WrapVector pivot{0, 0};
  std::int64_t g2 = 0;  // gcd of second-column entries after clearing the first column
  for (const auto& r0 : rows) {
    WrapVector r = r0;
    while (r[0] != 0) {
      if (pivot[0] == 0) {
        std::swap(pivot, r);
        break;
      }
      const std::int64_t q = pivot[0] / r[0];
      pivot[0] -= q * r[0];
      pivot[1] -= q * r[1];
      std::swap(pivot, r);
    }
    if (r[0] == 0) g2 = std::gcd(g2, r[1]);
  }
  if (pivot[0] < 0) {
    pivot[0] = -pivot[0];
    pivot[1] = -pivot[1];
  }
  if (pivot[0] == 0) {
    out.rank = 1;
    out.basis[0] = {0, g2};
    out.index = g2;
    return out;
  }
  if (g2 == 0) {
    out.rank = 1;
    out.basis[0] = pivot;
    out.index = std::gcd(pivot[0], pivot[1]);
    return out;
  }
  out.rank = 2;
  std::int64_t b = pivot[1] % g2;
  if (b < 0) b += g2;
  out.basis[0] = {pivot[0], b};
  out.basis[1] = {0, g2};
  out.index = pivot[0] * g2;
  return out;
}

HomologySubgroup image_subgroup(const std::vector<WrapVector>& vectors) {
  const SpanReduction s = reduce_span(vectors);
  HomologySubgroup h;
  if (s.rank == 0) return h;
  if (s.rank == 2) {
    h.kind = HomologySubgroup::Kind::Full;
    return h;
  }
  h.kind = HomologySubgroup::Kind::Cyclic;
  const std::int64_t g = s.index;
  h.m = s.basis[0][0] / g;
  h.n = s.basis[0][1] / g;
  if (h.m < 0 || (h.m == 0 && h.n < 0)) {
    h.m = -h.m;
    h.n = -h.n;
  }
  return h;
}

}  // namespace percolab
