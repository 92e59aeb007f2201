#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "percolab/cluster.hpp"
#include "percolab/errors.hpp"

using namespace percolab;

namespace {

// Same partition of the open sites.
void expect_same_partition(const ClusterLabeling& lab, const std::vector<int>& comp) {
  std::map<int, int> fwd, back;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    ASSERT_EQ(lab.root[i] < 0, comp[i] < 0);
    if (comp[i] < 0) continue;
    auto [f, fi] = fwd.emplace(lab.root[i], comp[i]);
    auto [b, bi] = back.emplace(comp[i], lab.root[i]);
    ASSERT_EQ(f->second, comp[i]);
    ASSERT_EQ(b->second, lab.root[i]);
  }
  EXPECT_EQ(lab.clusters, fwd.size());
}

std::vector<std::uint8_t> bits(int n, unsigned mask) {
  std::vector<std::uint8_t> open(n);
  for (int i = 0; i < n; ++i) open[i] = (mask >> i) & 1;
  return open;
}

}  // namespace

TEST(UnionFind, Basics) {
  UnionFind uf(5);
  EXPECT_TRUE(uf.unite(0, 1));
  EXPECT_TRUE(uf.unite(3, 4));
  EXPECT_FALSE(uf.unite(1, 0));
  EXPECT_EQ(uf.find(0), uf.find(1));
  EXPECT_NE(uf.find(0), uf.find(3));
  EXPECT_TRUE(uf.unite(1, 4));
  EXPECT_EQ(uf.find(0), uf.find(3));
  EXPECT_NE(uf.find(2), uf.find(0));
}

TEST(Labeling, MatchesBreadthFirstSearch) {
  std::vector<DiscreteDomain> domains;
  domains.push_back(build_domain(RectangleRegion{23, 17}));
  domains.push_back(build_domain(RectangleRegion{15, 15}, LatticeKind::TriangularSite));
  domains.push_back(build_domain(AnnulusRegion{4, 11, 4}));
  domains.push_back(build_cylinder(9, 12));
  domains.push_back(build_torus(7, 5));
  domains.push_back(build_glued_exterior(4, 9));
  domains.push_back(build_branched_double_cover({0.375, 1.3, 3000}));
  RandomSource src(RngKind::Default, 17);
  for (const auto& dom : domains) {
    for (double p : {0.3, 0.55, 0.6, 0.8}) {
      for (int k = 0; k < 20; ++k) {
        const Configuration cfg = sample_configuration(dom, ConstantField{p}, src);
        expect_same_partition(label_clusters(dom, cfg), oracle::bfs_components(dom, cfg));
      }
    }
  }
}

TEST(Battery, MatchesBreadthFirstSearch) {
  const DiscreteDomain dom = build_domain(RectangleRegion{20, 14});
  RandomSource src(RngKind::Lcg48, 4);
  for (int k = 0; k < 300; ++k) {
    const Configuration cfg = sample_configuration(dom, ConstantField{0.59}, src);
    const CrossingBattery b = crossing_battery(dom, cfg);
    const bool h = oracle::bfs_connected(dom, cfg, "left", "right");
    const bool v = oracle::bfs_connected(dom, cfg, "top", "bottom");
    EXPECT_EQ(b.h, h);
    EXPECT_EQ(b.v, v);
    EXPECT_EQ(b.hv, h && v);
    EXPECT_EQ(b.d, oracle::bfs_connected(dom, cfg, "d_left", "d_bottom"));
    EXPECT_EQ(b.dbar, oracle::bfs_connected(dom, cfg, "dbar_a", "dbar_b"));
  }
}

TEST(Battery, HandMade) {
  const DiscreteDomain dom = build_domain(RectangleRegion{3, 3});
  Configuration cfg;
  cfg.open.assign(9, 0);
  // Middle row open.
  for (std::size_t i = 0; i < 9; ++i)
    if (dom.cell(static_cast<int>(i))[1] == 1) cfg.open[i] = 1;
  CrossingBattery b = crossing_battery(dom, cfg);
  EXPECT_TRUE(b.h);
  EXPECT_FALSE(b.v);
  cfg.open.assign(9, 1);
  b = crossing_battery(dom, cfg);
  EXPECT_TRUE(b.h && b.v && b.hv && b.d && b.dbar);
  Configuration wrong;
  wrong.open.assign(4, 1);
  EXPECT_THROW(crossing_battery(dom, wrong), ContractError);
}

TEST(Homology, SpanReduction) {
  EXPECT_EQ(reduce_span({}).rank, 0);
  const auto r1 = reduce_span({{2, 0}, {4, 0}});
  EXPECT_EQ(r1.rank, 1);
  EXPECT_EQ(r1.index, 2);
  const auto r2 = reduce_span({{1, 0}, {0, 1}});
  EXPECT_EQ(r2.rank, 2);
  EXPECT_EQ(r2.index, 1);
  const auto r3 = reduce_span({{2, 0}, {0, 3}, {1, 1}});
  EXPECT_EQ(r3.rank, 2);
  EXPECT_EQ(r3.index, 1);
  EXPECT_EQ(reduce_span({{2, 0}, {0, 2}}).index, 4);
  EXPECT_EQ(image_subgroup({{-3, 3}}).label(), "(1,-1)");
  EXPECT_EQ(image_subgroup({{0, -2}}).label(), "(0,1)");
  EXPECT_EQ(image_subgroup({{1, 2}, {2, 1}}).label(), "H");
  EXPECT_EQ(image_subgroup({}).label(), "0");
}

TEST(Homology, AllConfigurationsOfThreeByThree) {
  const DiscreteDomain dom = build_torus(3, 3);
  for (unsigned mask = 0; mask < 512; ++mask) {
    Configuration cfg{bits(9, mask)};
    std::vector<WrapVector> all;
    for (const auto& [root, v] : wrapping_vectors(dom, cfg)) all.insert(all.end(), v.begin(), v.end());
    ASSERT_EQ(image_subgroup(all), oracle::lifted_cycle_subgroup(3, 3, cfg.open)) << "mask " << mask;
  }
}

TEST(Homology, SampledFourByFourAndRectangular) {
  RandomSource src(RngKind::Default, 23);
  for (auto [lx, ly] : {std::pair{4, 4}, std::pair{2, 5}, std::pair{6, 3}}) {
    const DiscreteDomain dom = build_torus(lx, ly);
    for (int k = 0; k < 2000; ++k) {
      const Configuration cfg = sample_configuration(dom, ConstantField{0.3 + 0.5 * (k % 5) / 4.0}, src);
      std::vector<WrapVector> all;
      for (const auto& [root, v] : wrapping_vectors(dom, cfg)) all.insert(all.end(), v.begin(), v.end());
      ASSERT_EQ(image_subgroup(all), oracle::lifted_cycle_subgroup(lx, ly, cfg.open));
    }
  }
}

TEST(Homology, WindingLine) {
  const DiscreteDomain dom = build_torus(4, 4);
  Configuration cfg;
  cfg.open.assign(16, 0);
  // Diagonal staircase (0,0),(1,0),(1,1),(2,1),(2,2),(3,2),(3,3),(0,3).
  for (auto [x, y] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {0, 3}})
    cfg.open[y * 4 + x] = 1;
  std::vector<WrapVector> all;
  for (const auto& [root, v] : wrapping_vectors(dom, cfg)) all.insert(all.end(), v.begin(), v.end());
  EXPECT_EQ(image_subgroup(all).label(), "(1,1)");
  EXPECT_THROW(wrapping_vectors(build_domain(RectangleRegion{3, 3}), Configuration{std::vector<std::uint8_t>(9, 1)}),
               ContractError);
}
