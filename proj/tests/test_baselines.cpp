#include <gtest/gtest.h>

#include <cmath>

#include "dyncc/baselines.hpp"
#include "oracle.hpp"

namespace dyncc {
namespace {

Clustering groups(std::size_t n, std::vector<std::vector<std::uint32_t>> g) {
  return Clustering::from_groups(n, g);
}

TEST(Pivot, EmptyGraphGivesSingletons) {
  Rng rng(1);
  const auto c = pivot_clustering(DynGraph(6), rng);
  EXPECT_EQ(c.num_clusters(), 6u);
}

TEST(Pivot, TriangleIsOneCluster) {
  const auto tri = oracle::complete(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(pivot_clustering(tri, rng).num_clusters(), 1u);
  }
}

TEST(Pivot, PathCenterPivotClaimsEverything) {
  // Pivot 1 first yields {0,1,2} with cost 1; an end pivot yields a pair
  // plus a singleton, also cost 1.
  const auto path = oracle::from_edges(3, {{0, 1}, {1, 2}});
  int whole = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto c = pivot_clustering(path, rng);
    EXPECT_EQ(cc_cost(path, c), 1u);
    if (c.num_clusters() == 1) ++whole;
  }
  // Binomial(300, 1/3): mean 100, sd 8.2.
  EXPECT_GT(whole, 60);
  EXPECT_LT(whole, 140);
}

TEST(Pivot, ClustersAreStarsAroundPivots) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::erdos_renyi(50, 0.1, seed);
    Rng rng(seed);
    const auto c = pivot_clustering(g, rng);
    ASSERT_EQ(c.num_vertices(), 50u);
    // The pivot id is the pivot vertex and sees every other member.
    for (Vertex v = 0; v < 50; ++v) {
      const auto p = static_cast<Vertex>(c.assignment[v]);
      ASSERT_EQ(c.assignment[p], p);
      if (p != v) {
        ASSERT_TRUE(g.has_edge(p, v));
      }
    }
  }
}

TEST(Singleton, CostIsEdgeCount) {
  EXPECT_EQ(singleton_clustering(3).num_clusters(), 3u);
  const auto one = singleton_clustering(1);
  EXPECT_EQ(cc_cost(DynGraph(1), one), 0u);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = oracle::erdos_renyi(30, 0.02 * static_cast<double>(seed % 20), seed);
    EXPECT_EQ(cc_cost(g, singleton_clustering(30)), g.edge_count());
  }
}

TEST(CcCost, DefinitionExamples) {
  EXPECT_EQ(cc_cost(oracle::complete(4), groups(4, {{0, 1, 2, 3}})), 0u);
  auto k4 = oracle::complete(4);
  k4.delete_edge(1, 3);
  EXPECT_EQ(cc_cost(k4, groups(4, {{0, 1, 2, 3}})), 1u);
  const auto path = oracle::from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(cc_cost(path, groups(3, {{0, 1}, {2}})), 1u);
}

TEST(CcCost, MatchesPairwiseReference) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = oracle::erdos_renyi(25, 0.3, seed);
    std::uniform_int_distribution<std::uint64_t> label(0, 1 + seed % 8);
    std::vector<ClusterId> a(25);
    for (auto& x : a) x = label(rng) * 1000003;  // sparse ids
    const auto c = Clustering::from_assignment(a);
    EXPECT_EQ(cc_cost(g, c), oracle::pair_cost(oracle::adjacency(g), a));

    // Any bijective relabeling leaves the cost alone.
    std::vector<ClusterId> b(a);
    for (auto& x : b) x = ~x;
    EXPECT_EQ(cc_cost(g, Clustering::from_assignment(b)), cc_cost(g, c));

    // One big cluster: every absent pair is a disagreement.
    EXPECT_EQ(cc_cost(g, Clustering::from_assignment(std::vector<ClusterId>(25, 7))),
              25u * 24u / 2u - g.edge_count());
  }
}

TEST(CcCost, RejectsMismatchedClustering) {
  const auto g = oracle::complete(4);
  EXPECT_THROW(cc_cost(g, singleton_clustering(3)), Error);
  Clustering broken = singleton_clustering(4);
  broken.sizes.begin()->second = 5;
  EXPECT_THROW(cc_cost(g, broken), Error);
  EXPECT_THROW(groups(4, {{0, 1}, {2}}), Error);
}

TEST(BruteForce, SmallExamples) {
  EXPECT_EQ(brute_force_opt(oracle::complete(3)).cost, 0u);
  EXPECT_EQ(brute_force_opt(oracle::from_edges(3, {{0, 1}, {1, 2}})).cost, 1u);
  const auto c5 = oracle::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const auto opt = brute_force_opt(c5);
  EXPECT_EQ(opt.cost, oracle::exhaustive_opt(oracle::adjacency(c5)));
  EXPECT_EQ(cc_cost(c5, opt.clustering), opt.cost);
  EXPECT_EQ(brute_force_opt(DynGraph(1)).cost, 0u);
}

TEST(BruteForce, MatchesExhaustiveLabelings) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 3 + seed % 5;  // 3..7
    const auto g = oracle::erdos_renyi(n, 0.2 + 0.1 * static_cast<double>(seed % 6), seed);
    const auto opt = brute_force_opt(g);
    ASSERT_EQ(opt.cost, oracle::exhaustive_opt(oracle::adjacency(g))) << "seed " << seed;
    ASSERT_EQ(cc_cost(g, opt.clustering), opt.cost);
  }
}

TEST(BruteForce, NeverAboveOtherClusterings) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::erdos_renyi(10, 0.4, seed);
    const auto opt = brute_force_opt(g).cost;
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) ASSERT_LE(opt, cc_cost(g, pivot_clustering(g, rng)));
    ASSERT_LE(opt, g.edge_count());
  }
}

TEST(BruteForce, SizeLimit) {
  EXPECT_NO_THROW(brute_force_opt(DynGraph(kBruteForceLimit)));
  try {
    brute_force_opt(DynGraph(kBruteForceLimit + 1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

// Smaller version of the acceptance check: mean pivot cost within three
// times the optimum plus three standard errors.
TEST(Pivot, ThreeApproximationInExpectation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::erdos_renyi(8, 0.5, seed);
    const double opt = static_cast<double>(brute_force_opt(g).cost);
    Rng rng(seed);
    double sum = 0, sq = 0;
    const int runs = 500;
    for (int i = 0; i < runs; ++i) {
      const double c = static_cast<double>(cc_cost(g, pivot_clustering(g, rng)));
      sum += c;
      sq += c * c;
    }
    const double mean = sum / runs;
    const double se = std::sqrt(std::max(0.0, sq / runs - mean * mean) / runs);
    EXPECT_LE(mean, 3 * opt + 3 * se + 1e-9) << "seed " << seed;
  }
}

}  // namespace
}  // namespace dyncc
