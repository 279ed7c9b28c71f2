#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dyncc/baselines.hpp"
#include "dyncc/maintainer.hpp"
#include "oracle.hpp"

namespace dyncc {
namespace {

SddParams with_eps(double eps) {
  SddParams p;
  p.eps = eps;
  return p;
}

EdgeUpdate ins(Vertex u, Vertex v) { return {UpdateOp::kInsert, u, v}; }
EdgeUpdate del(Vertex u, Vertex v) { return {UpdateOp::kDelete, u, v}; }

// Inserts K_k on [first, first + k) in a shuffled order.
void build_clique(Maintainer& m, Vertex first, std::size_t k, std::uint64_t seed) {
  std::vector<EdgeUpdate> ups;
  for (Vertex a = first; a < first + k; ++a) {
    for (Vertex b = a + 1; b < first + k; ++b) ups.push_back(ins(a, b));
  }
  Rng rng(seed);
  std::shuffle(ups.begin(), ups.end(), rng);
  for (const auto& up : ups) m.apply_update(up);
}

// Random legal updates over n vertices, biased toward dense blocks.
std::vector<EdgeUpdate> fuzz_stream(std::size_t n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  DynGraph shadow(n);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::bernoulli_distribution same_block(0.8);
  std::vector<EdgeUpdate> out;
  while (out.size() < count) {
    Vertex u = pick(rng), v = pick(rng);
    if (same_block(rng)) v = static_cast<Vertex>((u / 20) * 20 + v % 20);
    if (u == v || v >= n) continue;
    const auto op = shadow.has_edge(u, v) ? UpdateOp::kDelete : UpdateOp::kInsert;
    shadow.apply({op, u, v});
    out.push_back({op, u, v});
  }
  return out;
}

TEST(Maintainer, FreshStateIsAllSingletons) {
  Maintainer m(10, with_eps(0.45), 1);
  for (Vertex v = 0; v < 10; ++v) {
    EXPECT_TRUE(m.partition().is_sparse(v));
    EXPECT_EQ(m.cluster_of(v), v);
    EXPECT_EQ(m.counter(v), 0u);
    EXPECT_EQ(m.recorded_degree(v), 0u);
  }
  EXPECT_EQ(m.clustering().num_clusters(), 10u);
  EXPECT_EQ(cc_cost(m.graph(), m.clustering()), 0u);
  EXPECT_TRUE(m.verify_invariants(true).ok());
  EXPECT_THROW(Maintainer(0, SddParams{}, 1), Error);
  EXPECT_THROW(m.cluster_of(10), std::out_of_range);
}

TEST(Maintainer, FirstEdgeFormsTwoVertexClique) {
  Maintainer m(10, with_eps(0.45), 1);
  const auto stats = m.apply_update(ins(3, 7));
  EXPECT_TRUE(stats.triggered);
  EXPECT_GT(stats.oracle_ops, 0u);
  EXPECT_EQ(m.cluster_of(3), m.cluster_of(7));
  const auto snap = m.clustering_snapshot();
  ASSERT_EQ(snap.size(), 9u);
  EXPECT_EQ(snap.front(), (std::vector<Vertex>{3, 7}));
  for (std::size_t i = 1; i < snap.size(); ++i) EXPECT_EQ(snap[i].size(), 1u);
  EXPECT_EQ(cc_cost(m.graph(), m.clustering()), 0u);
  EXPECT_TRUE(m.verify_invariants().ok());
}

TEST(Maintainer, QuietUpdateLeavesPartitionUnchanged) {
  Maintainer m(60, with_eps(0.45), 3);
  build_clique(m, 0, 30, 1);
  build_clique(m, 30, 30, 2);
  // A cross pair whose endpoints sit well below their trigger thresholds.
  const double eps = m.params().eps;
  auto quiet = [&](Vertex x) {
    return static_cast<double>(m.counter(x) + 1) <
           eps / 10 * static_cast<double>(m.recorded_degree(x));
  };
  Vertex a = 60, b = 60;
  for (Vertex x = 0; x < 30 && a == 60; ++x) {
    if (quiet(x)) a = x;
  }
  for (Vertex y = 30; y < 60 && b == 60; ++y) {
    if (quiet(y)) b = y;
  }
  ASSERT_LT(a, 60u);
  ASSERT_LT(b, 60u);
  const auto before = m.clustering_snapshot();
  const auto stats = m.apply_update(ins(a, b));
  EXPECT_FALSE(stats.triggered);
  EXPECT_EQ(stats.sparsified, 0u);
  EXPECT_TRUE(stats.dismantled.empty());
  EXPECT_EQ(m.clustering_snapshot(), before);
  EXPECT_EQ(stats.oracle_ops, 1u);
}

// K_100 maintained at eps = 0.02, where the split test is live. Members 0, 1
// and 2 grow 450 private leaves each; once more than eps * 100 of them have
// gone sparse the clique they left must be dismantled.
TEST(Maintainer, LosingMembersDismantlesTheClique) {
  const double eps = 0.02;
  Maintainer m(100 + 3 * 450, with_eps(eps), 7);
  build_clique(m, 0, 100, 1);
  const auto formed = m.partition().clique_of(50);
  ASSERT_TRUE(formed.has_value());
  ASSERT_EQ(m.partition().clique(*formed).members.size(), 100u);

  Vertex leaf = 100;
  bool dismantled = false;
  for (Vertex x : {0u, 1u, 2u}) {
    for (int j = 0; j < 450 && !dismantled; ++j) {
      const auto stats = m.apply_update(ins(x, leaf++));
      for (CliqueId id : stats.dismantled) {
        dismantled = true;
        EXPECT_FALSE(m.partition().is_live(id));
      }
    }
    if (dismantled) break;
  }
  ASSERT_TRUE(dismantled);
  for (Vertex v = 3; v < 100; ++v) EXPECT_TRUE(m.partition().is_sparse(v)) << v;
  const auto& events = m.totals().dismantles;
  const auto big = std::find_if(events.begin(), events.end(),
                                [](const DismantleEvent& e) { return e.k_formed == 100; });
  ASSERT_NE(big, events.end());
  EXPECT_GE(static_cast<double>(big->incident_updates), eps * eps * 100 / 2);
  EXPECT_TRUE(m.partition().is_consistent());
}

// Removals are injected directly; the next triggering update that touches a
// surviving member must apply the dismantle rule.
TEST(Maintainer, DismantleRuleFiresOnInjectedRemovals) {
  Maintainer m(101, with_eps(0.45), 5);
  build_clique(m, 0, 100, 3);
  const auto id = m.partition().clique_of(0);
  ASSERT_TRUE(id.has_value());
  const std::size_t k = m.partition().clique(*id).k_formed;
  ASSERT_EQ(k, 100u);
  auto& p = m.mutable_partition_for_testing();
  for (Vertex v = 0; v < 46; ++v) p.make_sparse(v);  // 46 > 0.45 * 100

  // Vertex 100 is fresh, so it triggers; vertex 60 is far below threshold.
  ASSERT_LT(static_cast<double>(m.counter(60) + 1),
            0.045 * static_cast<double>(m.recorded_degree(60)));
  const auto stats = m.apply_update(ins(60, 100));
  EXPECT_EQ(stats.dismantled, std::vector<CliqueId>{*id});
  for (Vertex v = 46; v < 100; ++v) EXPECT_TRUE(m.partition().is_sparse(v));
  ASSERT_FALSE(m.totals().dismantles.empty());
  EXPECT_EQ(m.totals().dismantles.back().k_formed, 100u);
}

TEST(Maintainer, CorruptedPartitionIsReported) {
  Maintainer m(100, with_eps(0.45), 2);
  build_clique(m, 0, 100, 4);
  ASSERT_TRUE(m.verify_invariants().ok());
  m.mutable_partition_for_testing().make_sparse(17);
  const auto report = m.verify_invariants();
  EXPECT_EQ(report.sparse_violations, std::vector<Vertex>{17});
  EXPECT_TRUE(report.dense_violations.empty());
  try {
    m.verify_invariants(true);
    ADD_FAILURE() << "strict mode did not throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvariantViolation);
  }
}

TEST(Maintainer, IllegalUpdatesPropagateGraphErrors) {
  Maintainer m(5, SddParams{}, 1);
  m.apply_update(ins(0, 1));
  EXPECT_THROW(m.apply_update(ins(1, 0)), Error);
  EXPECT_THROW(m.apply_update(del(2, 3)), Error);
  EXPECT_THROW(m.apply_update(ins(4, 4)), Error);
}

TEST(Maintainer, SameSeedSameHistory) {
  const auto stream = fuzz_stream(80, 3000, 9);
  Maintainer a(80, with_eps(0.3), 42), b(80, with_eps(0.3), 42);
  for (const auto& up : stream) {
    const auto sa = a.apply_update(up);
    const auto sb = b.apply_update(up);
    ASSERT_EQ(sa.oracle_ops, sb.oracle_ops);
    ASSERT_EQ(sa.dismantled, sb.dismantled);
  }
  EXPECT_EQ(a.clustering_snapshot(), b.clustering_snapshot());
  EXPECT_EQ(a.totals().triggers, b.totals().triggers);
}

// Partition coverage after every update, trigger consumption, and the
// snapshot matching cluster_of.
TEST(Maintainer, FuzzKeepsStateConsistent) {
  const std::size_t n = 100;
  const auto stream = fuzz_stream(n, 5000, 17);
  Maintainer m(n, with_eps(0.45), 3);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto stats = m.apply_update(stream[i]);
    ASSERT_TRUE(m.partition().is_consistent()) << "update " << i;
    // An endpoint either fired (and was reset) or stayed below its bar.
    for (Vertex x : {stream[i].u, stream[i].v}) {
      const double bar = 0.045 * static_cast<double>(m.recorded_degree(x));
      ASSERT_TRUE(m.counter(x) == 0 || static_cast<double>(m.counter(x)) < bar)
          << "update " << i;
    }
    if (!stats.triggered) {
      ASSERT_EQ(stats.sparsified, 0u);
    }
    if (i % 250 == 0) {
      const auto snap = m.clustering_snapshot();
      std::vector<int> seen(n, 0);
      for (const auto& group : snap) {
        ASSERT_FALSE(group.empty());
        for (Vertex v : group) {
          ++seen[v];
          ASSERT_EQ(m.cluster_of(v), m.cluster_of(group.front()));
        }
      }
      for (Vertex v = 0; v < n; ++v) ASSERT_EQ(seen[v], 1) << v;
      ASSERT_EQ(m.clustering().num_clusters(), snap.size());
    }
  }
  EXPECT_EQ(m.totals().updates, stream.size());
  EXPECT_TRUE(m.graph().check_consistency());
}

TEST(Maintainer, ClusteringCostMatchesReference) {
  const auto stream = fuzz_stream(60, 2000, 23);
  Maintainer m(60, with_eps(0.45), 8);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    m.apply_update(stream[i]);
    if (i % 200 != 199) continue;
    const auto c = m.clustering();
    EXPECT_EQ(cc_cost(m.graph(), c), oracle::pair_cost(oracle::adjacency(m.graph()), c.assignment));
  }
}

TEST(Maintainer, SeparatedCliquesBecomeClusters) {
  Maintainer m(90, with_eps(0.45), 11);
  build_clique(m, 0, 40, 5);
  build_clique(m, 40, 50, 6);
  EXPECT_EQ(m.cluster_of(0), m.cluster_of(39));
  EXPECT_EQ(m.cluster_of(40), m.cluster_of(89));
  EXPECT_NE(m.cluster_of(0), m.cluster_of(40));
  EXPECT_EQ(cc_cost(m.graph(), m.clustering()), 0u);
  EXPECT_TRUE(m.verify_invariants().ok());
}

}  // namespace
}  // namespace dyncc
