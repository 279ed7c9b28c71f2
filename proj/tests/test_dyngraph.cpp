#include <gtest/gtest.h>

#include <map>
#include <set>

#include "dyncc/dyngraph.hpp"
#include "oracle.hpp"

namespace dyncc {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dyncc::Error thrown";
  return ErrorCode::kInvalidSpec;
}

TEST(DynGraph, NewGraphIsEmpty) {
  DynGraph g(5);
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(g.edge_count(), 0u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 0u);

  DynGraph single(1);
  EXPECT_EQ(single.degree(0), 0u);
  EXPECT_EQ(code_of([] { DynGraph bad(0); }), ErrorCode::kInvalidSize);
}

TEST(DynGraph, InsertUpdatesDegreesAndCount) {
  DynGraph g(3);
  g.insert_edge(0, 1);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.degree(2), 0u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(code_of([&] { g.insert_edge(0, 1); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([&] { g.insert_edge(1, 0); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([&] { g.insert_edge(2, 2); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([&] { g.insert_edge(0, 3); }), ErrorCode::kOutOfRange);
}

TEST(DynGraph, DeleteRestoresAndReportsMissing) {
  DynGraph g(3);
  EXPECT_EQ(code_of([&] { g.delete_edge(0, 1); }), ErrorCode::kMissingEdge);
  g.insert_edge(0, 1);
  g.delete_edge(0, 1);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_TRUE(g.check_consistency());

  auto tri = oracle::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  tri.delete_edge(1, 2);
  EXPECT_EQ(tri.degree(0), 2u);
  EXPECT_EQ(tri.degree(1), 1u);
  EXPECT_EQ(tri.degree(2), 1u);
  EXPECT_FALSE(tri.has_edge(1, 2));
  EXPECT_TRUE(tri.has_edge(0, 1));
}

TEST(DynGraph, Queries) {
  auto path = oracle::from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(path.degree(1), 2u);
  EXPECT_FALSE(path.has_edge(0, 2));
  EXPECT_EQ(oracle::complete(4).edge_count(), 6u);
  EXPECT_EQ(code_of([&] { path.degree(3); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { path.has_edge(0, 7); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { path.neighbors(9); }), ErrorCode::kOutOfRange);

  const auto nb = path.neighbors(1);
  EXPECT_EQ(std::set<Vertex>(nb.begin(), nb.end()), (std::set<Vertex>{0, 2}));
  EXPECT_EQ(path.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(DynGraph, SampleNeighbor) {
  Rng rng(42);
  auto g = oracle::from_edges(6, {{0, 1}, {2, 3}, {2, 4}, {2, 5}, {2, 1}});
  EXPECT_EQ(g.sample_neighbor(0, rng), 1u);
  DynGraph lonely(2);
  EXPECT_EQ(code_of([&] { lonely.sample_neighbor(0, rng); }), ErrorCode::kIsolatedVertex);

  // Binomial(10000, 1/4): [2300, 2700] is a > 4.6 sigma window.
  std::map<Vertex, int> freq;
  for (int i = 0; i < 10000; ++i) ++freq[g.sample_neighbor(2, rng)];
  EXPECT_EQ(freq.size(), 4u);
  for (auto [v, count] : freq) {
    EXPECT_TRUE(g.has_edge(2, v));
    EXPECT_GE(count, 2300) << v;
    EXPECT_LE(count, 2700) << v;
  }
}

TEST(DynGraph, ApplyDispatchesOnOp) {
  DynGraph g(4);
  g.apply({UpdateOp::kInsert, 3, 1});
  EXPECT_TRUE(g.has_edge(1, 3));
  g.apply({UpdateOp::kDelete, 1, 3});
  EXPECT_FALSE(g.has_edge(1, 3));
}

TEST(DynGraph, InverseReplayRestoresEmptyGraph) {
  Rng rng(7);
  DynGraph g(40);
  std::vector<EdgeUpdate> log;
  std::uniform_int_distribution<Vertex> pick(0, 39);
  for (int i = 0; i < 3000; ++i) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    const auto op = g.has_edge(u, v) ? UpdateOp::kDelete : UpdateOp::kInsert;
    g.apply({op, u, v});
    log.push_back({op, u, v});
  }
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    g.apply({it->op == UpdateOp::kInsert ? UpdateOp::kDelete : UpdateOp::kInsert,
             it->u, it->v});
  }
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(g.check_consistency());
}

// Random operations against a set-of-pairs model.
TEST(DynGraph, FuzzAgainstSetModel) {
  Rng rng(2024);
  constexpr Vertex kN = 60;
  DynGraph g(kN);
  std::set<std::pair<Vertex, Vertex>> model;
  std::uniform_int_distribution<Vertex> pick(0, kN - 1);
  for (int i = 0; i < 200'000; ++i) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v) {
      EXPECT_THROW(g.insert_edge(u, v), Error);
      continue;
    }
    const auto key = std::minmax(u, v);
    if (model.count(key)) {
      g.delete_edge(u, v);
      model.erase(key);
    } else {
      g.insert_edge(u, v);
      model.insert(key);
    }
    ASSERT_EQ(g.has_edge(v, u), model.count(key) == 1);
    ASSERT_EQ(g.edge_count(), model.size());
    if (i % 20'000 == 0) {
      ASSERT_TRUE(g.check_consistency());
    }
  }
  ASSERT_TRUE(g.check_consistency());
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : g.edges()) {
    ASSERT_LT(e.u, e.v);
    seen.insert({e.u, e.v});
  }
  EXPECT_EQ(seen, model);
}

TEST(GraphOracle, ChargesEveryPrimitive) {
  auto g = oracle::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  GraphOracle o(g);
  Rng rng(1);
  o.degree(0);
  o.has_edge(1, 2);
  o.sample_neighbor(0, rng);
  EXPECT_EQ(o.ops(), 3u);
  o.neighbors(0);
  EXPECT_EQ(o.ops(), 6u);
  o.charge(10);
  EXPECT_EQ(o.ops(), 16u);
}

}  // namespace
}  // namespace dyncc
