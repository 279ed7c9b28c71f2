#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "dyncc/error.hpp"

namespace dyncc {

using Vertex = std::uint32_t;
using Rng = std::mt19937_64;

enum class UpdateOp { kInsert, kDelete };

struct EdgeUpdate {
  UpdateOp op = UpdateOp::kInsert;
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const EdgeUpdate&, const EdgeUpdate&) = default;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Dynamic adjacency list of the positive subgraph over a fixed vertex set.
///
/// Every vertex keeps its neighbors in a flat sequence plus a hash index from
/// neighbor id to slot, so membership, degree, insertion, deletion
/// (swap-with-last) and uniform neighbor sampling are all O(1).
class DynGraph {
 public:
  explicit DynGraph(std::size_t n);

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return m_; }

  std::size_t degree(Vertex v) const {
    check_vertex(v);
    return adj_[v].size();
  }

  bool has_edge(Vertex u, Vertex v) const;

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  void insert_edge(Vertex u, Vertex v);
  void delete_edge(Vertex u, Vertex v);
  void apply(const EdgeUpdate& update);

  Vertex sample_neighbor(Vertex v, Rng& rng) const;

  /// Every edge once, as (min, max) pairs, in vertex-major order.
  std::vector<Edge> edges() const;

  /// Full O(n + m) scan of the structural invariants; for tests and audits.
  bool check_consistency() const;

 private:
  void check_vertex(Vertex v) const {
    if (v >= adj_.size()) {
      throw Error(ErrorCode::kOutOfRange,
                  "vertex " + std::to_string(v) + " >= n=" +
                      std::to_string(adj_.size()));
    }
  }
  void remove_slot(Vertex owner, Vertex gone);

  std::vector<std::vector<Vertex>> adj_;
  std::vector<absl::flat_hash_map<Vertex, std::uint32_t>> pos_;
  std::size_t m_ = 0;
};

/// Counting facade over a DynGraph. Algorithms query the graph only through
/// this view so that every primitive call is charged as one oracle operation
/// (neighbor iteration is charged per element).
class GraphOracle {
 public:
  explicit GraphOracle(const DynGraph& g) : g_(&g) {}

  std::size_t num_vertices() const noexcept { return g_->num_vertices(); }

  std::size_t degree(Vertex v) {
    ++ops_;
    return g_->degree(v);
  }
  bool has_edge(Vertex u, Vertex v) {
    ++ops_;
    return g_->has_edge(u, v);
  }
  std::span<const Vertex> neighbors(Vertex v) {
    auto span = g_->neighbors(v);
    ops_ += span.size();
    return span;
  }
  Vertex sample_neighbor(Vertex v, Rng& rng) {
    ++ops_;
    return g_->sample_neighbor(v, rng);
  }

  void charge(std::uint64_t ops) noexcept { ops_ += ops; }
  std::uint64_t ops() const noexcept { return ops_; }
  const DynGraph& graph() const noexcept { return *g_; }

 private:
  const DynGraph* g_;
  std::uint64_t ops_ = 0;
};

}  // namespace dyncc
