#include "dyncc/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "absl/container/flat_hash_map.h"

namespace dyncc {

Clustering Clustering::from_assignment(std::vector<ClusterId> assignment) {
  Clustering c;
  for (ClusterId id : assignment) ++c.sizes[id];
  c.assignment = std::move(assignment);
  return c;
}

Clustering Clustering::from_groups(
    std::size_t n, std::span<const std::vector<std::uint32_t>> groups) {
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> assignment(n, kUnset);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::uint32_t v : groups[i]) {
      if (v >= n || assignment[v] != kUnset) {
        throw Error(ErrorCode::kInvalidClustering,
                    "vertex " + std::to_string(v) + " out of range or repeated");
      }
      assignment[v] = i;
    }
  }
  if (std::find(assignment.begin(), assignment.end(), kUnset) != assignment.end()) {
    throw Error(ErrorCode::kInvalidClustering, "groups do not cover every vertex");
  }
  return from_assignment(std::move(assignment));
}

Clustering pivot_clustering(const DynGraph& g, Rng& rng) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  // Fisher-Yates with an explicit index draw so the permutation depends only
  // on the engine, not on the standard library's shuffle.
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> assignment(n, kUnset);
  for (Vertex pivot : order) {
    if (assignment[pivot] != kUnset) continue;
    assignment[pivot] = pivot;
    for (Vertex w : g.neighbors(pivot)) {
      if (assignment[w] == kUnset) assignment[w] = pivot;
    }
  }
  return Clustering::from_assignment(std::move(assignment));
}

Clustering singleton_clustering(std::size_t n) {
  std::vector<ClusterId> assignment(n);
  std::iota(assignment.begin(), assignment.end(), ClusterId{0});
  return Clustering::from_assignment(std::move(assignment));
}

std::uint64_t cc_cost(const DynGraph& g, const Clustering& clustering) {
  const std::size_t n = g.num_vertices();
  if (clustering.assignment.size() != n) {
    throw Error(ErrorCode::kInvalidClustering,
                "clustering covers " + std::to_string(clustering.assignment.size()) +
                    " vertices, graph has " + std::to_string(n));
  }
  std::size_t total = 0;
  for (const auto& [id, size] : clustering.sizes) total += size;
  if (total != n) {
    throw Error(ErrorCode::kInvalidClustering, "cluster sizes do not sum to n");
  }
  absl::flat_hash_map<ClusterId, std::uint64_t> internal_edges;
  std::uint64_t inside = 0;
  for (Vertex u = 0; u < n; ++u) {
    const ClusterId cu = clustering.assignment[u];
    for (Vertex v : g.neighbors(u)) {
      if (v > u && clustering.assignment[v] == cu) {
        ++internal_edges[cu];
        ++inside;
      }
    }
  }
  std::uint64_t cost = g.edge_count() - inside;
  for (const auto& [id, size] : clustering.sizes) {
    const std::uint64_t s = size;
    const auto it = internal_edges.find(id);
    const std::uint64_t mc = it == internal_edges.end() ? 0 : it->second;
    cost += s * (s - 1) / 2 - mc;
  }
  return cost;
}

namespace {

// Restricted-growth enumeration with incremental cost. Placing vertex i into
// block b settles every pair (j, i) with j < i.
class PartitionSearch {
 public:
  explicit PartitionSearch(const DynGraph& g)
      : n_(g.num_vertices()), adj_(n_, std::vector<char>(n_, 0)),
        block_(n_, 0), best_block_(n_, 0) {
    for (const Edge& e : g.edges()) adj_[e.u][e.v] = adj_[e.v][e.u] = 1;
  }

  void run() { place(0, 0, 0); }
  std::uint64_t best() const { return best_; }
  const std::vector<ClusterId>& best_blocks() const { return best_block_; }

 private:
  void place(std::size_t i, std::size_t blocks, std::uint64_t partial) {
    if (partial >= best_) return;
    if (i == n_) {
      best_ = partial;
      best_block_.assign(block_.begin(), block_.end());
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n_; ++b) {
      std::uint64_t delta = 0;
      for (std::size_t j = 0; j < i; ++j) {
        const bool same = block_[j] == b;
        delta += (same != static_cast<bool>(adj_[i][j])) ? 1 : 0;
      }
      block_[i] = b;
      place(i + 1, std::max(blocks, b + 1), partial + delta);
    }
  }

  std::size_t n_;
  std::vector<std::vector<char>> adj_;
  std::vector<ClusterId> block_;
  std::vector<ClusterId> best_block_;
  std::uint64_t best_ = std::numeric_limits<std::uint64_t>::max();
};

}  // namespace

OptimalClustering brute_force_opt(const DynGraph& g) {
  if (g.num_vertices() > kBruteForceLimit) {
    throw Error(ErrorCode::kTooLarge,
                "brute force limited to n <= " + std::to_string(kBruteForceLimit));
  }
  PartitionSearch search(g);
  search.run();
  return {search.best(), Clustering::from_assignment(search.best_blocks())};
}

}  // namespace dyncc
