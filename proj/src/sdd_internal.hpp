#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dyncc/dyngraph.hpp"

namespace dyncc::internal {

// Threshold comparisons with a little slack for products like 0.3 * 2.
constexpr double kTol = 1e-9;
inline bool at_least(double value, double bound) { return value >= bound - kTol; }
inline bool at_most(double value, double bound) { return value <= bound + kTol; }

/// Epoch-stamped membership over vertex ids; clearing is O(1).
class StampSet {
 public:
  void reset(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  void insert(Vertex v) { stamp_[v] = epoch_; }
  bool contains(Vertex v) const { return stamp_[v] == epoch_; }
  /// Inserts v; returns false if it was already present.
  bool add(Vertex v) {
    if (stamp_[v] == epoch_) return false;
    stamp_[v] = epoch_;
    return true;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

/// Epoch-stamped map from vertex id to a dense local index.
class LocalIndex {
 public:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  void reset(std::size_t n) {
    members_.reset(n);
    if (index_.size() < n) index_.resize(n, kAbsent);
  }
  void set(Vertex v, std::uint32_t i) {
    members_.insert(v);
    index_[v] = i;
  }
  std::uint32_t get(Vertex v) const {
    return members_.contains(v) ? index_[v] : kAbsent;
  }

 private:
  StampSet members_;
  std::vector<std::uint32_t> index_;
};

/// Almost-clique predicate from per-member counts, shared by every dense
/// check so that the global and local versions cannot drift apart.
struct MemberCounts {
  double degree = 0;       // deg(v) in the ambient graph
  double inside = 0;       // |N(v) ∩ K|
};

inline bool dense_predicate(const std::vector<MemberCounts>& counts,
                            double alpha) {
  const double k = static_cast<double>(counts.size());
  double max_degree = 0;
  for (const auto& c : counts) {
    const double bound = alpha * std::max(k, c.degree);
    const double non_neighbors = k - 1 - c.inside;  // K \ N[v]
    const double outside = c.degree - c.inside;     // N(v) \ K
    if (!at_most(non_neighbors, bound) || !at_most(outside, bound)) {
      return false;
    }
    max_degree = std::max(max_degree, c.degree);
  }
  if (!at_most((1 - alpha) * max_degree, k)) return false;
  if (counts.size() > 2 && !at_most(k, (1 + alpha) * (max_degree + 1))) {
    return false;
  }
  return true;
}

/// Disjoint-set forest with path halving; unions keep the smaller root.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

/// Groups `members` (local indices) by union-find root, ordered by the
/// smallest index in each group.
inline std::vector<std::vector<std::uint32_t>> group_components(
    UnionFind& uf, const std::vector<std::uint32_t>& members) {
  std::vector<std::vector<std::uint32_t>> groups;
  std::vector<std::int64_t> slot_of_root;
  for (std::uint32_t i : members) {
    const std::uint32_t root = uf.find(i);
    if (slot_of_root.size() <= root) slot_of_root.resize(root + 1, -1);
    if (slot_of_root[root] < 0) {
      slot_of_root[root] = static_cast<std::int64_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot_of_root[root])].push_back(i);
  }
  return groups;
}

}  // namespace dyncc::internal
