#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dyncc {

using ClusterId = std::uint64_t;

/// A labeling of vertices 0..n-1 with cluster ids. Ids need not be dense.
struct Clustering {
  std::vector<ClusterId> assignment;
  std::map<ClusterId, std::size_t> sizes;

  static Clustering from_assignment(std::vector<ClusterId> assignment);
  /// Cluster i of `groups` receives id i; vertices outside every group are
  /// rejected with kInvalidClustering.
  static Clustering from_groups(std::size_t n,
                                std::span<const std::vector<std::uint32_t>> groups);

  std::size_t num_vertices() const noexcept { return assignment.size(); }
  std::size_t num_clusters() const noexcept { return sizes.size(); }
};

}  // namespace dyncc
