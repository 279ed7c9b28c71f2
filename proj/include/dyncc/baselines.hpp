#pragma once

#include <cstdint>

#include "dyncc/clustering.hpp"
#include "dyncc/dyngraph.hpp"

namespace dyncc {

/// Random-permutation pivot clustering: the lowest-rank unclustered vertex
/// claims all of its unclustered neighbors. Fresh permutation per call.
Clustering pivot_clustering(const DynGraph& g, Rng& rng);

Clustering singleton_clustering(std::size_t n);

/// Disagreements: positive edges across clusters plus absent pairs inside
/// clusters. Throws kInvalidClustering when the clustering does not cover g.
std::uint64_t cc_cost(const DynGraph& g, const Clustering& clustering);

struct OptimalClustering {
  std::uint64_t cost = 0;
  Clustering clustering;
};

inline constexpr std::size_t kBruteForceLimit = 12;

/// Exhaustive search over set partitions in restricted-growth order; the
/// first optimum met is returned. Throws kTooLarge above kBruteForceLimit.
OptimalClustering brute_force_opt(const DynGraph& g);

}  // namespace dyncc
