#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dyncc/clustering.hpp"
#include "dyncc/dyngraph.hpp"
#include "dyncc/partition.hpp"
#include "dyncc/sdd.hpp"

namespace dyncc {

struct UpdateStats {
  std::uint64_t oracle_ops = 0;  // graph primitive calls made by this update
  bool triggered = false;        // a clique-generation step fired
  std::vector<CliqueId> dismantled;
  std::size_t sparsified = 0;    // clique members moved to sparse by the split test
};

struct DismantleEvent {
  CliqueId id = 0;
  std::size_t k_formed = 0;
  std::uint64_t incident_updates = 0;  // updates touching K's members since formation
};

struct CumulativeStats {
  std::uint64_t updates = 0;
  std::uint64_t oracle_ops = 0;
  std::uint64_t triggers = 0;
  std::uint64_t sparsified = 0;
  std::vector<DismantleEvent> dismantles;
};

struct InvariantReport {
  bool partition_consistent = true;
  std::vector<Vertex> sparse_violations;    // sparse vertices failing the sparseness level
  std::vector<CliqueId> dense_violations;   // cliques failing the density level
  bool ok() const {
    return partition_consistent && sparse_violations.empty() &&
           dense_violations.empty();
  }
};

/// Fully dynamic maintenance of a sparse-dense decomposition under edge
/// insertions and deletions, exposing the induced clustering: every
/// almost-clique is one cluster, every sparse vertex a singleton.
class Maintainer {
 public:
  Maintainer(std::size_t n, SddParams params, std::uint64_t seed);
  // The oracle points into graph_, so instances stay put.
  Maintainer(const Maintainer&) = delete;
  Maintainer& operator=(const Maintainer&) = delete;

  /// Applies one update and runs the trigger / split / dismantle cascade.
  UpdateStats apply_update(const EdgeUpdate& update);

  /// v for a sparse vertex, n + clique id otherwise. Clique ids grow
  /// without bound, so they take the upper range.
  ClusterId cluster_of(Vertex v) const;
  /// Cliques in id order (members ascending), then sparse singletons.
  std::vector<std::vector<Vertex>> clustering_snapshot() const;
  Clustering clustering() const;

  /// Sparse vertices at level eps/8 and cliques at level 120*eps, exactly.
  /// Strict mode throws kInvariantViolation instead of returning a report
  /// with violations.
  InvariantReport verify_invariants(bool strict = false) const;

  const DynGraph& graph() const noexcept { return graph_; }
  const SddPartition& partition() const noexcept { return partition_; }
  const SddParams& params() const noexcept { return params_; }
  const CumulativeStats& totals() const noexcept { return totals_; }
  std::uint64_t counter(Vertex v) const { return counter_.at(v); }
  std::size_t recorded_degree(Vertex v) const { return recorded_.at(v); }

  /// Direct partition access for fault-injection tests.
  SddPartition& mutable_partition_for_testing() noexcept { return partition_; }

 private:
  bool maybe_generate(Vertex x, std::vector<CliqueId>& candidates);
  void reset(Vertex w);
  void note_incident(Vertex x, CliqueId& seen);

  DynGraph graph_;
  GraphOracle oracle_;
  SddPartition partition_;
  SddParams params_;
  Rng rng_;
  std::vector<std::uint64_t> counter_;
  std::vector<std::size_t> recorded_;
  std::vector<std::uint64_t> incident_;  // per clique id
  CumulativeStats totals_;
};

}  // namespace dyncc
