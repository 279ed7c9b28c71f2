#include "dyncc/maintainer.hpp"

#include <algorithm>
#include <string>

#include "sdd_internal.hpp"

namespace dyncc {

Maintainer::Maintainer(std::size_t n, SddParams params, std::uint64_t seed)
    : graph_(n), oracle_(graph_), partition_(n), params_(params), rng_(seed),
      counter_(n, 0), recorded_(n, 0) {
  params_.validate();
}

void Maintainer::reset(Vertex w) {
  counter_[w] = 0;
  recorded_[w] = oracle_.degree(w);
}

void Maintainer::note_incident(Vertex x, CliqueId& seen) {
  const CliqueId id = partition_.label(x);
  if (id == SddPartition::kSparse || id == seen) return;
  if (incident_.size() <= id) incident_.resize(id + 1, 0);
  ++incident_[id];
  seen = id;
}

bool Maintainer::maybe_generate(Vertex x, std::vector<CliqueId>& candidates) {
  const double bar = params_.eps / 10 * static_cast<double>(recorded_[x]);
  if (!internal::at_least(static_cast<double>(counter_[x]), bar)) return false;
  const auto result = clique_generation(oracle_, partition_, x, params_, rng_);
  for (const auto* ids : {&result.created, &result.touched}) {
    for (CliqueId id : *ids) {
      if (!partition_.is_live(id)) continue;
      for (Vertex w : partition_.clique(id).members) reset(w);
    }
  }
  candidates.insert(candidates.end(), result.touched.begin(), result.touched.end());
  return true;
}

UpdateStats Maintainer::apply_update(const EdgeUpdate& update) {
  const std::uint64_t ops_before = oracle_.ops();
  graph_.apply(update);
  oracle_.charge(1);
  const Vertex u = update.u;
  const Vertex v = update.v;

  CliqueId seen = SddPartition::kSparse;
  note_incident(u, seen);
  note_incident(v, seen);
  ++counter_[u];
  ++counter_[v];

  UpdateStats stats;
  std::vector<CliqueId> candidates;
  const bool fired_u = maybe_generate(u, candidates);
  const bool fired_v = maybe_generate(v, candidates);
  stats.triggered = fired_u || fired_v;

  // Split test on N[u] and/or N[v]. Each test reads only the graph, so the
  // sequential loop sees the same state a parallel one would.
  std::vector<Vertex> tested;
  auto gather = [&](Vertex x) {
    tested.push_back(x);
    for (Vertex w : oracle_.neighbors(x)) tested.push_back(w);
  };
  if (fired_u) gather(u);
  if (fired_v) gather(v);
  std::sort(tested.begin(), tested.end());
  tested.erase(std::unique(tested.begin(), tested.end()), tested.end());

  std::vector<char> to_sparse(tested.size(), 0);
  for (std::size_t i = 0; i < tested.size(); ++i) {
    to_sparse[i] = sparse_split_test(oracle_, tested[i], params_, rng_);
  }
  for (std::size_t i = 0; i < tested.size(); ++i) {
    const Vertex w = tested[i];
    if (to_sparse[i]) {
      if (auto old = partition_.make_sparse(w)) {
        candidates.push_back(*old);
        ++stats.sparsified;
      }
    }
    reset(w);
    if (auto id = partition_.clique_of(w)) candidates.push_back(*id);
  }

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (CliqueId id : candidates) {
    if (!partition_.is_live(id)) continue;
    const auto& rec = partition_.clique(id);
    if (static_cast<double>(rec.removed) <=
        params_.eps * static_cast<double>(rec.k_formed) + internal::kTol) {
      continue;
    }
    const std::size_t k_formed = rec.k_formed;
    for (Vertex w : partition_.dismantle(id)) reset(w);
    stats.dismantled.push_back(id);
    totals_.dismantles.push_back(
        {id, k_formed, id < incident_.size() ? incident_[id] : 0});
  }

  stats.oracle_ops = oracle_.ops() - ops_before;
  ++totals_.updates;
  totals_.oracle_ops += stats.oracle_ops;
  totals_.triggers += stats.triggered ? 1 : 0;
  totals_.sparsified += stats.sparsified;
  return stats;
}

ClusterId Maintainer::cluster_of(Vertex v) const {
  const CliqueId id = partition_.label(v);
  if (id == SddPartition::kSparse) return v;
  return graph_.num_vertices() + static_cast<ClusterId>(id);
}

std::vector<std::vector<Vertex>> Maintainer::clustering_snapshot() const {
  std::vector<std::vector<Vertex>> out;
  for (CliqueId id : partition_.live_cliques()) {
    auto members = partition_.clique(id).members;
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  for (Vertex v = 0; v < graph_.num_vertices(); ++v) {
    if (partition_.is_sparse(v)) out.push_back({v});
  }
  return out;
}

Clustering Maintainer::clustering() const {
  std::vector<ClusterId> assignment(graph_.num_vertices());
  for (Vertex v = 0; v < assignment.size(); ++v) assignment[v] = cluster_of(v);
  return Clustering::from_assignment(std::move(assignment));
}

InvariantReport Maintainer::verify_invariants(bool strict) const {
  InvariantReport report;
  report.partition_consistent = partition_.is_consistent();
  const double eps = params_.eps;
  for (Vertex v = 0; v < graph_.num_vertices(); ++v) {
    if (partition_.is_sparse(v) &&
        !exact_sparse_check(graph_, v, eps / 8, params_.eta0)) {
      report.sparse_violations.push_back(v);
    }
  }
  for (CliqueId id : partition_.live_cliques()) {
    if (!exact_dense_check(graph_, partition_.clique(id).members, 120 * eps)) {
      report.dense_violations.push_back(id);
    }
  }
  if (strict && !report.ok()) {
    throw Error(ErrorCode::kInvariantViolation,
                std::to_string(report.sparse_violations.size()) +
                    " sparse and " + std::to_string(report.dense_violations.size()) +
                    " clique violations" +
                    (report.partition_consistent ? "" : ", partition inconsistent"));
  }
  return report;
}

}  // namespace dyncc
