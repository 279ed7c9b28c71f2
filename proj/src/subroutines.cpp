#include <algorithm>
#include <limits>

#include "dyncc/sdd.hpp"
#include "sdd_internal.hpp"

namespace dyncc {

namespace {

std::vector<Vertex> draw_members(const std::vector<Vertex>& members,
                                 std::size_t count, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  std::vector<Vertex> out(count);
  for (auto& x : out) x = members[pick(rng)];
  return out;
}

}  // namespace

MergeResult ac_merge(GraphOracle& g, SddPartition& partition, CliqueId id,
                     const SddParams& params, Rng& rng) {
  // Frozen view of K: additions below never feed back into the tests.
  const std::vector<Vertex> members = partition.clique(id).members;
  const std::size_t k = members.size();
  const double ln = log_n(g.num_vertices());
  const double eps = params.eps;
  const std::size_t budget = capped_budget(params.c_merge * ln / eps, k);

  thread_local internal::StampSet scanned;
  thread_local internal::StampSet in_reach;
  scanned.reset(g.num_vertices());
  in_reach.reset(g.num_vertices());
  std::vector<Vertex> reach;  // N(D), distinct
  for (Vertex x : draw_members(members, budget, rng)) {
    if (!scanned.add(x)) continue;  // repeated draw of the same member
    for (Vertex y : g.neighbors(x)) {
      if (in_reach.add(y)) reach.push_back(y);
    }
  }
  std::sort(reach.begin(), reach.end());

  MergeResult result;
  if (internal::at_least(static_cast<double>(reach.size()),
                         params.c_fail * ln * static_cast<double>(k))) {
    result.failed = true;
    return result;
  }

  const auto tests = draw_members(members, budget, rng);
  const double kd = static_cast<double>(k);
  for (Vertex w : reach) {
    if (partition.label(w) == id) continue;
    const double dw = static_cast<double>(g.degree(w));
    if (!internal::at_least(dw, (1 - 2 * eps) * kd) ||
        !internal::at_most(dw, (1 + 2 * eps) * kd)) {
      continue;
    }
    std::size_t hits = 0;
    for (Vertex t : tests) hits += g.has_edge(w, t) ? 1 : 0;
    if (internal::at_least(static_cast<double>(hits),
                           (1 - 2 * eps) * static_cast<double>(tests.size()))) {
      result.added.push_back(w);
    }
  }
  for (Vertex w : result.added) {
    if (auto old = partition.clique_of(w)) result.donors.push_back(*old);
    partition.add_to_clique(id, w);
  }
  return result;
}

bool sparse_split_test(GraphOracle& g, Vertex v, const SddParams& params,
                       Rng& rng) {
  const std::size_t dv = g.degree(v);
  if (dv == 0) return true;
  const double eps = params.eps;
  const double raw = params.c_split * log_n(g.num_vertices()) / eps;

  if (static_cast<double>(dv) < raw) {
    // Small degree: decide the midpoint level deterministically.
    const DynGraph& graph = g.graph();
    std::uint64_t reads = dv;
    for (Vertex u : graph.neighbors(v)) reads += graph.degree(u);
    g.charge(reads);
    return exact_sparse_check(graph, v, params.split_lo * eps, params.eta0);
  }

  const std::size_t budget = capped_budget(raw, std::numeric_limits<std::size_t>::max());
  auto draw = [&](Vertex x, std::size_t count) {
    std::vector<Vertex> out(count);
    for (auto& y : out) y = g.sample_neighbor(x, rng);
    return out;
  };
  const auto sv = draw(v, std::min(budget, dv));
  const auto dset = draw(v, std::min(budget, dv));

  thread_local internal::StampSet in_union;
  std::size_t sparse_neighbors = 0;
  for (Vertex u : dset) {
    const std::size_t du = g.degree(u);
    const auto su = draw(u, std::min(budget, du));
    in_union.reset(g.num_vertices());
    std::size_t size = 0;
    std::size_t differing = 0;
    auto visit = [&](Vertex x) {
      if (!in_union.add(x)) return;
      ++size;
      const bool in_nu = x != u && g.has_edge(u, x);
      const bool in_nv = x != v && g.has_edge(v, x);
      differing += (in_nu != in_nv) ? 1 : 0;
    };
    for (Vertex x : sv) visit(x);
    for (Vertex x : su) visit(x);
    if (internal::at_least(static_cast<double>(differing),
                           params.eta0 * params.split_hi * eps *
                               static_cast<double>(size))) {
      ++sparse_neighbors;
    }
  }
  return internal::at_least(
      static_cast<double>(sparse_neighbors),
      params.eta0 * params.split_lo * eps * static_cast<double>(dset.size()));
}

}  // namespace dyncc
