#include <algorithm>

#include "dyncc/sdd.hpp"
#include "sdd_internal.hpp"

namespace dyncc {

CliqueGenerationResult clique_generation(GraphOracle& g,
                                         SddPartition& partition, Vertex u,
                                         const SddParams& params, Rng& rng) {
  const CliqueId first_new = partition.next_id();
  const auto local = local_sdd(g, u, params, rng);

  CliqueGenerationResult result;
  std::vector<CliqueId> losers;
  auto relabel = [&](Vertex v) {
    const CliqueId old = partition.label(v);
    if (old != SddPartition::kSparse) losers.push_back(old);
    result.moved.push_back(v);
  };

  for (const auto& members : local.local_cliques) {
    const double k = static_cast<double>(members.size());
    std::vector<Vertex> valid;
    for (Vertex v : members) {
      if (internal::at_most(static_cast<double>(g.degree(v)),
                            (1 + 2 * params.eps) * k)) {
        valid.push_back(v);
      }
    }
    if (valid.empty() ||
        !internal::at_least(static_cast<double>(valid.size()),
                            (1 - params.eps) * k)) {
      continue;
    }
    for (Vertex v : valid) relabel(v);
    result.created.push_back(partition.create_clique(valid));
  }

  for (CliqueId id : result.created) {
    if (!partition.is_live(id)) continue;  // drained by an earlier merge
    const auto merged = ac_merge(g, partition, id, params, rng);
    if (merged.failed) {
      throw Error(ErrorCode::kMergeFail,
                  "merge test failed on clique " + std::to_string(id));
    }
    result.moved.insert(result.moved.end(), merged.added.begin(),
                        merged.added.end());
    losers.insert(losers.end(), merged.donors.begin(), merged.donors.end());
  }
  std::erase_if(result.created,
                [&](CliqueId id) { return !partition.is_live(id); });
  for (CliqueId id : result.created) partition.seal(id);

  std::sort(losers.begin(), losers.end());
  losers.erase(std::unique(losers.begin(), losers.end()), losers.end());
  for (CliqueId id : losers) {
    if (id < first_new) result.touched.push_back(id);
  }
  return result;
}

}  // namespace dyncc
