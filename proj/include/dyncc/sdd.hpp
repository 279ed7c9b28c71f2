#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyncc/dyngraph.hpp"
#include "dyncc/partition.hpp"

namespace dyncc {

enum class SddMode { kExact, kSampled };

/// Decomposition parameter and the sampling constants of the subroutines.
struct SddParams {
  double eps = 0.45;
  double eta0 = 1.0;
  double c_merge = 100.0;   // merge test: |D|, |T| = min(c_merge ln n / eps, |K|)
  double c_fail = 200.0;    // merge test fails when |N(D)| >= c_fail ln n |K|
  double c_split = 3000.0;  // split test: per-side sample budget c_split ln n / eps
  double c_local = 50.0;    // local decomposition: c_local ln n neighbor samples
  double split_hi = 41.5;   // sparse-neighbor threshold on the sampled union
  double split_lo = 40.0;   // sparse-neighbor fraction threshold on D(v)
  SddMode mode = SddMode::kExact;

  /// Throws kInvalidSpec when eps is outside (0,1) or a constant is <= 0.
  void validate() const;
};

/// Natural log of the vertex count, floored at ln 2 so budgets never vanish.
double log_n(std::size_t n);

/// ceil(x), clamped to [1, cap].
std::size_t capped_budget(double x, std::size_t cap);

// ---------------------------------------------------------------------------
// Exact checkers (measurement side; never charged as oracle operations).
// ---------------------------------------------------------------------------

/// True iff N(v) is empty, or at least eta0*eps_prime*deg(v) neighbors u have
/// |N(v) xor N(u)| >= eta0*eps_prime*max(deg u, deg v). Open neighborhoods.
bool exact_sparse_check(const DynGraph& g, Vertex v, double eps_prime,
                        double eta0 = 1.0);

/// Almost-clique test at level alpha. For every v in K:
///   |K \ N[v]| <= alpha*max(|K|, deg v),  |N(v) \ K| <= alpha*max(|K|, deg v),
/// and (1-alpha)*Delta(K) <= |K| <= (1+alpha)*(Delta(K)+1), the upper bound
/// waived for |K| <= 2. Delta(K) is the largest degree of a member in g.
bool exact_dense_check(const DynGraph& g, std::span<const Vertex> clique,
                       double alpha);

// ---------------------------------------------------------------------------
// Static and local decompositions.
// ---------------------------------------------------------------------------

/// Deterministic friend-edge decomposition of the whole graph.
SddPartition static_sdd(const DynGraph& g, double eps);

enum : std::int32_t { kLocalSparse = -1 };

struct LocalSddResult {
  std::vector<Vertex> universe;      // N[u], ascending vertex id
  std::vector<std::int32_t> labels;  // aligned with universe; kLocalSparse or local clique index
  std::vector<std::vector<Vertex>> local_cliques;
  std::vector<Vertex> filtered;      // U members rejected by the neighbor-sample filter
};

/// Decomposition of the induced subgraph on N[u] at parameter params.eps / 2.
LocalSddResult local_sdd(GraphOracle& g, Vertex u, const SddParams& params,
                         Rng& rng);

// ---------------------------------------------------------------------------
// Sampled subroutines.
// ---------------------------------------------------------------------------

struct MergeResult {
  bool failed = false;
  std::vector<Vertex> added;
  std::vector<CliqueId> donors;  // prior cliques of the added vertices
};

/// Grows clique `id` with outside vertices that look like members.
MergeResult ac_merge(GraphOracle& g, SddPartition& partition, CliqueId id,
                     const SddParams& params, Rng& rng);

/// True when v should be declared sparse.
bool sparse_split_test(GraphOracle& g, Vertex v, const SddParams& params,
                       Rng& rng);

struct CliqueGenerationResult {
  std::vector<CliqueId> created;      // new live cliques, formation order
  std::vector<CliqueId> touched;      // pre-existing cliques that lost members
  std::vector<Vertex> moved;          // vertices relabeled by this call
};

/// Local clique formation around u followed by the merge test on every newly
/// formed clique. Throws kMergeFail if a merge test fails.
CliqueGenerationResult clique_generation(GraphOracle& g,
                                         SddPartition& partition, Vertex u,
                                         const SddParams& params, Rng& rng);

}  // namespace dyncc
