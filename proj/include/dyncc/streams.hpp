#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dyncc/clustering.hpp"
#include "dyncc/dyngraph.hpp"

namespace dyncc {

struct SbmSpec {
  std::size_t n = 250;
  std::size_t k = 4;
  double p = 0.95;  // intra-community edge probability
  double q = 0.05;  // inter-community edge probability
  std::uint64_t seed = 1;

  void validate() const;
  /// Community of v; communities are contiguous blocks whose sizes differ by
  /// at most one.
  std::size_t community(Vertex v) const { return v * k / n; }
};

/// Each pair is drawn independently in (u, v) lexicographic order.
std::vector<Edge> sbm_generate(const SbmSpec& spec);

struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;  // (min, max) pairs, ascending, no duplicates
};

/// Whitespace-separated "u v" pairs; '#' lines are comments. Self-loops and
/// duplicates (in either orientation) are dropped and ids are remapped to
/// 0..n-1 in ascending order of the original id. Every id that appears,
/// including on a self-loop line, becomes a vertex.
EdgeList parse_snap_edgelist(std::istream& in);
EdgeList load_snap_edgelist(const std::filesystem::path& path);

enum class StreamMode { kRandom, kTargeted };

struct StreamSpec {
  StreamMode mode = StreamMode::kRandom;
  double p_del = 0.2;
  std::size_t total_updates = 50'000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Pull-based update source. Every update is legal against the stream's own
/// copy of the graph at the moment it is produced.
class UpdateStream {
 public:
  virtual ~UpdateStream() = default;
  /// nullopt once the stream has ended.
  virtual std::optional<EdgeUpdate> next() = 0;
  virtual const DynGraph& graph() const = 0;
  std::size_t emitted() const noexcept { return emitted_; }

 protected:
  std::size_t emitted_ = 0;
};

/// Inserts follow a random permutation of `edges`; deletions pick a uniform
/// present edge. Deleted edges rejoin the back of the insertion queue. A
/// deletion due on an empty graph becomes an insertion, and an insertion due
/// while every edge is present becomes a deletion, so the stream always runs
/// for total_updates steps.
std::unique_ptr<UpdateStream> random_stream(std::size_t n,
                                            std::vector<Edge> edges,
                                            const StreamSpec& spec);

using ClusteringFn = std::function<Clustering(const DynGraph&)>;

/// First all edges in random order, then batches against the two largest
/// clusters reported by `clustering_fn`: delete their internal edges and
/// insert the missing pairs across them.
std::unique_ptr<UpdateStream> targeted_stream(std::size_t n,
                                              std::vector<Edge> edges,
                                              const StreamSpec& spec,
                                              ClusteringFn clustering_fn);

/// "+ u v" / "- u v" per line.
void write_updates(std::ostream& out, const std::vector<EdgeUpdate>& updates);
std::vector<EdgeUpdate> read_updates(std::istream& in);

}  // namespace dyncc
