#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dyncc/dyngraph.hpp"

namespace dyncc {

using CliqueId = std::uint32_t;

struct CliqueRecord {
  CliqueId id = 0;
  std::vector<Vertex> members;
  std::size_t k_formed = 0;  // member count when formation completed
  std::size_t removed = 0;   // members lost since formation
  bool alive = false;
};

/// Vertex labeling into sparse vertices and almost-cliques.
///
/// Clique ids are handed out monotonically and never reused. A clique whose
/// last member leaves is retired on the spot, so every live clique is
/// non-empty. Member lists support O(1) removal and uniform sampling.
class SddPartition {
 public:
  static constexpr CliqueId kSparse = std::numeric_limits<CliqueId>::max();

  explicit SddPartition(std::size_t n);

  std::size_t num_vertices() const noexcept { return label_.size(); }

  bool is_sparse(Vertex v) const { return label_.at(v) == kSparse; }
  /// kSparse for sparse vertices.
  CliqueId label(Vertex v) const { return label_.at(v); }
  std::optional<CliqueId> clique_of(Vertex v) const {
    const CliqueId id = label_.at(v);
    if (id == kSparse) return std::nullopt;
    return id;
  }

  bool is_live(CliqueId id) const {
    return id < cliques_.size() && cliques_[id].alive;
  }
  const CliqueRecord& clique(CliqueId id) const;
  std::size_t num_live_cliques() const noexcept { return live_count_; }
  std::vector<CliqueId> live_cliques() const;
  CliqueId next_id() const noexcept {
    return static_cast<CliqueId>(cliques_.size());
  }

  /// Forms a new clique from `members`, detaching each one from its previous
  /// clique (whose removed counter grows). k_formed = |members|.
  CliqueId create_clique(std::span<const Vertex> members);

  /// Moves v into clique `id`; a no-op when v is already there.
  void add_to_clique(CliqueId id, Vertex v);

  /// Relabels v as sparse; returns the clique it left, if any.
  std::optional<CliqueId> make_sparse(Vertex v);

  /// Marks formation complete: k_formed = current size, removed = 0.
  void seal(CliqueId id);

  /// Sends every remaining member to sparse and retires the id. Returns the
  /// former members.
  std::vector<Vertex> dismantle(CliqueId id);

  Vertex sample_member(CliqueId id, Rng& rng) const;

  /// Coverage, disjointness, label/member agreement, non-empty live cliques.
  bool is_consistent() const;

 private:
  CliqueRecord& live(CliqueId id);
  void detach(Vertex v);

  std::vector<CliqueId> label_;
  std::vector<std::uint32_t> slot_;  // index of v inside its clique's members
  std::vector<CliqueRecord> cliques_;
  std::size_t live_count_ = 0;
};

}  // namespace dyncc
