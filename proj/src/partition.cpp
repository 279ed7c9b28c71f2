#include "dyncc/partition.hpp"

#include <string>

namespace dyncc {

SddPartition::SddPartition(std::size_t n) : label_(n, kSparse), slot_(n, 0) {
  if (n == 0) throw Error(ErrorCode::kInvalidSize, "partition needs n >= 1");
}

const CliqueRecord& SddPartition::clique(CliqueId id) const {
  if (!is_live(id)) {
    throw Error(ErrorCode::kUnknownClique, "clique " + std::to_string(id));
  }
  return cliques_[id];
}

CliqueRecord& SddPartition::live(CliqueId id) {
  if (!is_live(id)) {
    throw Error(ErrorCode::kUnknownClique, "clique " + std::to_string(id));
  }
  return cliques_[id];
}

std::vector<CliqueId> SddPartition::live_cliques() const {
  std::vector<CliqueId> out;
  out.reserve(live_count_);
  for (const auto& rec : cliques_) {
    if (rec.alive) out.push_back(rec.id);
  }
  return out;
}

void SddPartition::detach(Vertex v) {
  const CliqueId old = label_[v];
  if (old == kSparse) return;
  auto& rec = cliques_[old];
  const std::uint32_t slot = slot_[v];
  const Vertex last = rec.members.back();
  rec.members[slot] = last;
  slot_[last] = slot;
  rec.members.pop_back();
  ++rec.removed;
  label_[v] = kSparse;
  if (rec.members.empty()) {
    rec.alive = false;
    --live_count_;
  }
}

CliqueId SddPartition::create_clique(std::span<const Vertex> members) {
  if (members.empty()) throw Error(ErrorCode::kEmptyClique, "no members");
  const CliqueId id = next_id();
  cliques_.push_back(CliqueRecord{id, {}, 0, 0, true});
  ++live_count_;
  for (Vertex v : members) add_to_clique(id, v);
  auto& rec = cliques_[id];
  rec.k_formed = rec.members.size();
  rec.removed = 0;
  return id;
}

void SddPartition::add_to_clique(CliqueId id, Vertex v) {
  live(id);
  if (label_.at(v) == id) return;
  detach(v);
  auto& rec = cliques_[id];
  slot_[v] = static_cast<std::uint32_t>(rec.members.size());
  rec.members.push_back(v);
  label_[v] = id;
}

std::optional<CliqueId> SddPartition::make_sparse(Vertex v) {
  const CliqueId old = label_.at(v);
  if (old == kSparse) return std::nullopt;
  detach(v);
  return old;
}

void SddPartition::seal(CliqueId id) {
  auto& rec = live(id);
  rec.k_formed = rec.members.size();
  rec.removed = 0;
}

std::vector<Vertex> SddPartition::dismantle(CliqueId id) {
  auto& rec = live(id);
  std::vector<Vertex> former = std::move(rec.members);
  rec.members.clear();
  for (Vertex v : former) label_[v] = kSparse;
  rec.alive = false;
  --live_count_;
  return former;
}

Vertex SddPartition::sample_member(CliqueId id, Rng& rng) const {
  const auto& rec = clique(id);
  std::uniform_int_distribution<std::size_t> pick(0, rec.members.size() - 1);
  return rec.members[pick(rng)];
}

bool SddPartition::is_consistent() const {
  std::size_t covered = 0;
  std::size_t live = 0;
  for (const auto& rec : cliques_) {
    if (!rec.alive) {
      if (!rec.members.empty()) return false;
      continue;
    }
    ++live;
    if (rec.members.empty()) return false;
    for (std::uint32_t i = 0; i < rec.members.size(); ++i) {
      const Vertex v = rec.members[i];
      if (v >= label_.size() || label_[v] != rec.id || slot_[v] != i) {
        return false;
      }
    }
    covered += rec.members.size();
  }
  std::size_t sparse = 0;
  for (CliqueId id : label_) {
    if (id == kSparse) {
      ++sparse;
    } else if (!is_live(id)) {
      return false;
    }
  }
  return live == live_count_ && covered + sparse == label_.size();
}

}  // namespace dyncc
