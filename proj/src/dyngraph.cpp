#include "dyncc/dyngraph.hpp"

#include <string>

namespace dyncc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSize: return "InvalidSize";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kMissingEdge: return "MissingEdge";
    case ErrorCode::kIsolatedVertex: return "IsolatedVertex";
    case ErrorCode::kEmptyClique: return "EmptyClique";
    case ErrorCode::kUnknownClique: return "UnknownClique";
    case ErrorCode::kMergeFail: return "MergeFail";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidClustering: return "InvalidClustering";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

DynGraph::DynGraph(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidSize, "graph needs n >= 1");
  adj_.resize(n);
  pos_.resize(n);
}

bool DynGraph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  // Probe the smaller index; both sides are symmetric.
  if (adj_[u].size() > adj_[v].size()) std::swap(u, v);
  return pos_[u].contains(v);
}

void DynGraph::insert_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw Error(ErrorCode::kSelfLoop, "self-loop at " + std::to_string(u));
  }
  if (pos_[u].contains(v)) {
    throw Error(ErrorCode::kDuplicateEdge,
                std::to_string(u) + "-" + std::to_string(v));
  }
  pos_[u].emplace(v, static_cast<std::uint32_t>(adj_[u].size()));
  adj_[u].push_back(v);
  pos_[v].emplace(u, static_cast<std::uint32_t>(adj_[v].size()));
  adj_[v].push_back(u);
  ++m_;
}

void DynGraph::remove_slot(Vertex owner, Vertex gone) {
  auto& seq = adj_[owner];
  auto& index = pos_[owner];
  auto it = index.find(gone);
  const std::uint32_t slot = it->second;
  index.erase(it);
  const Vertex last = seq.back();
  seq.pop_back();
  if (last != gone) {
    seq[slot] = last;
    index[last] = slot;
  }
}

void DynGraph::delete_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v || !pos_[u].contains(v)) {
    throw Error(ErrorCode::kMissingEdge,
                std::to_string(u) + "-" + std::to_string(v));
  }
  remove_slot(u, v);
  remove_slot(v, u);
  --m_;
}

void DynGraph::apply(const EdgeUpdate& update) {
  if (update.op == UpdateOp::kInsert) {
    insert_edge(update.u, update.v);
  } else {
    delete_edge(update.u, update.v);
  }
}

Vertex DynGraph::sample_neighbor(Vertex v, Rng& rng) const {
  check_vertex(v);
  const auto& seq = adj_[v];
  if (seq.empty()) {
    throw Error(ErrorCode::kIsolatedVertex,
                "vertex " + std::to_string(v) + " has no neighbors");
  }
  std::uniform_int_distribution<std::size_t> pick(0, seq.size() - 1);
  return seq[pick(rng)];
}

std::vector<Edge> DynGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

bool DynGraph::check_consistency() const {
  std::size_t degree_sum = 0;
  for (Vertex v = 0; v < adj_.size(); ++v) {
    const auto& seq = adj_[v];
    if (seq.size() != pos_[v].size()) return false;
    degree_sum += seq.size();
    for (std::uint32_t i = 0; i < seq.size(); ++i) {
      const Vertex w = seq[i];
      if (w == v || w >= adj_.size()) return false;
      auto it = pos_[v].find(w);
      if (it == pos_[v].end() || it->second != i) return false;
      if (!pos_[w].contains(v)) return false;
    }
  }
  return degree_sum == 2 * m_;
}

}  // namespace dyncc
