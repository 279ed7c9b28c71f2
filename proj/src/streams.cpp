#include "dyncc/streams.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "absl/container/flat_hash_map.h"

namespace dyncc {

void SbmSpec::validate() const {
  if (n == 0) throw Error(ErrorCode::kInvalidSpec, "sbm needs n >= 1");
  if (k == 0 || k > n) throw Error(ErrorCode::kInvalidSpec, "sbm needs 1 <= k <= n");
  if (!(q >= 0 && q <= p && p <= 1)) {
    throw Error(ErrorCode::kInvalidSpec, "sbm needs 0 <= q <= p <= 1");
  }
}

std::vector<Edge> sbm_generate(const SbmSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::bernoulli_distribution intra(spec.p);
  std::bernoulli_distribution inter(spec.q);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < spec.n; ++u) {
    for (Vertex v = u + 1; v < spec.n; ++v) {
      const bool same = spec.community(u) == spec.community(v);
      if (same ? intra(rng) : inter(rng)) edges.push_back({u, v});
    }
  }
  return edges;
}

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

bool parse_id(std::string_view token, std::uint64_t& out) {
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

EdgeList parse_snap_edgelist(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::map<std::uint64_t, Vertex> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    std::uint64_t u = 0, v = 0;
    if (!(tokens >> a >> b) || (tokens >> extra) || !parse_id(a, u) ||
        !parse_id(b, v)) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected two vertex ids");
    }
    ids.emplace(u, 0);
    ids.emplace(v, 0);
    if (u != v) raw.emplace_back(u, v);
  }
  EdgeList out;
  out.n = ids.size();
  Vertex next = 0;
  for (auto& [original, dense] : ids) dense = next++;
  out.edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    Vertex a = ids[u], b = ids[v];
    if (a > b) std::swap(a, b);
    out.edges.push_back({a, b});
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

EdgeList load_snap_edgelist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_snap_edgelist(in);
}

void StreamSpec::validate() const {
  if (!(p_del >= 0 && p_del <= 1)) {
    throw Error(ErrorCode::kInvalidSpec, "p_del must lie in [0,1]");
  }
  if (total_updates == 0) {
    throw Error(ErrorCode::kInvalidSpec, "total_updates must be >= 1");
  }
}

namespace {

void shuffle(std::vector<Edge>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(items[i - 1], items[pick(rng)]);
  }
}

/// Present edges with O(1) uniform sampling and removal.
class EdgePool {
 public:
  void add(Edge e) {
    slot_.emplace(edge_key(e.u, e.v), items_.size());
    items_.push_back(e);
  }
  void remove(Edge e) {
    const auto it = slot_.find(edge_key(e.u, e.v));
    const std::size_t i = it->second;
    slot_.erase(it);
    if (i + 1 != items_.size()) {
      items_[i] = items_.back();
      slot_[edge_key(items_[i].u, items_[i].v)] = i;
    }
    items_.pop_back();
  }
  Edge sample(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
    return items_[pick(rng)];
  }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Edge> items_;
  absl::flat_hash_map<std::uint64_t, std::size_t> slot_;
};

// Validates and canonicalizes: (min, max) pairs, sorted, duplicates dropped.
void prepare_edges(std::size_t n, std::vector<Edge>& edges) {
  if (edges.empty()) throw Error(ErrorCode::kEmptyInput, "stream needs at least one edge");
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::kOutOfRange, "edge endpoint >= n");
    if (e.u == e.v) throw Error(ErrorCode::kSelfLoop, "self-loop in edge list");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

class RandomStream final : public UpdateStream {
 public:
  RandomStream(std::size_t n, std::vector<Edge> edges, const StreamSpec& spec)
      : graph_(n), spec_(spec), rng_(spec.seed), coin_(spec.p_del) {
    spec.validate();
    prepare_edges(n, edges);
    shuffle(edges, rng_);
    queue_.assign(edges.begin(), edges.end());
  }

  std::optional<EdgeUpdate> next() override {
    if (emitted_ >= spec_.total_updates) return std::nullopt;
    const bool want_delete = coin_(rng_);
    EdgeUpdate up;
    // Each side falls back to the other when it has nothing to act on.
    if (!present_.empty() && (want_delete || queue_.empty())) {
      const Edge e = present_.sample(rng_);
      present_.remove(e);
      queue_.push_back(e);
      up = {UpdateOp::kDelete, e.u, e.v};
    } else {
      const Edge e = queue_.front();
      queue_.pop_front();
      present_.add(e);
      up = {UpdateOp::kInsert, e.u, e.v};
    }
    graph_.apply(up);
    ++emitted_;
    return up;
  }

  const DynGraph& graph() const override { return graph_; }

 private:
  DynGraph graph_;
  StreamSpec spec_;
  Rng rng_;
  std::bernoulli_distribution coin_;
  std::deque<Edge> queue_;  // absent edges, next insertion first
  EdgePool present_;
};

class TargetedStream final : public UpdateStream {
 public:
  TargetedStream(std::size_t n, std::vector<Edge> edges, const StreamSpec& spec,
                 ClusteringFn clustering_fn)
      : graph_(n), spec_(spec), rng_(spec.seed), coin_(spec.p_del),
        clustering_fn_(std::move(clustering_fn)) {
    spec.validate();
    prepare_edges(n, edges);
    shuffle(edges, rng_);
    fill_ = std::move(edges);
  }

  std::optional<EdgeUpdate> next() override {
    if (emitted_ >= spec_.total_updates) return std::nullopt;
    EdgeUpdate up;
    if (fill_pos_ < fill_.size()) {
      const Edge e = fill_[fill_pos_++];
      up = {UpdateOp::kInsert, e.u, e.v};
    } else {
      if (batch_empty() && !start_batch()) return std::nullopt;
      const bool want_delete = coin_(rng_);
      const bool take_delete =
          (want_delete && del_pos_ < deletions_.size()) ||
          ins_pos_ >= insertions_.size();
      if (take_delete) {
        const Edge e = deletions_[del_pos_++];
        up = {UpdateOp::kDelete, e.u, e.v};
      } else {
        const Edge e = insertions_[ins_pos_++];
        up = {UpdateOp::kInsert, e.u, e.v};
      }
    }
    graph_.apply(up);
    ++emitted_;
    return up;
  }

  const DynGraph& graph() const override { return graph_; }

 private:
  bool batch_empty() const {
    return del_pos_ >= deletions_.size() && ins_pos_ >= insertions_.size();
  }

  // Two largest clusters, ties to the smaller minimum member.
  bool start_batch() {
    const Clustering c = clustering_fn_(graph_);
    if (c.num_vertices() != graph_.num_vertices()) {
      throw Error(ErrorCode::kInvalidClustering, "clustering does not cover the graph");
    }
    std::map<ClusterId, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < c.assignment.size(); ++v) groups[c.assignment[v]].push_back(v);
    std::vector<const std::vector<Vertex>*> order;
    for (const auto& [id, members] : groups) order.push_back(&members);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
      if (a->size() != b->size()) return a->size() > b->size();
      return a->front() < b->front();
    });

    deletions_.clear();
    insertions_.clear();
    del_pos_ = ins_pos_ = 0;
    const std::size_t take = std::min<std::size_t>(2, order.size());
    for (std::size_t i = 0; i < take; ++i) {
      const auto& members = *order[i];
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (graph_.has_edge(members[a], members[b])) {
            deletions_.push_back({members[a], members[b]});
          }
        }
      }
    }
    if (take == 2) {
      for (Vertex a : *order[0]) {
        for (Vertex b : *order[1]) {
          if (!graph_.has_edge(a, b)) insertions_.push_back({std::min(a, b), std::max(a, b)});
        }
      }
    }
    shuffle(deletions_, rng_);
    shuffle(insertions_, rng_);
    return !batch_empty();
  }

  DynGraph graph_;
  StreamSpec spec_;
  Rng rng_;
  std::bernoulli_distribution coin_;
  ClusteringFn clustering_fn_;
  std::vector<Edge> fill_;
  std::size_t fill_pos_ = 0;
  std::vector<Edge> deletions_;
  std::vector<Edge> insertions_;
  std::size_t del_pos_ = 0;
  std::size_t ins_pos_ = 0;
};

}  // namespace

std::unique_ptr<UpdateStream> random_stream(std::size_t n, std::vector<Edge> edges,
                                            const StreamSpec& spec) {
  return std::make_unique<RandomStream>(n, std::move(edges), spec);
}

std::unique_ptr<UpdateStream> targeted_stream(std::size_t n, std::vector<Edge> edges,
                                              const StreamSpec& spec,
                                              ClusteringFn clustering_fn) {
  return std::make_unique<TargetedStream>(n, std::move(edges), spec,
                                          std::move(clustering_fn));
}

void write_updates(std::ostream& out, const std::vector<EdgeUpdate>& updates) {
  for (const auto& up : updates) {
    out << (up.op == UpdateOp::kInsert ? '+' : '-') << ' ' << up.u << ' ' << up.v
        << '\n';
  }
}

std::vector<EdgeUpdate> read_updates(std::istream& in) {
  std::vector<EdgeUpdate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::string sign, a, b, extra;
    std::uint64_t u = 0, v = 0;
    if (!(tokens >> sign >> a >> b) || (tokens >> extra) ||
        (sign != "+" && sign != "-") || !parse_id(a, u) || !parse_id(b, v) ||
        u > 0xffffffffu || v > 0xffffffffu) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected '+|- u v'");
    }
    out.push_back({sign == "+" ? UpdateOp::kInsert : UpdateOp::kDelete,
                   static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return out;
}

}  // namespace dyncc
