#include <algorithm>

#include "dyncc/sdd.hpp"
#include "sdd_internal.hpp"

namespace dyncc {

using internal::at_least;

bool exact_sparse_check(const DynGraph& g, Vertex v, double eps_prime,
                        double eta0) {
  const std::size_t dv = g.degree(v);
  if (dv == 0) return true;
  const double level = eta0 * eps_prime;
  const double needed = level * static_cast<double>(dv);
  if (!internal::at_most(needed, static_cast<double>(dv))) return false;

  thread_local internal::StampSet in_nv;
  in_nv.reset(g.num_vertices());
  const auto nv = g.neighbors(v);
  for (Vertex x : nv) in_nv.insert(x);

  std::size_t hits = 0;
  std::size_t seen = 0;
  for (Vertex u : nv) {
    ++seen;
    const auto nu = g.neighbors(u);
    std::size_t common = 0;
    for (Vertex x : nu) common += in_nv.contains(x) ? 1 : 0;
    const double sym = static_cast<double>(dv + nu.size() - 2 * common);
    const double bar = level * static_cast<double>(std::max(dv, nu.size()));
    if (at_least(sym, bar)) {
      ++hits;
      if (at_least(static_cast<double>(hits), needed)) return true;
    }
    if (!at_least(static_cast<double>(hits + (dv - seen)), needed)) {
      return false;
    }
  }
  return at_least(static_cast<double>(hits), needed);
}

bool exact_dense_check(const DynGraph& g, std::span<const Vertex> clique,
                       double alpha) {
  if (clique.empty()) throw Error(ErrorCode::kEmptyClique, "empty vertex set");
  thread_local internal::StampSet in_k;
  in_k.reset(g.num_vertices());
  std::vector<Vertex> members;
  members.reserve(clique.size());
  for (Vertex v : clique) {
    g.degree(v);  // range check
    if (in_k.add(v)) members.push_back(v);
  }
  std::vector<internal::MemberCounts> counts;
  counts.reserve(members.size());
  for (Vertex v : members) {
    const auto nv = g.neighbors(v);
    std::size_t inside = 0;
    for (Vertex x : nv) inside += in_k.contains(x) ? 1 : 0;
    counts.push_back({static_cast<double>(nv.size()),
                      static_cast<double>(inside)});
  }
  return internal::dense_predicate(counts, alpha);
}

namespace {

// Index of the member furthest from satisfying the almost-clique bounds.
std::size_t worst_member(const DynGraph& g, const std::vector<Vertex>& members,
                         double alpha) {
  internal::StampSet in_k;
  in_k.reset(g.num_vertices());
  for (Vertex v : members) in_k.insert(v);
  const double k = static_cast<double>(members.size());
  std::size_t worst = 0;
  double worst_excess = -1e300;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto nv = g.neighbors(members[i]);
    std::size_t inside = 0;
    for (Vertex x : nv) inside += in_k.contains(x) ? 1 : 0;
    const double degree = static_cast<double>(nv.size());
    const double bound = alpha * std::max(k, degree);
    const double excess = std::max({k - 1 - static_cast<double>(inside) - bound,
                                    degree - static_cast<double>(inside) - bound,
                                    (1 - alpha) * degree - k});
    if (excess > worst_excess) {
      worst_excess = excess;
      worst = i;
    }
  }
  return worst;
}

}  // namespace

SddPartition static_sdd(const DynGraph& g, double eps) {
  const std::size_t n = g.num_vertices();
  SddPartition out(n);

  // Friend pairs: adjacent u, v with |N[u] xor N[v]| <= eps * max degree.
  std::vector<std::size_t> friends(n, 0);
  std::vector<Edge> friend_edges;
  internal::StampSet marked;
  for (Vertex u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    if (nu.empty()) continue;
    marked.reset(n);
    for (Vertex x : nu) marked.insert(x);
    for (Vertex v : nu) {
      if (v < u) continue;
      const auto nv = g.neighbors(v);
      std::size_t common = 0;
      for (Vertex x : nv) common += marked.contains(x) ? 1 : 0;
      // Closed neighborhoods of adjacent vertices share u and v themselves.
      const double closed_sym =
          static_cast<double>(nu.size() + nv.size() - 2 * common - 2);
      const double bar =
          eps * static_cast<double>(std::max(nu.size(), nv.size()));
      if (internal::at_most(closed_sym, bar)) {
        ++friends[u];
        ++friends[v];
        friend_edges.push_back({u, v});
      }
    }
  }

  std::vector<char> dense(n, 0);
  std::vector<std::uint32_t> dense_list;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    if (d > 0 && at_least(static_cast<double>(friends[v]),
                          (1 - eps) * static_cast<double>(d))) {
      dense[v] = 1;
      dense_list.push_back(v);
    }
  }

  internal::UnionFind uf(n);
  for (const Edge& e : friend_edges) {
    if (dense[e.u] && dense[e.v]) uf.unite(e.u, e.v);
  }
  std::vector<std::vector<Vertex>> components;
  for (const auto& component : internal::group_components(uf, dense_list)) {
    components.emplace_back(component.begin(), component.end());
  }
  // Non-dense vertices seeing nearly all of one component join it.
  std::vector<char> taken(dense);
  internal::StampSet in_c;
  std::vector<std::size_t> hits(n, 0);
  for (auto& members : components) {
    in_c.reset(n);
    std::vector<Vertex> touched;
    for (Vertex v : members) in_c.insert(v);
    for (Vertex v : members) {
      for (Vertex x : g.neighbors(v)) {
        if (taken[x] || in_c.contains(x)) continue;
        if (hits[x]++ == 0) touched.push_back(x);
      }
    }
    const double need = (1 - eps) * static_cast<double>(members.size());
    std::vector<Vertex> joined;
    for (Vertex x : touched) {
      if (at_least(static_cast<double>(hits[x]), need)) joined.push_back(x);
      hits[x] = 0;
    }
    members.insert(members.end(), joined.begin(), joined.end());
    std::sort(members.begin(), members.end());
    // Peel the worst offender until the bounds hold.
    while (!members.empty() && !exact_dense_check(g, members, eps)) {
      members.erase(members.begin() + worst_member(g, members, eps));
    }
    for (Vertex v : members) taken[v] = 1;
    if (!members.empty()) out.create_clique(members);
  }
  return out;
}

}  // namespace dyncc
