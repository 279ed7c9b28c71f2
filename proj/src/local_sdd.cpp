#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "absl/container/flat_hash_map.h"
#include "dyncc/sdd.hpp"
#include "sdd_internal.hpp"

namespace dyncc {

void SddParams::validate() const {
  if (!(eps > 0 && eps < 1)) {
    throw Error(ErrorCode::kInvalidSpec, "eps must lie in (0,1)");
  }
  for (double c : {eta0, c_merge, c_fail, c_split, c_local, split_hi, split_lo}) {
    if (!(c > 0)) {
      throw Error(ErrorCode::kInvalidSpec, "sampling constants must be > 0");
    }
  }
}

double log_n(std::size_t n) {
  return std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
}

std::size_t capped_budget(double x, std::size_t cap) {
  const double c = std::ceil(x);
  if (!(c >= 1)) return std::min<std::size_t>(1, cap);
  if (c >= static_cast<double>(cap)) return cap;
  return static_cast<std::size_t>(c);
}

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Neighborhood of one filtered vertex restricted to U. Exact rows carry the
// full bitset; sampled rows carry uniform draws from N(v) that landed in U.
struct Row {
  bool exact = true;
  std::vector<std::uint64_t> bits;
  std::vector<std::uint32_t> samples;
  double weight = 1.0;    // deg(v) / #draws for sampled rows
  double degree = 0.0;    // |N(v) ∩ U|, estimated for sampled rows
};

class LocalFrame {
 public:
  LocalFrame(GraphOracle& g, Vertex u, const SddParams& params, Rng& rng)
      : g_(g), params_(params), rng_(rng), eps_(params.eps / 2) {
    const std::size_t n = g.num_vertices();
    ln_ = log_n(n);
    const auto nu = g.neighbors(u);
    universe_.reserve(nu.size() + 1);
    universe_.push_back(u);
    universe_.insert(universe_.end(), nu.begin(), nu.end());
    std::sort(universe_.begin(), universe_.end());
    index_.reset(n);
    for (std::uint32_t i = 0; i < universe_.size(); ++i) index_.set(universe_[i], i);
    words_ = (universe_.size() + 63) / 64;
  }

  LocalSddResult run() {
    filter();
    build_rows();
    auto components = dense_components();
    LocalSddResult out;
    out.universe = universe_;
    out.labels.assign(universe_.size(), kLocalSparse);
    for (const auto& comp : components) {
      if (!validate(comp)) continue;
      const auto local_id = static_cast<std::int32_t>(out.local_cliques.size());
      auto& members = out.local_cliques.emplace_back();
      for (std::uint32_t i : comp) {
        out.labels[i] = local_id;
        members.push_back(universe_[i]);
      }
    }
    for (std::uint32_t i = 0; i < universe_.size(); ++i) {
      if (!kept_[i]) out.filtered.push_back(universe_[i]);
    }
    return out;
  }

 private:
  bool in_u(Vertex x) const { return index_.get(x) != internal::LocalIndex::kAbsent; }

  // Keeps vertices with a large share of their neighbors inside U.
  void filter() {
    const std::size_t budget = capped_budget(params_.c_local * ln_, kUnbounded);
    kept_.assign(universe_.size(), 0);
    for (std::uint32_t i = 0; i < universe_.size(); ++i) {
      const Vertex v = universe_[i];
      const std::size_t d = g_.degree(v);
      if (d == 0) continue;
      std::size_t inside = 0;
      if (d <= budget) {
        for (Vertex x : g_.neighbors(v)) inside += in_u(x) ? 1 : 0;
        kept_[i] = internal::at_least(static_cast<double>(inside), d / 2.0);
      } else {
        for (std::size_t s = 0; s < budget; ++s) {
          inside += in_u(g_.sample_neighbor(v, rng_)) ? 1 : 0;
        }
        kept_[i] = internal::at_least(static_cast<double>(inside),
                                      2.0 * static_cast<double>(budget) / 3.0);
      }
    }
  }

  void set_bit(Row& row, std::uint32_t j) { row.bits[j / 64] |= 1ull << (j % 64); }
  static bool test_bit(const Row& row, std::uint32_t j) {
    return (row.bits[j / 64] >> (j % 64)) & 1u;
  }
  static std::size_t popcount(const std::vector<std::uint64_t>& bits) {
    std::size_t c = 0;
    for (auto w : bits) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  void build_rows() {
    const std::size_t size_u = universe_.size();
    const bool sampled = params_.mode == SddMode::kSampled;
    const std::size_t pair_budget =
        capped_budget(params_.c_split * ln_ / eps_, kUnbounded);
    rows_.assign(size_u, Row{});
    for (std::uint32_t i = 0; i < size_u; ++i) {
      if (!kept_[i]) continue;
      const Vertex v = universe_[i];
      Row& row = rows_[i];
      const std::size_t d = g_.degree(v);
      if (sampled && d > pair_budget) {
        row.exact = false;
        row.weight = static_cast<double>(d) / static_cast<double>(pair_budget);
        for (std::size_t s = 0; s < pair_budget; ++s) {
          const auto j = index_.get(g_.sample_neighbor(v, rng_));
          if (j != internal::LocalIndex::kAbsent) row.samples.push_back(j);
        }
        row.degree = row.weight * static_cast<double>(row.samples.size());
        continue;
      }
      row.bits.assign(words_, 0);
      if (sampled || d <= size_u) {
        for (Vertex x : g_.neighbors(v)) {
          const auto j = index_.get(x);
          if (j != internal::LocalIndex::kAbsent) set_bit(row, j);
        }
      } else {
        for (std::uint32_t j = 0; j < size_u; ++j) {
          if (j != i && g_.has_edge(v, universe_[j])) set_bit(row, j);
        }
      }
      row.degree = static_cast<double>(popcount(row.bits));
    }
  }

  // |N_U(a) \ N[b]| for adjacent a, b; exact or scaled from a's draws.
  double outside_of(std::uint32_t a, std::uint32_t b) {
    const Row& ra = rows_[a];
    const Row& rb = rows_[b];
    auto missing = [&](std::uint32_t x) {
      if (x == b) return false;
      if (rb.exact) return !test_bit(rb, x);
      return !g_.has_edge(universe_[b], universe_[x]);
    };
    if (ra.exact) {
      std::size_t c = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t word = ra.bits[w];
        while (word) {
          const auto x = static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
          word &= word - 1;
          c += missing(x) ? 1 : 0;
        }
      }
      return static_cast<double>(c);
    }
    std::size_t c = 0;
    for (std::uint32_t x : ra.samples) c += missing(x) ? 1 : 0;
    return ra.weight * static_cast<double>(c);
  }

  bool is_friend(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    if (auto it = friend_cache_.find(key); it != friend_cache_.end()) {
      return it->second;
    }
    const Row& ra = rows_[a];
    const Row& rb = rows_[b];
    double sym = 0;
    if (ra.exact && rb.exact) {
      // Closed rows: (N_U(a) + a) xor (N_U(b) + b).
      std::size_t c = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t wa = ra.bits[w];
        std::uint64_t wb = rb.bits[w];
        if (a / 64 == w) wa |= 1ull << (a % 64);
        if (b / 64 == w) wb |= 1ull << (b % 64);
        c += static_cast<std::size_t>(std::popcount(wa ^ wb));
      }
      sym = static_cast<double>(c);
    } else {
      sym = outside_of(a, b) + outside_of(b, a);
    }
    const bool verdict =
        internal::at_most(sym, eps_ * std::max(ra.degree, rb.degree));
    friend_cache_.emplace(key, verdict);
    return verdict;
  }

  std::vector<std::uint32_t> candidates(std::uint32_t i) {
    const Row& row = rows_[i];
    const std::size_t limit = params_.mode == SddMode::kSampled
                                  ? capped_budget(params_.c_local * ln_, kUnbounded)
                                  : kUnbounded;
    std::vector<std::uint32_t> all;
    if (row.exact) {
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t word = row.bits[w];
        while (word) {
          all.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(word)));
          word &= word - 1;
        }
      }
    } else {
      all = row.samples;
    }
    if (all.size() <= limit) return all;
    if (!row.exact) {
      all.resize(limit);  // draws are already uniform and independent
      return all;
    }
    std::vector<std::uint32_t> picked(limit);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (auto& x : picked) x = all[pick(rng_)];
    return picked;
  }

  std::vector<std::vector<std::uint32_t>> dense_components() {
    const auto size_u = static_cast<std::uint32_t>(universe_.size());
    std::vector<char> dense(size_u, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> friend_pairs;
    for (std::uint32_t i = 0; i < size_u; ++i) {
      if (!kept_[i]) continue;
      const auto cand = candidates(i);
      if (cand.empty()) continue;
      std::size_t friends = 0;
      for (std::uint32_t j : cand) {
        if (!kept_[j]) continue;  // filtered neighbors never count as friends
        if (is_friend(i, j)) {
          ++friends;
          friend_pairs.emplace_back(i, j);
        }
      }
      dense[i] = internal::at_least(static_cast<double>(friends),
                                    (1 - eps_) * static_cast<double>(cand.size()));
    }
    internal::UnionFind uf(size_u);
    for (auto [a, b] : friend_pairs) {
      if (dense[a] && dense[b]) uf.unite(a, b);
    }
    std::vector<std::uint32_t> dense_list;
    for (std::uint32_t i = 0; i < size_u; ++i) {
      if (dense[i]) dense_list.push_back(i);
    }
    return internal::group_components(uf, dense_list);
  }

  // Almost-clique check inside G[U] at level eps/2.
  bool validate(const std::vector<std::uint32_t>& comp) {
    std::vector<std::uint64_t> mask(words_, 0);
    for (std::uint32_t i : comp) mask[i / 64] |= 1ull << (i % 64);
    std::vector<internal::MemberCounts> counts;
    counts.reserve(comp.size());
    for (std::uint32_t i : comp) {
      const Row& row = rows_[i];
      double inside = 0;
      if (row.exact) {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          c += static_cast<std::size_t>(std::popcount(row.bits[w] & mask[w]));
        }
        inside = static_cast<double>(c);
      } else {
        std::size_t c = 0;
        for (std::uint32_t x : row.samples) c += (mask[x / 64] >> (x % 64)) & 1u;
        inside = std::min(row.weight * static_cast<double>(c),
                          static_cast<double>(comp.size() - 1));
      }
      counts.push_back({row.degree, inside});
    }
    return internal::dense_predicate(counts, eps_);
  }

  GraphOracle& g_;
  const SddParams& params_;
  Rng& rng_;
  double eps_;
  double ln_ = 0;
  std::vector<Vertex> universe_;
  internal::LocalIndex index_;
  std::size_t words_ = 0;
  std::vector<char> kept_;
  std::vector<Row> rows_;
  absl::flat_hash_map<std::uint64_t, bool> friend_cache_;
};

}  // namespace

LocalSddResult local_sdd(GraphOracle& g, Vertex u, const SddParams& params,
                         Rng& rng) {
  LocalFrame frame(g, u, params, rng);
  return frame.run();
}

}  // namespace dyncc
