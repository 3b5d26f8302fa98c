#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/contract.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/formula.hpp"
#include "quasiwide/graph.hpp"
#include "quasiwide/indiscernible.hpp"

namespace quasiwide {

struct UqwConfig {
  std::size_t s_max = 16;
  double theta = 0.5;  // share of the sequence a vertex must see to be deleted
  std::optional<std::uint32_t> delta_k;  // fixed Delta_k arity for every round
  std::optional<std::uint32_t> max_rounds;
  bool check_rounds = false;  // assert the per-round independence invariant

  void validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw InputError("uqw: theta must lie in (0,1]");
    if (delta_k && *delta_k < 1) throw InputError("uqw: delta_k must be >= 1");
    if (max_rounds && *max_rounds < 1) throw InputError("uqw: max_rounds must be >= 1");
  }

  /// Arity for 0-based round `round`: 2*round+2 capped at 4 unless fixed.
  std::uint32_t arity(std::uint32_t round) const {
    if (delta_k) return *delta_k;
    return std::min<std::uint32_t>(2 * round + 2, 4);
  }
};

struct UqwRound {
  std::uint32_t index = 0;      // 1-based
  std::size_t seq_before = 0;   // length handed to the extraction
  std::size_t seq_after = 0;    // length of the extracted sequence
  std::vector<Vertex> s_added;  // sorted
  std::size_t contracted_n = 0; // vertices of the graph the round worked on
  std::size_t b_size = 0;       // |B_i| after pruning
};

/// Evidence of density: the extracted sequence and the vertex set that
/// would have had to be deleted.
struct UqwFailure {
  std::uint32_t round = 0;
  std::vector<Vertex> sequence;
  std::vector<Vertex> candidates;
};

struct UqwResult {
  std::vector<Vertex> S;  // sorted
  std::vector<Vertex> B;  // in sequence order
  std::vector<UqwRound> rounds;
  bool verified = false;
  std::optional<UqwFailure> failure;
  std::size_t prefix_used = 0;  // how much of A the successful run looked at

  bool ok() const { return !failure.has_value(); }
};

class UqwFailureError : public std::runtime_error {
 public:
  explicit UqwFailureError(UqwFailure failure)
      : std::runtime_error("uqw: deletion set exceeds s_max in round " + std::to_string(failure.round) + " (" +
                           std::to_string(failure.candidates.size()) + " candidates)"),
        failure_(std::move(failure)) {}
  const UqwFailure& failure() const { return failure_; }

 private:
  UqwFailure failure_;
};

/// Re-checks B ⊆ A, B ∩ S = ∅ and r-independence of B in G - S.
inline bool uqw_verify(const Graph& g, const UqwResult& res, std::span<const Vertex> A, std::uint32_t r) {
  if (!res.ok()) return false;
  std::vector<Vertex> a(A.begin(), A.end());
  std::sort(a.begin(), a.end());
  std::vector<Vertex> s(res.S.begin(), res.S.end());
  std::sort(s.begin(), s.end());
  std::vector<Vertex> b(res.B.begin(), res.B.end());
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end()) return false;
  for (Vertex v : b) {
    if (v >= g.num_vertices()) return false;
    if (!std::binary_search(a.begin(), a.end(), v)) return false;
    if (std::binary_search(s.begin(), s.end(), v)) return false;
  }
  for (Vertex v : s) {
    if (v >= g.num_vertices()) return false;
  }
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return is_r_independent(g, b, r, s);
}

namespace detail {

// Keeps an element iff no previously kept element lies within `radius`
// in G - removed.
inline std::vector<Vertex> prune_independent(const Graph& g, std::span<const Vertex> seq, std::uint32_t radius,
                                             const VertexMask& removed) {
  BoundedBfs bfs(g);
  std::vector<char> covered(g.num_vertices(), 0);
  std::vector<Vertex> kept;
  for (Vertex b : seq) {
    if (removed[b] || covered[b]) continue;
    kept.push_back(b);
    for (Vertex w : bfs.run_from(b, radius, &removed)) covered[w] = 1;
  }
  return kept;
}

// Vertices adjacent to more than theta*|seq| members of `seq`, optionally
// restricted by `eligible`.
template <class Eligible>
std::vector<Vertex> heavy_vertices(const Graph& g, std::span<const Vertex> seq, double theta, Eligible&& eligible) {
  std::vector<Vertex> out;
  if (seq.size() < 2) return out;
  std::vector<std::uint32_t> count(g.num_vertices(), 0);
  std::vector<Vertex> touched;
  for (Vertex b : seq) {
    for (Vertex w : g.neighbors(b)) {
      if (count[w]++ == 0) touched.push_back(w);
    }
  }
  const double bound = theta * static_cast<double>(seq.size());
  for (Vertex w : touched) {
    if (static_cast<double>(count[w]) > bound && eligible(w)) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Vertex>(i);
  return out;
}

inline void merge_into(std::vector<Vertex>& z, std::span<const Vertex> add) {
  z.insert(z.end(), add.begin(), add.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
}

inline UqwResult uqw_pass(const Graph& g, std::span<const Vertex> A, std::uint32_t r, std::size_t m,
                          const UqwConfig& cfg) {
  const std::uint32_t total_rounds = cfg.max_rounds ? *cfg.max_rounds : (r + 1) / 2;
  UqwResult res;
  std::vector<Vertex> Z;
  VertexMask removed(g.num_vertices(), 0);

  auto check_round = [&](std::uint32_t i, std::span<const Vertex> B) {
    if (cfg.check_rounds && !is_r_independent(g, B, 2 * i, Z)) {
      throw InternalError("uqw: round " + std::to_string(i) + " set is not " + std::to_string(2 * i) +
                          "-independent after deleting Z");
    }
  };

  // Round 1: indiscernible subsequence of A, delete the heavy vertices,
  // restore 2-independence.
  UqwRound first;
  first.index = 1;
  first.seq_before = A.size();
  first.contracted_n = g.num_vertices();
  std::vector<Vertex> B = extract_indiscernible(g, A, Delta::delta_k(cfg.arity(0)), m);
  first.seq_after = B.size();
  first.s_added = heavy_vertices(g, B, cfg.theta, [](Vertex) { return true; });
  if (first.s_added.size() > cfg.s_max) {
    res.failure = UqwFailure{1, B, first.s_added};
    res.rounds.push_back(std::move(first));
    return res;
  }
  merge_into(Z, first.s_added);
  for (Vertex z : Z) removed[z] = 1;
  B = prune_independent(g, B, 2, removed);
  first.b_size = B.size();
  res.rounds.push_back(std::move(first));
  check_round(1, B);

  for (std::uint32_t i = 1; i < total_rounds; ++i) {
    UqwRound round;
    round.index = i + 1;
    round.seq_before = B.size();
    if (B.size() <= 1) {
      round.seq_after = B.size();
      round.b_size = B.size();
      res.rounds.push_back(std::move(round));
      continue;
    }
    // Independent subsequence of the contracted balls.
    ContractedGraph cg = contract_balls(g, B, i, Z, true);
    std::vector<Vertex> picked = extract_indiscernible(cg.graph, iota_vertices(B.size()), Delta::edge_only(), m);
    std::vector<Vertex> centers;
    std::vector<Vertex> kept_ids;
    for (Vertex c : picked) {
      bool clash = false;
      for (Vertex d : kept_ids) clash = clash || cg.graph.adjacent_unchecked(c, d);
      if (clash) continue;
      kept_ids.push_back(c);
      centers.push_back(B[c]);
    }
    // Minor on the surviving centers only, so that the heavy vertices found
    // next are untouched base vertices.
    ContractedGraph cg2 = contract_balls(g, centers, i, Z, true);
    round.contracted_n = cg2.graph.num_vertices();
    std::vector<Vertex> C = extract_indiscernible(cg2.graph, iota_vertices(centers.size()),
                                                  Delta::delta_k(cfg.arity(i)), m);
    round.seq_after = C.size();
    std::vector<Vertex> heavy =
        heavy_vertices(cg2.graph, C, cfg.theta, [&](Vertex w) { return !cg2.is_contracted(w); });
    for (Vertex& w : heavy) w = cg2.base_vertex(w);
    std::sort(heavy.begin(), heavy.end());
    round.s_added = heavy;

    std::vector<Vertex> c_centers;
    for (Vertex c : C) c_centers.push_back(centers[c]);
    if (Z.size() + heavy.size() > cfg.s_max) {
      std::vector<Vertex> candidates = Z;
      merge_into(candidates, heavy);
      res.failure = UqwFailure{i + 1, c_centers, candidates};
      res.rounds.push_back(std::move(round));
      return res;
    }
    merge_into(Z, heavy);
    for (Vertex z : heavy) removed[z] = 1;
    B = prune_independent(g, c_centers, 2 * (i + 1), removed);
    round.b_size = B.size();
    res.rounds.push_back(std::move(round));
    check_round(i + 1, B);
  }

  if (B.size() > m) B.resize(m);
  res.S = Z;
  res.B = B;
  res.verified = is_r_independent(g, res.B, r, res.S);
  return res;
}

}  // namespace detail

/// Deletion set S and a subset B of A that is r-independent in G - S.
///
/// Each of the ceil(r/2) rounds extracts an indiscernible sequence (in the
/// depth-i minor obtained by contracting the current balls), deletes the
/// vertices adjacent to more than theta of it and prunes the sequence back
/// to 2i-independence. The extraction starts on a prefix of A of length
/// max(8m, 32) and doubles it while B stays shorter than m.
inline UqwResult uqw_split(const Graph& g, std::span<const Vertex> A, std::uint32_t r, std::size_t m,
                           const UqwConfig& cfg = {}) {
  cfg.validate();
  if (A.empty()) throw InputError("uqw_split: A must be non-empty");
  if (r < 1) throw InputError("uqw_split: r must be >= 1");
  if (m < 1) throw InputError("uqw_split: m must be >= 1");
  detail::require_distinct(A, "uqw_split");
  for (Vertex a : A) g.check(a);

  std::size_t prefix = std::min(A.size(), std::max<std::size_t>(8 * m, 32));
  while (true) {
    UqwResult res = detail::uqw_pass(g, A.first(prefix), r, m, cfg);
    res.prefix_used = prefix;
    if (!res.ok() || res.B.size() >= m || prefix == A.size()) return res;
    prefix = std::min(A.size(), 2 * prefix);
  }
}

}  // namespace quasiwide
