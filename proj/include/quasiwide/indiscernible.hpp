#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/formula.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

namespace detail {

inline void require_distinct(std::span<const Vertex> seq, const char* where) {
  std::vector<Vertex> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw InputError(std::string(where) + ": vertex " + std::to_string(*dup) + " repeated");
}

// Calls fn(indices) for every increasing k-tuple of 0..n-1.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Brute force: every formula of `delta` takes the same value on all
/// increasing tuples of `seq`.
inline bool is_indiscernible(const Graph& g, std::span<const Vertex> seq, const Delta& delta) {
  if (seq.empty()) throw InputError("is_indiscernible: empty sequence");
  detail::require_distinct(seq, "is_indiscernible");
  for (const auto& f : delta.formulas()) {
    const std::size_t k = f.arity();
    if (seq.size() < k) continue;
    std::vector<Vertex> args(k);
    int first = -1;
    bool uniform = detail::for_each_combination(seq.size(), k, [&](std::span<const std::size_t> idx) {
      for (std::size_t p = 0; p < k; ++p) args[p] = seq[idx[p]];
      int value = eval_formula(g, f, args) ? 1 : 0;
      if (first < 0) first = value;
      return value == first;
    });
    if (!uniform) return false;
  }
  return true;
}

/// Truth values of one formula over all increasing tuples drawn from a path
/// of length d. Layout depends on the tuple size (`dims`):
/// 0 -> one bit; 1 -> d bits; 2 -> row a2 holds a1 < a2, each row starting
/// on a word boundary; >= 3 -> colexicographic rank.
class TupleBits {
 public:
  TupleBits() = default;
  TupleBits(std::uint32_t dims, std::size_t path_len) : dims_(dims), len_(path_len), present_(true) {
    if (dims_ == 0) {
      words_.assign(1, 0);
    } else if (dims_ == 1) {
      words_.assign(word_count(len_), 0);
    } else if (dims_ == 2) {
      row_offset_.assign(len_ + 1, 0);
      for (std::size_t a2 = 0; a2 < len_; ++a2) row_offset_[a2 + 1] = row_offset_[a2] + word_count(a2);
      words_.assign(row_offset_[len_], 0);
    } else {
      words_.assign(word_count(detail::binomial(len_, dims_)), 0);
    }
  }

  /// No tuples at all; equal only to other absent signatures.
  static TupleBits absent() { return {}; }

  std::uint32_t dims() const { return dims_; }
  std::size_t path_length() const { return len_; }
  bool present() const { return present_; }

  void set(std::span<const std::size_t> tuple) {
    std::size_t bit = index(tuple);
    words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  bool get(std::span<const std::size_t> tuple) const {
    std::size_t bit = index(tuple);
    return (words_[bit / 64] >> (bit % 64)) & 1u;
  }
  void set_single() { words_.at(0) |= 1u; }
  void set_position(std::size_t a) { words_[a / 64] |= std::uint64_t{1} << (a % 64); }
  void set_pair(std::size_t a1, std::size_t a2) {
    words_[row_offset_[a2] + a1 / 64] |= std::uint64_t{1} << (a1 % 64);
  }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }
  /// Word range holding row a2 (dims == 2).
  std::span<std::uint64_t> row(std::size_t a2) {
    return {words_.data() + row_offset_[a2], words_.data() + row_offset_[a2 + 1]};
  }

  friend bool operator==(const TupleBits& a, const TupleBits& b) {
    return a.present_ == b.present_ && a.dims_ == b.dims_ && a.len_ == b.len_ && a.words_ == b.words_;
  }

  static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

 private:
  std::size_t index(std::span<const std::size_t> tuple) const {
    switch (dims_) {
      case 0:
        return 0;
      case 1:
        return tuple[0];
      case 2:
        return row_offset_[tuple[1]] * 64 + tuple[0];
      default: {
        std::size_t rank = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) rank += detail::binomial(tuple[i], i + 1);
        return rank;
      }
    }
  }

  std::uint32_t dims_ = 0;
  std::size_t len_ = 0;
  bool present_ = false;
  std::vector<std::uint64_t> words_;
  std::vector<std::size_t> row_offset_;
};

/// Computes the type signatures used by the type tree for one formula
/// phi(x1..xk) in refinement round m: the last m arguments are fixed to the
/// tail, argument k-m is the free vertex and the first k-m-1 arguments range
/// over increasing tuples of the tree path.
///
/// A node c only stores the tuples that end in c (the earlier ones agree
/// with its parent by construction), so `at_node` receives P(c), c and the
/// candidate u and returns the bits of phi(a.., c, u, tail) for every
/// increasing tuple a of P(c).
class TypeSignature {
 public:
  TypeSignature(const Graph& g, const FormulaId& f, std::uint32_t round, std::span<const Vertex> tail,
                bool naive = false)
      : g_(&g), f_(f), tail_(tail.begin(), tail.end()), naive_(naive) {
    if (round >= f.arity()) throw InputError("TypeSignature: round must be < arity");
    if (tail.size() != round) throw InputError("TypeSignature: tail length must equal the round");
    path_positions_ = f.arity() - round - 1;
    pos_.assign(g.num_vertices(), -1);
    stamp_.assign(g.num_vertices(), 0);
    hits_.assign(g.num_vertices() + 1, 0);
  }

  std::uint32_t path_positions() const { return path_positions_; }

  TupleBits at_root(Vertex u) {
    if (path_positions_ != 0) return TupleBits::absent();
    TupleBits bits(0, 0);
    args_.assign({u});
    args_.insert(args_.end(), tail_.begin(), tail_.end());
    if (eval_formula(*g_, f_, args_)) bits.set_single();
    return bits;
  }

  TupleBits at_node(std::span<const Vertex> path, Vertex c, Vertex u) {
    if (path_positions_ == 0) return TupleBits::absent();
    const std::uint32_t dims = path_positions_ - 1;
    if (naive_ || !f_.has_witness() || dims > 2) return naive(path, c, u);
    return fast(path, c, u);
  }

 private:
  TupleBits naive(std::span<const Vertex> path, Vertex c, Vertex u) {
    const std::uint32_t dims = path_positions_ - 1;
    TupleBits bits(dims, path.size());
    args_.assign(f_.arity(), 0);
    detail::for_each_combination(path.size(), dims, [&](std::span<const std::size_t> idx) {
      for (std::size_t p = 0; p < dims; ++p) args_[p] = path[idx[p]];
      args_[dims] = c;
      args_[dims + 1] = u;
      std::copy(tail_.begin(), tail_.end(), args_.begin() + dims + 2);
      if (eval_formula(*g_, f_, args_)) bits.set(idx);
      return true;
    });
    return bits;
  }

  struct Literal {
    Vertex vertex;
    bool positive;
  };

  bool ok_fixed(Vertex y) const {
    for (const auto& lit : fixed_) {
      if (g_->adjacent_unchecked(y, lit.vertex) != lit.positive) return false;
    }
    return true;
  }

  TupleBits fast(std::span<const Vertex> path, Vertex c, Vertex u) {
    const std::uint32_t dims = path_positions_ - 1;
    const std::size_t d = path.size();
    TupleBits bits(dims, d);
    if (dims > d) return bits;

    fixed_.clear();
    fixed_.push_back({c, f_.positive(dims)});
    fixed_.push_back({u, f_.positive(dims + 1)});
    for (std::size_t t = 0; t < tail_.size(); ++t) fixed_.push_back({tail_[t], f_.positive(dims + 2 + t)});
    const bool s0 = dims >= 1 && f_.positive(0);
    const bool s1 = dims >= 2 && f_.positive(1);

    for (std::size_t i = 0; i < d; ++i) pos_[path[i]] = static_cast<std::int64_t>(i);

    const Literal* pivot = nullptr;
    for (const auto& lit : fixed_) {
      if (lit.positive && (!pivot || g_->degree(lit.vertex) < g_->degree(pivot->vertex))) pivot = &lit;
    }
    if (pivot) {
      explicit_witnesses(bits, pivot->vertex, dims, d, s0, s1);
    } else {
      implicit_witnesses(bits, dims, d, s0, s1, path);
    }

    for (std::size_t i = 0; i < d; ++i) pos_[path[i]] = -1;
    return bits;
  }

  // Some fixed argument is positive: the witnesses form a short explicit list.
  void explicit_witnesses(TupleBits& bits, Vertex pivot, std::uint32_t dims, std::size_t d, bool s0, bool s1) {
    witnesses_.clear();
    for (Vertex y : g_->neighbors(pivot)) {
      if (ok_fixed(y)) witnesses_.push_back(y);
    }
    if (dims == 0) {
      if (!witnesses_.empty()) bits.set_single();
      return;
    }
    const std::size_t wc = TupleBits::word_count(d);
    traces_.assign(witnesses_.size() * wc, 0);
    for (std::size_t w = 0; w < witnesses_.size(); ++w) {
      for (Vertex z : g_->neighbors(witnesses_[w])) {
        std::int64_t p = pos_[z];
        if (p >= 0) traces_[w * wc + p / 64] |= std::uint64_t{1} << (p % 64);
      }
    }
    auto trace_bit = [&](std::size_t w, std::size_t p) { return (traces_[w * wc + p / 64] >> (p % 64)) & 1u; };
    if (dims == 1) {
      auto out = bits.words();
      for (std::size_t w = 0; w < witnesses_.size(); ++w) {
        for (std::size_t i = 0; i < wc; ++i) out[i] |= s0 ? traces_[w * wc + i] : ~traces_[w * wc + i];
      }
      mask_tail(out, d);
      return;
    }
    for (std::size_t a2 = 1; a2 < d; ++a2) {
      auto row = bits.row(a2);
      for (std::size_t w = 0; w < witnesses_.size(); ++w) {
        if (static_cast<bool>(trace_bit(w, a2)) != s1) continue;
        for (std::size_t i = 0; i < row.size(); ++i) row[i] |= s0 ? traces_[w * wc + i] : ~traces_[w * wc + i];
      }
      mask_tail(row, a2);
    }
  }

  // Every fixed argument is negative: witnesses are "all vertices not
  // adjacent to the fixed ones", handled by counting.
  void implicit_witnesses(TupleBits& bits, std::uint32_t dims, std::size_t d, bool s0, bool s1,
                          std::span<const Vertex> path) {
    ++epoch_;
    std::size_t banned = 0;
    for (const auto& lit : fixed_) {
      for (Vertex y : g_->neighbors(lit.vertex)) {
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          ++banned;
        }
      }
    }
    auto ok = [&](Vertex y) { return stamp_[y] != epoch_; };
    const std::size_t ok_count = g_->num_vertices() - banned;
    if (dims == 0) {
      if (ok_count > 0) bits.set_single();
      return;
    }
    ok_degree_.assign(d, 0);
    for (std::size_t a = 0; a < d; ++a) {
      for (Vertex y : g_->neighbors(path[a])) ok_degree_[a] += ok(y) ? 1 : 0;
    }
    if (dims == 1) {
      for (std::size_t a = 0; a < d; ++a) {
        bool value = s0 ? ok_degree_[a] > 0 : ok_count > ok_degree_[a];
        if (value) bits.set_position(a);
      }
      return;
    }
    if (s0 && s1) {
      for (std::size_t a2 = 1; a2 < d; ++a2) {
        for (Vertex y : g_->neighbors(path[a2])) {
          if (!ok(y)) continue;
          for (Vertex z : g_->neighbors(y)) {
            std::int64_t a1 = pos_[z];
            if (a1 >= 0 && static_cast<std::size_t>(a1) < a2) bits.set_pair(a1, a2);
          }
        }
      }
    } else if (s0 != s1) {
      // The positive position supplies the witnesses; the negative one
      // refutes the tuple only if it is adjacent to all of them.
      for (std::size_t a = 0; a < d; ++a) {
        std::size_t candidates = ok_degree_[a];
        if (candidates == 0) continue;
        touched_.clear();
        for (Vertex y : g_->neighbors(path[a])) {
          if (!ok(y)) continue;
          for (Vertex z : g_->neighbors(y)) {
            std::int64_t b = pos_[z];
            if (b < 0) continue;
            if (hits_[b]++ == 0) touched_.push_back(static_cast<std::size_t>(b));
          }
        }
        if (s0) {
          for (std::size_t b = a + 1; b < d; ++b) {
            if (hits_[b] != candidates) bits.set_pair(a, b);
          }
        } else {
          for (std::size_t b = 0; b < a; ++b) {
            if (hits_[b] != candidates) bits.set_pair(b, a);
          }
        }
        for (std::size_t b : touched_) hits_[b] = 0;
      }
    } else {
      for (std::size_t a2 = 1; a2 < d; ++a2) {
        for (std::size_t a1 = 0; a1 < a2; ++a1) {
          if (ok_count > ok_degree_[a1] + ok_degree_[a2] ||
              ok_count > ok_degree_[a1] + ok_degree_[a2] - common_ok_neighbors(path[a1], path[a2], ok)) {
            bits.set_pair(a1, a2);
          }
        }
      }
    }
  }

  template <class Ok>
  std::size_t common_ok_neighbors(Vertex a, Vertex b, Ok&& ok) const {
    auto na = g_->neighbors(a);
    auto nb = g_->neighbors(b);
    std::size_t i = 0, j = 0, count = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (nb[j] < na[i]) {
        ++j;
      } else {
        if (ok(na[i])) ++count;
        ++i;
        ++j;
      }
    }
    return count;
  }

  static void mask_tail(std::span<std::uint64_t> words, std::size_t bits) {
    if (words.empty()) return;
    std::size_t rem = bits % 64;
    if (rem != 0) words[words.size() - 1] &= (std::uint64_t{1} << rem) - 1;
  }

  const Graph* g_;
  FormulaId f_;
  std::vector<Vertex> tail_;
  bool naive_;
  std::uint32_t path_positions_ = 0;

  std::vector<Vertex> args_;
  std::vector<Literal> fixed_;
  std::vector<std::int64_t> pos_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<Vertex> witnesses_;
  std::vector<std::uint64_t> traces_;
  std::vector<std::size_t> ok_degree_;
  std::vector<std::size_t> hits_;
  std::vector<std::size_t> touched_;
};

/// Insertion tree over a vertex sequence. Each non-root node stores the
/// signature it realised when it was inserted; a new vertex descends while
/// some child carries its own signature and becomes a new child otherwise.
class TypeTree {
 public:
  static constexpr std::size_t kRoot = 0;
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Node {
    Vertex vertex = 0;
    std::size_t seq_index = kNone;
    std::size_t parent = kNone;
    std::size_t depth = 0;  // root has depth 0
    std::vector<std::size_t> children;
    TupleBits signature;
  };

  TypeTree() { nodes_.push_back(Node{}); }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t id) const { return nodes_.at(id); }

  std::size_t insert(Vertex v, std::size_t seq_index, TypeSignature& sig) {
    std::size_t cur = kRoot;
    path_.clear();
    while (true) {
      TupleBits bits = cur == kRoot ? sig.at_root(v) : sig.at_node(path_, nodes_[cur].vertex, v);
      std::size_t next = kNone;
      for (std::size_t child : nodes_[cur].children) {
        if (nodes_[child].signature == bits) {
          next = child;
          break;
        }
      }
      if (next == kNone) {
        Node fresh{v, seq_index, cur, nodes_[cur].depth + 1, {}, std::move(bits)};
        nodes_.push_back(std::move(fresh));
        std::size_t id = nodes_.size() - 1;
        nodes_[cur].children.push_back(id);
        if (deepest_ == kRoot || nodes_[id].depth > nodes_[deepest_].depth) deepest_ = id;
        return id;
      }
      if (cur != kRoot) path_.push_back(nodes_[cur].vertex);
      cur = next;
    }
  }

  /// Deepest node, earliest inserted among equals.
  std::size_t deepest() const { return deepest_; }

  /// Root-to-node vertex sequence, root excluded.
  std::vector<Vertex> branch(std::size_t id) const {
    std::vector<Vertex> out;
    for (std::size_t cur = id; cur != kRoot && cur != kNone; cur = nodes_[cur].parent) out.push_back(nodes_[cur].vertex);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Vertex> path_;
  std::size_t deepest_ = kRoot;
};

struct ExtractOptions {
  bool naive_signatures = false;  // evaluate every tuple directly (test oracle path)
};

namespace detail {

// One refinement round: insert everything but the m-element tail into a
// fresh type tree, keep the longest branch and re-append the tail.
inline std::vector<Vertex> refine_round(const Graph& g, const FormulaId& f, std::uint32_t round,
                                        std::span<const Vertex> seq, const ExtractOptions& opts) {
  const std::size_t body = seq.size() - round;
  std::span<const Vertex> tail = seq.subspan(body);
  TypeSignature sig(g, f, round, tail, opts.naive_signatures);
  TypeTree tree;
  for (std::size_t i = 0; i < body; ++i) tree.insert(seq[i], i, sig);
  std::vector<Vertex> out = tree.branch(tree.deepest());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace detail

/// Delta-indiscernible subsequence of `seq`. Formulas are handled in Delta
/// order, each through `arity` refinement rounds. The result may be shorter
/// than `m`; callers check the length themselves.
inline std::vector<Vertex> extract_indiscernible(const Graph& g, std::span<const Vertex> seq, const Delta& delta,
                                                 std::size_t m, const ExtractOptions& opts = {}) {
  if (m < 1) throw InputError("extract_indiscernible: m must be >= 1");
  detail::require_distinct(seq, "extract_indiscernible");
  for (Vertex v : seq) g.check(v);
  std::vector<Vertex> cur(seq.begin(), seq.end());
  for (const auto& f : delta.formulas()) {
    const std::uint32_t k = f.arity();
    for (std::uint32_t round = 0; round < k; ++round) {
      if (cur.size() < k) break;
      cur = detail::refine_round(g, f, round, cur, opts);
    }
  }
  return cur;
}

}  // namespace quasiwide
