#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"
#include "quasiwide/steiner.hpp"
#include "quasiwide/uqw.hpp"

namespace quasiwide {

inline std::size_t count_components(const Graph& g) {
  BoundedBfs bfs(g);
  std::vector<char> seen(g.num_vertices(), 0);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (seen[v]) continue;
    ++count;
    for (Vertex w : bfs.run_from(v, static_cast<std::uint32_t>(g.num_vertices()))) seen[w] = 1;
  }
  return count;
}

/// Dominating (closed neighbourhoods) and inducing a connected subgraph.
/// The empty set qualifies only for the empty graph.
inline bool is_connected_dominating(const Graph& g, std::span<const Vertex> set) {
  const std::size_t n = g.num_vertices();
  if (set.empty()) return n == 0;
  VertexMask in(n, 0);
  for (Vertex v : set) {
    g.check(v);
    in[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) continue;
    auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex w) { return in[w]; })) return false;
  }
  VertexMask outside(n, 1);
  for (Vertex v : set) outside[v] = 0;
  BoundedBfs bfs(g);
  auto reached = bfs.run_from(set[0], static_cast<std::uint32_t>(n), &outside);
  std::vector<Vertex> distinct(set.begin(), set.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return reached.size() == distinct.size();
}

/// Exhaustive connected dominating set of size <= k (smallest sizes first).
inline std::optional<std::vector<Vertex>> brute_cds(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return std::vector<Vertex>{};
  std::vector<Vertex> pick;
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      pick.assign(idx.begin(), idx.end());
      if (is_connected_dominating(g, pick)) return pick;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

struct CdsStats {
  std::size_t nodes = 0;
  std::size_t uqw_branchings = 0;      // branched on the deletion set S
  std::size_t fallback_branchings = 0; // branched on N[u] because the split failed or was too small
  std::size_t uqw_failures = 0;        // splits that exceeded s_max
  std::size_t leaves = 0;
  std::size_t partitions = 0;          // complete partitions handed to the Steiner step
  std::size_t exchanges = 0;           // trees where a terminal was not a leaf
};

struct CdsOptions {
  std::optional<std::size_t> K_threshold;  // default 4 (k+1)^2
  CdsStats* stats = nullptr;
  /// Called before branching on a deletion set: (X_i, W_i, S).
  std::function<void(std::span<const Vertex>, std::span<const Vertex>, std::span<const Vertex>)> on_branch;
};

namespace detail {

inline std::vector<Vertex> closed_neighborhood(const Graph& g, Vertex v) {
  std::vector<Vertex> out(g.neighbors(v).begin(), g.neighbors(v).end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

inline std::vector<Vertex> intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class CdsSearch {
 public:
  CdsSearch(const Graph& g, std::size_t k, const UqwConfig& cfg, std::size_t K, CdsStats& stats,
            const CdsOptions& opts)
      : g_(g), k_(k), cfg_(cfg), K_(K), stats_(stats), opts_(opts), bfs_(g), mark_(g.num_vertices(), 0) {}

  std::optional<std::vector<Vertex>> run() {
    std::vector<Vertex> W(g_.num_vertices());
    for (std::size_t v = 0; v < W.size(); ++v) W[v] = static_cast<Vertex>(v);
    std::vector<Vertex> X;
    return node(X, W);
  }

 private:
  std::optional<std::vector<Vertex>> node(const std::vector<Vertex>& X, const std::vector<Vertex>& W) {
    ++stats_.nodes;
    const std::size_t i = X.size();
    if (W.empty() || i == k_ || W.size() < K_) return leaf(X, W);

    UqwResult split = uqw_split(g_, W, 2, k_ + 1, cfg_);
    if (!split.ok()) ++stats_.uqw_failures;
    std::vector<Vertex> branch;
    if (split.ok() && split.verified && split.B.size() >= k_ - i + 1) {
      // No vertex outside S dominates two members of B, so the remaining
      // k-i choices must include a vertex of S.
      ++stats_.uqw_branchings;
      if (opts_.on_branch) opts_.on_branch(X, W, split.S);
      std::set_difference(split.S.begin(), split.S.end(), X.begin(), X.end(), std::back_inserter(branch));
    } else {
      ++stats_.fallback_branchings;
      branch = closed_neighborhood(g_, W.front());
    }
    for (Vertex v : branch) {
      std::vector<Vertex> X2 = X;
      X2.insert(std::lower_bound(X2.begin(), X2.end(), v), v);
      std::vector<Vertex> W2;
      auto nv = closed_neighborhood(g_, v);
      std::set_difference(W.begin(), W.end(), nv.begin(), nv.end(), std::back_inserter(W2));
      if (auto found = node(X2, W2)) return found;
    }
    return std::nullopt;
  }

  std::optional<std::vector<Vertex>> leaf(const std::vector<Vertex>& X, const std::vector<Vertex>& W) {
    ++stats_.leaves;
    if (W.empty()) return connect(X, {}, {});
    if (X.size() >= k_) return std::nullopt;
    const std::size_t max_blocks = k_ - X.size();
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::vector<Vertex>> dominators;
    return assign(X, W, 0, max_blocks, blocks, dominators);
  }

  // Restricted-growth enumeration of partitions of W into at most
  // `max_blocks` blocks whose members share a dominator.
  std::optional<std::vector<Vertex>> assign(const std::vector<Vertex>& X, const std::vector<Vertex>& W,
                                            std::size_t pos, std::size_t max_blocks,
                                            std::vector<std::vector<Vertex>>& blocks,
                                            std::vector<std::vector<Vertex>>& dominators) {
    if (pos == W.size()) return connect(X, blocks, dominators);
    if (blocks.size() + new_blocks_needed(W, pos, blocks, dominators) > max_blocks) return std::nullopt;
    const Vertex w = W[pos];
    auto nw = closed_neighborhood(g_, w);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      auto narrowed = intersect_sorted(dominators[j], nw);
      if (narrowed.empty()) continue;
      std::swap(dominators[j], narrowed);
      blocks[j].push_back(w);
      auto found = assign(X, W, pos + 1, max_blocks, blocks, dominators);
      blocks[j].pop_back();
      std::swap(dominators[j], narrowed);
      if (found) return found;
    }
    if (blocks.size() < max_blocks) {
      blocks.push_back({w});
      dominators.push_back(nw);
      auto found = assign(X, W, pos + 1, max_blocks, blocks, dominators);
      blocks.pop_back();
      dominators.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  // Unassigned vertices that fit no open block and pairwise share no
  // dominator (distance > 2) each need a block of their own.
  std::size_t new_blocks_needed(const std::vector<Vertex>& W, std::size_t pos,
                                const std::vector<std::vector<Vertex>>& blocks,
                                const std::vector<std::vector<Vertex>>& dominators) {
    ++epoch_;
    std::size_t count = 0;
    for (std::size_t p = pos; p < W.size(); ++p) {
      const Vertex w = W[p];
      if (mark_[w] == epoch_) continue;
      bool fits = false;
      for (std::size_t j = 0; j < blocks.size() && !fits; ++j) {
        for (Vertex d : dominators[j]) {
          if (d == w || g_.adjacent_unchecked(d, w)) {
            fits = true;
            break;
          }
        }
      }
      if (fits) continue;
      ++count;
      for (Vertex v : bfs_.run_from(w, 2)) mark_[v] = epoch_;
    }
    return count;
  }

  // Steiner tree on X plus one terminal per block, the terminal hanging off
  // every common dominator of its block by a path of length 3.
  std::optional<std::vector<Vertex>> connect(const std::vector<Vertex>& X,
                                             const std::vector<std::vector<Vertex>>& blocks,
                                             const std::vector<std::vector<Vertex>>& dominators) {
    ++stats_.partitions;
    const std::size_t n = g_.num_vertices();
    const std::size_t l = blocks.size();
    if (X.empty() && l == 0) return std::nullopt;
    if (X.empty() && l == 1) return accept({dominators[0].front()});

    std::vector<Edge> edges = g_.edges();
    std::vector<Vertex> terminals = X;
    std::vector<Vertex> terminal_of_block;
    Vertex next = static_cast<Vertex>(n);
    for (std::size_t j = 0; j < l; ++j) {
      Vertex t = next++;
      terminal_of_block.push_back(t);
      terminals.push_back(t);
      for (Vertex d : dominators[j]) {
        Vertex p1 = next++;
        Vertex p2 = next++;
        edges.emplace_back(t, p1);
        edges.emplace_back(p1, p2);
        edges.emplace_back(p2, d);
      }
    }
    if (terminals.size() == 1) return accept(X);
    Graph augmented = Graph::from_edges(next, edges);
    SteinerTree tree;
    try {
      tree = dreyfus_wagner(augmented, terminals);
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
    std::vector<Vertex> kept;
    for (Vertex v : tree.vertices) {
      if (v < n) kept.push_back(v);
    }
    for (std::size_t j = 0; j < l; ++j) {
      std::size_t degree = 0;
      for (auto [a, b] : tree.edges) degree += (a == terminal_of_block[j] || b == terminal_of_block[j]) ? 1 : 0;
      if (degree != 1) {
        // The terminal joins two dominators; a block member does the same
        // job inside G.
        ++stats_.exchanges;
        Vertex y = blocks[j].front();
        kept.insert(std::lower_bound(kept.begin(), kept.end(), y), y);
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
      }
    }
    return accept(kept);
  }

  std::optional<std::vector<Vertex>> accept(std::vector<Vertex> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() > k_ || !is_connected_dominating(g_, set)) return std::nullopt;
    return set;
  }

  const Graph& g_;
  std::size_t k_;
  const UqwConfig& cfg_;
  std::size_t K_;
  CdsStats& stats_;
  const CdsOptions& opts_;
  BoundedBfs bfs_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t epoch_ = 0;
};

}  // namespace detail

/// Connected dominating set of size <= k, or nullopt.
///
/// Search tree over (X_i, W_i): while |W_i| >= K_threshold, a uqw split of
/// W_i at radius 2 yields a deletion set that every completion must touch,
/// and the search branches on it. Small W_i are finished by enumerating
/// partitions of W_i into dominated blocks and connecting X_i with one
/// dominator per block through a minimum Steiner tree.
inline std::optional<std::vector<Vertex>> cds_fpt(const Graph& g, std::size_t k, const UqwConfig& cfg = {},
                                                  const CdsOptions& opts = {}) {
  if (k < 1) throw InputError("cds_fpt: k must be >= 1");
  const std::size_t K = opts.K_threshold ? *opts.K_threshold : 4 * (k + 1) * (k + 1);
  if (K < k + 2) throw InputError("cds_fpt: K_threshold must be >= k+2");
  cfg.validate();
  const std::size_t n = g.num_vertices();
  if (n == 0) return std::vector<Vertex>{};
  if (n == 1) return std::vector<Vertex>{0};
  if (count_components(g) > 1) return std::nullopt;
  CdsStats local;
  CdsStats& stats = opts.stats ? *opts.stats : local;
  auto found = detail::CdsSearch(g, k, cfg, K, stats, opts).run();
  if (found && !is_connected_dominating(g, *found)) {
    throw InternalError("cds_fpt: returned set is not a connected dominating set");
  }
  return found;
}

}  // namespace quasiwide
