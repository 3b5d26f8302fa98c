#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

/// True iff every vertex lies within distance r of `dominators`.
inline bool is_r_dominating(const Graph& g, std::span<const Vertex> dominators, std::uint32_t r,
                            std::span<const Vertex> targets) {
  if (targets.empty()) return true;
  if (dominators.empty()) return false;
  BoundedBfs bfs(g);
  bfs.run(dominators, r);
  return std::all_of(targets.begin(), targets.end(), [&](Vertex v) { return bfs.reached(v); });
}

inline bool is_r_dominating(const Graph& g, std::span<const Vertex> dominators, std::uint32_t r) {
  std::vector<Vertex> all(g.num_vertices());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
  return is_r_dominating(g, dominators, r, all);
}

namespace detail {

class DrdsSearch {
 public:
  DrdsSearch(const Graph& g, std::uint32_t r, std::size_t k) : g_(g), r_(r), k_(k), bfs_(g) {
    const std::size_t n = g.num_vertices();
    balls_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      auto reached = bfs_.run_from(v, r);
      balls_[v].assign(reached.begin(), reached.end());
      std::sort(balls_[v].begin(), balls_[v].end());
    }
    covered_.assign(n, 0);
    blocked_.assign(n, 0);
  }

  std::optional<std::vector<Vertex>> run() {
    if (search(0)) return chosen_;
    return std::nullopt;
  }

 private:
  // Disjoint-ball packing: undominated vertices pairwise more than 2r apart
  // need distinct dominators. Stops counting once `limit` is exceeded.
  std::size_t packing_bound(std::size_t limit) {
    ++epoch_;
    std::size_t count = 0;
    for (Vertex v = 0; v < covered_.size(); ++v) {
      if (covered_[v] || blocked_[v] == epoch_) continue;
      if (++count > limit) return count;
      for (Vertex w : bfs_.run_from(v, 2 * r_)) blocked_[w] = epoch_;
    }
    return count;
  }

  bool search(Vertex from) {
    Vertex u = from;
    while (u < covered_.size() && covered_[u]) ++u;
    if (u == covered_.size()) return true;
    if (chosen_.size() == k_) return false;
    if (packing_bound(k_ - chosen_.size()) > k_ - chosen_.size()) return false;
    for (Vertex c : balls_[u]) {
      chosen_.push_back(c);
      for (Vertex w : balls_[c]) ++covered_[w];
      bool found = search(u);
      for (Vertex w : balls_[c]) --covered_[w];
      if (found) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  std::uint32_t r_;
  std::size_t k_;
  BoundedBfs bfs_;
  std::vector<std::vector<Vertex>> balls_;
  std::vector<std::uint32_t> covered_;
  std::vector<std::uint64_t> blocked_;
  std::uint64_t epoch_ = 0;
  std::vector<Vertex> chosen_;
};

}  // namespace detail

/// Distance-r dominating set of size <= k, or nullopt. Branches on the
/// r-ball of the smallest undominated vertex (candidates by increasing id)
/// and prunes with a disjoint-ball packing bound.
inline std::optional<std::vector<Vertex>> exact_drds(const Graph& g, std::uint32_t r, std::size_t k) {
  if (r < 1) throw InputError("exact_drds: r must be >= 1");
  auto found = detail::DrdsSearch(g, r, k).run();
  if (found) std::sort(found->begin(), found->end());
  return found;
}

}  // namespace quasiwide
