#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasiwide/error.hpp"

namespace quasiwide {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Besides sorted adjacency lists the graph keeps a degeneracy order L:
/// every vertex has at most `degeneracy()` neighbours that precede it in L,
/// and those are stored separately so that an adjacency test only has to
/// search the smaller-neighbour list of the later endpoint.
///
/// L is the reverse of the greedy peeling sequence (repeatedly remove a
/// vertex of minimum remaining degree, smallest id first).
class Graph {
 public:
  Graph() = default;

  /// Duplicate edges and self-loops are dropped. Throws InputError when an
  /// endpoint is >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    g.offsets_.assign(n + 1, 0);
    std::vector<Edge> clean;
    clean.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
      }
      if (u == v) continue;
      clean.emplace_back(u, v);
      clean.emplace_back(v, u);
    }
    std::sort(clean.begin(), clean.end());
    clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
    for (auto [u, v] : clean) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.reserve(clean.size());
    for (auto [u, v] : clean) g.targets_.push_back(v);
    g.compute_order();
    return g;
  }

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  /// Neighbours of v that precede v in the degeneracy order, sorted by id.
  std::span<const Vertex> smaller_neighbors(Vertex v) const {
    check(v);
    return {small_targets_.data() + small_offsets_[v], small_targets_.data() + small_offsets_[v + 1]};
  }

  /// The degeneracy order L as a vertex sequence.
  std::span<const Vertex> order() const { return order_; }
  std::size_t position(Vertex v) const {
    check(v);
    return position_[v];
  }
  std::size_t degeneracy() const { return degeneracy_; }

  /// O(log c) through the smaller-neighbour list of the later endpoint.
  bool adjacent(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return adjacent_unchecked(u, v);
  }
  bool adjacent_unchecked(Vertex u, Vertex v) const {
    if (u == v) return false;
    if (position_[u] > position_[v]) std::swap(u, v);
    const Vertex* first = small_targets_.data() + small_offsets_[v];
    const Vertex* last = small_targets_.data() + small_offsets_[v + 1];
    return std::binary_search(first, last, u);
  }

  bool contains(Vertex v) const { return v < num_vertices(); }

  /// Edges (u,v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  void check(Vertex v) const {
    if (v >= num_vertices()) {
      throw InputError("vertex " + std::to_string(v) + " out of range (n=" +
                       std::to_string(num_vertices()) + ")");
    }
  }

 private:
  void compute_order() {
    const std::size_t n = num_vertices();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
      deg[v] = offsets_[v + 1] - offsets_[v];
      queue.emplace(deg[v], v);
    }
    std::vector<char> removed(n, 0);
    std::vector<Vertex> peel;
    peel.reserve(n);
    degeneracy_ = 0;
    while (!queue.empty()) {
      auto [d, v] = *queue.begin();
      queue.erase(queue.begin());
      degeneracy_ = std::max(degeneracy_, d);
      removed[v] = 1;
      peel.push_back(v);
      for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        Vertex w = targets_[i];
        if (removed[w]) continue;
        queue.erase({deg[w], w});
        --deg[w];
        queue.emplace(deg[w], w);
      }
    }
    order_.assign(peel.rbegin(), peel.rend());
    position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) position_[order_[i]] = i;

    small_offsets_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      std::size_t count = 0;
      for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        if (position_[targets_[i]] < position_[v]) ++count;
      }
      small_offsets_[v + 1] = small_offsets_[v] + count;
    }
    small_targets_.clear();
    small_targets_.reserve(small_offsets_[n]);
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        if (position_[targets_[i]] < position_[v]) small_targets_.push_back(targets_[i]);
      }
    }
  }

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<std::size_t> small_offsets_{0};
  std::vector<Vertex> small_targets_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
  std::size_t degeneracy_ = 0;
};

inline Graph build_graph(std::span<const Edge> edges, std::size_t n) { return Graph::from_edges(n, edges); }

inline Graph build_graph(std::initializer_list<Edge> edges, std::size_t n) {
  std::vector<Edge> list(edges);
  return Graph::from_edges(n, list);
}

inline bool adjacent(const Graph& g, Vertex u, Vertex v) { return g.adjacent(u, v); }

/// Induced subgraph on `keep` (which must be sorted and duplicate-free);
/// vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> index(g.num_vertices(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (Vertex w : g.neighbors(keep[i])) {
      if (index[w] != static_cast<Vertex>(-1) && i < index[w]) edges.emplace_back(static_cast<Vertex>(i), index[w]);
    }
  }
  return Graph::from_edges(keep.size(), edges);
}

}  // namespace quasiwide
