#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

/// Distance with a dedicated "beyond the cutoff" state; never a large integer.
using Distance = std::optional<std::uint32_t>;

inline std::string to_string(const Distance& d) { return d ? std::to_string(*d) : std::string("INF"); }

/// Per-vertex flag vector; true entries are removed from the graph.
using VertexMask = std::vector<char>;

inline VertexMask make_mask(std::size_t n, std::span<const Vertex> vertices) {
  VertexMask mask(n, 0);
  for (Vertex v : vertices) {
    if (v >= n) throw InputError("vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

/// Reusable multi-source BFS truncated at a depth. Epoch stamping keeps
/// repeated runs on the same graph O(size of the explored ball).
class BoundedBfs {
 public:
  explicit BoundedBfs(const Graph& g) : g_(&g), stamp_(g.num_vertices(), 0), dist_(g.num_vertices(), 0) {}

  /// Explores G minus `blocked` (when given) from `sources`; blocked
  /// sources are skipped. Returns the reached vertices in BFS order.
  std::span<const Vertex> run(std::span<const Vertex> sources, std::uint32_t depth,
                              const VertexMask* blocked = nullptr) {
    ++epoch_;
    visited_.clear();
    for (Vertex s : sources) {
      g_->check(s);
      if (blocked && (*blocked)[s]) continue;
      if (stamp_[s] == epoch_) continue;
      stamp_[s] = epoch_;
      dist_[s] = 0;
      visited_.push_back(s);
    }
    for (std::size_t head = 0; head < visited_.size(); ++head) {
      Vertex u = visited_[head];
      if (dist_[u] == depth) continue;
      for (Vertex w : g_->neighbors(u)) {
        if (stamp_[w] == epoch_) continue;
        if (blocked && (*blocked)[w]) continue;
        stamp_[w] = epoch_;
        dist_[w] = dist_[u] + 1;
        visited_.push_back(w);
      }
    }
    return visited_;
  }

  std::span<const Vertex> run_from(Vertex source, std::uint32_t depth, const VertexMask* blocked = nullptr) {
    return run(std::span<const Vertex>(&source, 1), depth, blocked);
  }

  bool reached(Vertex v) const { return stamp_[v] == epoch_; }
  Distance distance(Vertex v) const { return reached(v) ? Distance(dist_[v]) : std::nullopt; }

 private:
  const Graph* g_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint32_t> dist_;
  std::vector<Vertex> visited_;
  std::uint64_t epoch_ = 0;
};

/// Multi-source distances of every vertex within `depth` of `sources`.
inline std::map<Vertex, std::uint32_t> bfs_limited(const Graph& g, std::span<const Vertex> sources,
                                                   std::uint32_t depth) {
  if (sources.empty()) throw InputError("bfs_limited: empty source set");
  BoundedBfs bfs(g);
  std::map<Vertex, std::uint32_t> out;
  for (Vertex v : bfs.run(sources, depth)) out.emplace(v, *bfs.distance(v));
  return out;
}

struct DistanceVector {
  std::vector<Distance> entries;
  std::uint32_t cap = 0;

  friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
  friend auto operator<=>(const DistanceVector& a, const DistanceVector& b) {
    if (auto c = a.cap <=> b.cap; c != 0) return c;
    return std::lexicographical_compare_three_way(a.entries.begin(), a.entries.end(), b.entries.begin(),
                                                  b.entries.end());
  }
};

inline DistanceVector distance_vector(const Graph& g, Vertex v, std::span<const Vertex> anchors,
                                      std::uint32_t cap) {
  g.check(v);
  std::vector<Vertex> sorted(anchors.begin(), anchors.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("distance_vector: anchors must be duplicate-free");
  }
  BoundedBfs bfs(g);
  bfs.run_from(v, cap);
  DistanceVector out{{}, cap};
  out.entries.reserve(anchors.size());
  for (Vertex a : anchors) {
    g.check(a);
    out.entries.push_back(bfs.distance(a));
  }
  return out;
}

/// True iff all distinct members of `set` are more than r apart in
/// G - forbidden. Runs one depth-r BFS per member.
inline bool is_r_independent(const Graph& g, std::span<const Vertex> set, std::uint32_t r,
                             std::span<const Vertex> forbidden) {
  VertexMask blocked = make_mask(g.num_vertices(), forbidden);
  VertexMask member(g.num_vertices(), 0);
  for (Vertex b : set) {
    g.check(b);
    if (blocked[b]) {
      throw InputError("is_r_independent: vertex " + std::to_string(b) + " is both in the set and forbidden");
    }
    if (member[b]) throw InputError("is_r_independent: vertex " + std::to_string(b) + " repeated");
    member[b] = 1;
  }
  BoundedBfs bfs(g);
  for (Vertex b : set) {
    for (Vertex w : bfs.run_from(b, r, &blocked)) {
      if (w != b && member[w]) return false;
    }
  }
  return true;
}

}  // namespace quasiwide
