#pragma once

// Reference implementations used only by the tests. They work on a dense
// adjacency matrix built straight from the edge list and share no code with
// the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "quasiwide/graph.hpp"

namespace oracle {

using quasiwide::Edge;
using quasiwide::Vertex;

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct Dense {
  std::size_t n = 0;
  std::vector<std::vector<char>> adj;

  Dense() = default;
  Dense(std::size_t n_, const std::vector<Edge>& edges) : n(n_), adj(n_, std::vector<char>(n_, 0)) {
    for (auto [u, v] : edges) {
      if (u == v) continue;
      adj[u][v] = adj[v][u] = 1;
    }
  }
  explicit Dense(const quasiwide::Graph& g) : Dense(g.num_vertices(), g.edges()) {}

  bool edge(Vertex u, Vertex v) const { return adj[u][v] != 0; }
};

/// Unbounded single-source distances avoiding `removed` (kInf when unreachable).
inline std::vector<std::uint32_t> distances(const Dense& d, Vertex s, const std::vector<char>& removed = {}) {
  std::vector<std::uint32_t> dist(d.n, kInf);
  auto gone = [&](Vertex v) { return !removed.empty() && removed[v]; };
  if (gone(s)) return dist;
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w = 0; w < d.n; ++w) {
      if (d.adj[u][w] && dist[w] == kInf && !gone(w)) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

inline std::vector<std::vector<std::uint32_t>> all_distances(const Dense& d) {
  std::vector<std::vector<std::uint32_t>> out;
  for (Vertex s = 0; s < d.n; ++s) out.push_back(distances(d, s));
  return out;
}

/// Calls fn(subset) for every subset of 0..n-1 of size <= k, smallest first;
/// stops when fn returns true.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Vertex> cur;
  for (std::size_t size = 0; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      cur.assign(idx.begin(), idx.end());
      if (fn(cur)) return true;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

inline bool dominates(const std::vector<std::vector<std::uint32_t>>& dist, const std::vector<Vertex>& X,
                      std::uint32_t r, const std::vector<Vertex>& targets) {
  for (Vertex t : targets) {
    bool hit = false;
    for (Vertex x : X) hit = hit || dist[x][t] <= r;
    if (!hit) return false;
  }
  return true;
}

inline std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

/// Whether some set of size <= k r-dominates the whole graph.
inline bool drds_exists(const Dense& d, std::uint32_t r, std::size_t k) {
  auto dist = all_distances(d);
  auto all = all_vertices(d.n);
  return for_each_subset(d.n, k, [&](const std::vector<Vertex>& X) { return dominates(dist, X, r, all); });
}

inline bool induces_connected(const Dense& d, const std::vector<Vertex>& set) {
  if (set.empty()) return true;
  std::vector<char> removed(d.n, 1);
  for (Vertex v : set) removed[v] = 0;
  auto dist = distances(d, set[0], removed);
  for (Vertex v : set) {
    if (dist[v] == kInf) return false;
  }
  return true;
}

/// Minimum Steiner tree size: fewest vertices of a connected induced
/// subgraph containing T, minus one. nullopt when T is split across components.
inline std::optional<std::size_t> steiner_cost(const Dense& d, const std::vector<Vertex>& T) {
  const std::size_t n = d.n;
  std::optional<std::size_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool has_all = true;
    for (Vertex t : T) has_all = has_all && ((mask >> t) & 1u);
    if (!has_all) continue;
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) set.push_back(v);
    }
    if (best && set.size() - 1 >= *best) continue;
    if (induces_connected(d, set)) best = set.size() - 1;
  }
  return best;
}

inline bool is_cds(const Dense& d, const std::vector<Vertex>& set) {
  if (set.empty()) return d.n == 0;
  for (Vertex v = 0; v < d.n; ++v) {
    bool hit = false;
    for (Vertex s : set) hit = hit || s == v || d.adj[s][v];
    if (!hit) return false;
  }
  return induces_connected(d, set);
}

inline std::optional<std::size_t> min_cds_size(const Dense& d, std::size_t k) {
  std::optional<std::size_t> out;
  for_each_subset(d.n, k, [&](const std::vector<Vertex>& X) {
    if (is_cds(d, X)) {
      out = X.size();
      return true;
    }
    return false;
  });
  return out;
}

/// G(n, p) edge list from a test-local engine.
inline std::vector<Edge> random_edges(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

/// Random graph in which every vertex has at most c earlier neighbours.
inline std::vector<Edge> random_degenerate_edges(std::mt19937_64& rng, std::size_t n, std::size_t c) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> count(0, std::min<std::size_t>(c, v));
    std::size_t want = count(rng);
    std::vector<Vertex> picked;
    std::uniform_int_distribution<Vertex> pick(0, v - 1);
    while (picked.size() < want) {
      Vertex u = pick(rng);
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) picked.push_back(u);
    }
    for (Vertex u : picked) edges.emplace_back(u, v);
  }
  return edges;
}

/// Random connected graph: a random tree plus extra G(n,p) edges.
inline std::vector<Edge> random_connected_edges(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<Edge> edges = random_edges(rng, n, p);
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  return edges;
}

}  // namespace oracle
