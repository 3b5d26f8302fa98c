#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

/// Depth-bounded minor obtained by contracting disjoint balls.
///
/// Vertex ids of `graph`: 0..centers.size()-1 are the contracted balls in
/// center order, followed by the untouched base vertices in increasing id.
struct ContractedGraph {
  static constexpr Vertex kDropped = std::numeric_limits<Vertex>::max();

  std::uint32_t depth = 0;
  std::vector<Vertex> centers;
  std::vector<std::vector<Vertex>> ball_members;  // sorted base ids per contracted vertex
  std::vector<Vertex> untouched;                  // base id of graph vertex centers.size()+i
  std::vector<Vertex> image;                      // base id -> graph id, or kDropped
  Graph graph;

  std::size_t num_contracted() const { return centers.size(); }
  bool is_contracted(Vertex id) const { return id < centers.size(); }
  /// Base id of an untouched graph vertex.
  Vertex base_vertex(Vertex id) const {
    if (is_contracted(id)) throw InputError("base_vertex: vertex " + std::to_string(id) + " is a contracted ball");
    return untouched.at(id - centers.size());
  }
};

/// Contracts the depth-`depth` balls (taken in G - avoid) around `centers`.
/// Avoided vertices are never absorbed; they stay as untouched vertices
/// unless `drop_avoided` removes them from the minor altogether.
/// Throws PreconditionError naming two centers whose balls intersect.
inline ContractedGraph contract_balls(const Graph& g, std::span<const Vertex> centers, std::uint32_t depth,
                                      std::span<const Vertex> avoid, bool drop_avoided = false) {
  const std::size_t n = g.num_vertices();
  VertexMask blocked = make_mask(n, avoid);
  ContractedGraph out;
  out.depth = depth;
  out.centers.assign(centers.begin(), centers.end());
  out.image.assign(n, ContractedGraph::kDropped);

  constexpr Vertex kFree = ContractedGraph::kDropped;
  std::vector<Vertex> owner(n, kFree);
  BoundedBfs bfs(g);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    Vertex c = centers[i];
    g.check(c);
    if (blocked[c]) throw InputError("contract_balls: center " + std::to_string(c) + " is an avoided vertex");
    std::vector<Vertex> members;
    for (Vertex w : bfs.run_from(c, depth, &blocked)) {
      if (owner[w] != kFree) {
        throw PreconditionError("contract_balls: balls of centers " + std::to_string(centers[owner[w]]) + " and " +
                                std::to_string(c) + " intersect at vertex " + std::to_string(w));
      }
      owner[w] = static_cast<Vertex>(i);
      members.push_back(w);
    }
    std::sort(members.begin(), members.end());
    out.ball_members.push_back(std::move(members));
  }

  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] != kFree) {
      out.image[v] = owner[v];
    } else if (!(blocked[v] && drop_avoided)) {
      out.image[v] = static_cast<Vertex>(centers.size() + out.untouched.size());
      out.untouched.push_back(v);
    }
  }

  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    Vertex a = out.image[u];
    Vertex b = out.image[v];
    if (a == ContractedGraph::kDropped || b == ContractedGraph::kDropped || a == b) continue;
    edges.emplace_back(a, b);
  }
  out.graph = Graph::from_edges(centers.size() + out.untouched.size(), edges);
  return out;
}

}  // namespace quasiwide
