#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

struct SteinerTree {
  std::vector<Edge> edges;      // (u,v) with u < v, sorted
  std::vector<Vertex> vertices; // sorted; includes every terminal
  std::size_t cost = 0;
};

/// Minimum-edge tree spanning `terminals` (unit weights), by the
/// Dreyfus-Wagner subset dynamic program. Throws InfeasibleError when the
/// terminals are not in one component.
inline SteinerTree dreyfus_wagner(const Graph& g, std::span<const Vertex> terminals) {
  if (terminals.empty()) throw InputError("dreyfus_wagner: terminal set must be non-empty");
  std::vector<Vertex> T(terminals.begin(), terminals.end());
  for (Vertex t : T) g.check(t);
  std::sort(T.begin(), T.end());
  if (std::adjacent_find(T.begin(), T.end()) != T.end()) throw InputError("dreyfus_wagner: repeated terminal");
  if (T.size() > 20) throw InputError("dreyfus_wagner: too many terminals");

  const std::size_t n = g.num_vertices();
  {
    BoundedBfs bfs(g);
    bfs.run_from(T[0], static_cast<std::uint32_t>(n));
    for (Vertex t : T) {
      if (!bfs.reached(t)) {
        throw InfeasibleError("dreyfus_wagner: terminals " + std::to_string(T[0]) + " and " + std::to_string(t) +
                              " lie in different components");
      }
    }
  }
  SteinerTree out;
  if (T.size() == 1) {
    out.vertices = T;
    return out;
  }

  using Cost = std::uint32_t;
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  enum class Via : std::uint8_t { None, Leaf, Edge, Merge };
  struct Back {
    Via via = Via::None;
    std::uint32_t arg = 0;  // predecessor vertex for Edge, sub-mask for Merge
  };
  const std::size_t t = T.size();
  const std::size_t full = (std::size_t{1} << t) - 1;
  std::vector<Cost> dp((full + 1) * n, kInf);
  std::vector<Back> back((full + 1) * n);
  auto at = [n](std::size_t mask, Vertex v) { return mask * n + v; };

  std::vector<std::vector<Vertex>> bucket;
  // Unit-weight relaxation dp[mask][v] = min(dp[mask][u] + dist(u,v)).
  auto relax = [&](std::size_t mask) {
    bucket.assign(1, {});
    for (Vertex v = 0; v < n; ++v) {
      Cost c = dp[at(mask, v)];
      if (c >= kInf) continue;
      if (c >= bucket.size()) bucket.resize(c + 1);
      bucket[c].push_back(v);
    }
    for (Cost c = 0; c < bucket.size(); ++c) {
      for (std::size_t idx = 0; idx < bucket[c].size(); ++idx) {
        Vertex u = bucket[c][idx];
        if (dp[at(mask, u)] != c) continue;
        for (Vertex w : g.neighbors(u)) {
          if (dp[at(mask, w)] <= c + 1) continue;
          dp[at(mask, w)] = c + 1;
          back[at(mask, w)] = {Via::Edge, u};
          if (c + 1 >= bucket.size()) bucket.resize(c + 2);
          bucket[c + 1].push_back(w);
        }
      }
    }
  };

  for (std::size_t i = 0; i < t; ++i) {
    std::size_t mask = std::size_t{1} << i;
    dp[at(mask, T[i])] = 0;
    back[at(mask, T[i])] = {Via::Leaf, 0};
    relax(mask);
  }
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    const std::size_t low = mask & (~mask + 1);
    for (Vertex v = 0; v < n; ++v) {
      Cost best = dp[at(mask, v)];
      Back how = back[at(mask, v)];
      // Sub-masks containing the lowest bit, so each split is seen once.
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        Cost a = dp[at(sub, v)];
        Cost b = dp[at(mask ^ sub, v)];
        if (a >= kInf || b >= kInf) continue;
        if (a + b < best) {
          best = a + b;
          how = {Via::Merge, static_cast<std::uint32_t>(sub)};
        }
      }
      dp[at(mask, v)] = best;
      back[at(mask, v)] = how;
    }
    relax(mask);
  }

  const Vertex root = T[0];
  out.cost = dp[at(full, root)];
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, Vertex>> stack{{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    const Back& b = back[at(mask, v)];
    switch (b.via) {
      case Via::Leaf:
        break;
      case Via::Edge:
        edges.emplace_back(std::min<Vertex>(v, b.arg), std::max<Vertex>(v, b.arg));
        stack.emplace_back(mask, b.arg);
        break;
      case Via::Merge:
        stack.emplace_back(b.arg, v);
        stack.emplace_back(mask ^ b.arg, v);
        break;
      case Via::None:
        throw InternalError("dreyfus_wagner: missing back-pointer");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() != out.cost) {
    throw InternalError("dreyfus_wagner: reconstructed " + std::to_string(edges.size()) + " edges for cost " +
                        std::to_string(out.cost));
  }
  out.edges = std::move(edges);
  out.vertices = T;
  for (auto [u, v] : out.edges) {
    out.vertices.push_back(u);
    out.vertices.push_back(v);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  return out;
}

}  // namespace quasiwide
