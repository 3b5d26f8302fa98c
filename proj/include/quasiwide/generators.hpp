#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

/// splitmix64. All seeded families draw from this generator and reduce
/// with `next() % bound`.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InputError("SplitMix64::below: bound must be positive");
    return next() % bound;
  }

 private:
  std::uint64_t state_;
};

enum class Family : std::uint8_t {
  Grid,
  Path,
  Cycle,
  Star,
  Stars,
  RandomBoundedDegree,
  RandomDegenerate,
  HalfGraph,
  Clique,
  Biclique,
  Edgeless,
};

/// A family plus its parameters, written `name(a,b,...)`, e.g. `grid(12,12)`
/// or `random_degenerate(200,2,7)` (the seed is the last argument of the
/// random families).
struct GenSpec {
  Family family = Family::Path;
  std::vector<std::uint64_t> params;

  std::string to_string() const;
  static GenSpec parse(std::string_view text);
};

namespace detail {

struct FamilyInfo {
  Family family;
  const char* name;
  std::size_t arity;
};

inline constexpr FamilyInfo kFamilies[] = {
    {Family::Grid, "grid", 2},
    {Family::Path, "path", 1},
    {Family::Cycle, "cycle", 1},
    {Family::Star, "star", 1},
    {Family::Stars, "stars", 2},
    {Family::RandomBoundedDegree, "random_bounded_degree", 3},
    {Family::RandomDegenerate, "random_degenerate", 3},
    {Family::HalfGraph, "halfgraph", 1},
    {Family::Clique, "clique", 1},
    {Family::Biclique, "biclique", 2},
    {Family::Edgeless, "edgeless", 1},
};

inline const FamilyInfo& family_info(Family f) {
  for (const auto& info : kFamilies) {
    if (info.family == f) return info;
  }
  throw InternalError("unknown graph family");
}

}  // namespace detail

inline std::string GenSpec::to_string() const {
  std::string out = detail::family_info(family).name;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(params[i]);
  }
  out += ')';
  return out;
}

inline GenSpec GenSpec::parse(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw InputError("graph spec '" + std::string(text) + "' must look like family(a,b,...)");
  }
  std::string_view name = text.substr(0, open);
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  GenSpec spec;
  const detail::FamilyInfo* info = nullptr;
  for (const auto& f : detail::kFamilies) {
    if (name == f.name) info = &f;
  }
  if (!info) throw InputError("unknown graph family '" + std::string(name) + "'");
  spec.family = info->family;
  std::size_t start = 0;
  while (start <= body.size() && !body.empty()) {
    auto comma = body.find(',', start);
    std::string_view field = body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    std::uint64_t value = 0;
    if (field.empty()) throw InputError("empty parameter in graph spec '" + std::string(text) + "'");
    for (char ch : field) {
      if (ch < '0' || ch > '9') throw InputError("non-numeric parameter in graph spec '" + std::string(text) + "'");
      value = value * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    spec.params.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (spec.params.size() != info->arity) {
    throw InputError("family '" + std::string(name) + "' takes " + std::to_string(info->arity) + " parameters");
  }
  return spec;
}

inline Graph grid_graph(std::size_t w, std::size_t h) {
  if (w < 1 || h < 1) throw InputError("grid: dimensions must be >= 1");
  std::vector<Edge> edges;
  auto id = [w](std::size_t x, std::size_t y) { return static_cast<Vertex>(y * w + x); };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
    }
  }
  return Graph::from_edges(w * h, edges);
}

inline Graph path_graph(std::size_t n) {
  if (n < 1) throw InputError("path: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

/// k disjoint copies of K_{1,p}; star j has center j*(p+1) followed by its leaves.
inline Graph stars_graph(std::size_t k, std::size_t p) {
  if (k < 1 || p < 1) throw InputError("stars: counts must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < k; ++j) {
    Vertex c = static_cast<Vertex>(j * (p + 1));
    for (std::size_t l = 1; l <= p; ++l) edges.emplace_back(c, static_cast<Vertex>(c + l));
  }
  return Graph::from_edges(k * (p + 1), edges);
}

inline Graph star_graph(std::size_t p) { return stars_graph(1, p); }

/// n*d random pair draws; a pair becomes an edge when it is new and both
/// endpoints still have degree < d.
inline Graph random_bounded_degree_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1) throw InputError("random_bounded_degree: n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < n * d; ++attempt) {
    Vertex u = static_cast<Vertex>(rng.below(n));
    Vertex v = static_cast<Vertex>(rng.below(n));
    if (u == v || deg[u] >= d || deg[v] >= d) continue;
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) continue;
    ++deg[u];
    ++deg[v];
    edges.push_back(e);
  }
  return Graph::from_edges(n, edges);
}

/// Vertex i picks min(c, i) distinct predecessors uniformly (rejection on
/// repeats), so the result is c-degenerate.
inline Graph random_degenerate_graph(std::size_t n, std::size_t c, std::uint64_t seed) {
  if (n < 1) throw InputError("random_degenerate: n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  std::vector<Vertex> picked;
  for (Vertex i = 1; i < n; ++i) {
    std::size_t want = std::min<std::size_t>(c, i);
    picked.clear();
    while (picked.size() < want) {
      Vertex p = static_cast<Vertex>(rng.below(i));
      if (std::find(picked.begin(), picked.end(), p) == picked.end()) picked.push_back(p);
    }
    for (Vertex p : picked) edges.emplace_back(p, i);
  }
  return Graph::from_edges(n, edges);
}

/// a_i = i-1 and b_j = k+j-1 for 1 <= i, j <= k, with a_i ~ b_j iff i <= j.
inline Graph halfgraph(std::size_t k) {
  if (k < 1) throw InputError("halfgraph: k must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i; j <= k; ++j) edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(k + j - 1));
  }
  return Graph::from_edges(2 * k, edges);
}

inline Graph clique_graph(std::size_t n) {
  if (n < 1) throw InputError("clique: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

/// Left side 0..s-1, right side s..s+t-1.
inline Graph biclique_graph(std::size_t s, std::size_t t) {
  if (s < 1 || t < 1) throw InputError("biclique: sides must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < t; ++b) edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(s + b));
  }
  return Graph::from_edges(s + t, edges);
}

inline Graph edgeless_graph(std::size_t n) {
  if (n < 1) throw InputError("edgeless: n must be >= 1");
  return Graph::from_edges(n, {});
}

inline Graph generate(const GenSpec& spec) {
  const auto& p = spec.params;
  if (p.size() != detail::family_info(spec.family).arity) throw InputError("wrong parameter count for " + spec.to_string());
  switch (spec.family) {
    case Family::Grid:
      return grid_graph(p[0], p[1]);
    case Family::Path:
      return path_graph(p[0]);
    case Family::Cycle:
      return cycle_graph(p[0]);
    case Family::Star:
      return star_graph(p[0]);
    case Family::Stars:
      return stars_graph(p[0], p[1]);
    case Family::RandomBoundedDegree:
      return random_bounded_degree_graph(p[0], p[1], p[2]);
    case Family::RandomDegenerate:
      return random_degenerate_graph(p[0], p[1], p[2]);
    case Family::HalfGraph:
      return halfgraph(p[0]);
    case Family::Clique:
      return clique_graph(p[0]);
    case Family::Biclique:
      return biclique_graph(p[0], p[1]);
    case Family::Edgeless:
      return edgeless_graph(p[0]);
  }
  throw InternalError("unhandled graph family");
}

inline Graph generate(std::string_view spec) { return generate(GenSpec::parse(spec)); }

}  // namespace quasiwide
