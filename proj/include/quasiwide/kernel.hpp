#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/bfs.hpp"
#include "quasiwide/edge_list.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"
#include "quasiwide/uqw.hpp"

namespace quasiwide {

struct CoreConfig {
  std::uint32_t r = 1;
  std::uint32_t k = 1;
  std::optional<std::size_t> ell;  // core-size threshold; see effective_ell()
  UqwConfig uqw;
  bool batch = true;              // drop a whole bucket down to k+1 members per step
  std::size_t max_retries = 3;    // times A may be doubled when no bucket is large enough
  std::size_t s_guess = 4;        // exponent used for the first requested |B|

  /// max(4 (k+2) (2r+1)^2, 64) unless set explicitly.
  std::size_t effective_ell() const {
    if (ell) return *ell;
    std::size_t side = 2 * static_cast<std::size_t>(r) + 1;
    return std::max<std::size_t>(4 * (static_cast<std::size_t>(k) + 2) * side * side, 64);
  }

  void validate() const {
    if (r < 1) throw InputError("core: r must be >= 1");
    if (k < 1) throw InputError("core: k must be >= 1");
    if (effective_ell() < static_cast<std::size_t>(k) + 2) throw InputError("core: ell must be >= k+2");
    uqw.validate();
  }
};

/// Justification for dropping dominatees: B (the uqw output restricted to one
/// bucket) is 2r-independent in G - S and all of it has the same capped
/// distance vector to S.
struct DominateeWitness {
  std::vector<Vertex> S;       // sorted anchors
  std::vector<Vertex> bucket;  // sorted by id
  std::vector<Distance> vector;
};

struct IrrelevantDominatee {
  Vertex w = 0;
  DominateeWitness witness;
};

struct RemovalStep {
  std::vector<Vertex> removed;
  DominateeWitness witness;
};

struct DominationCore {
  std::vector<Vertex> Z;  // sorted
  std::vector<RemovalStep> removal_log;
  std::string stop_reason;
};

namespace detail {

inline std::size_t saturating_pow_times(std::size_t factor, std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t value = factor;
  for (std::size_t i = 0; i < exp && value < cap; ++i) value *= base;
  return std::min(value, cap);
}

inline std::string stop_below_threshold(std::size_t z, std::size_t ell) {
  return "core size " + std::to_string(z) + " <= threshold " + std::to_string(ell);
}

}  // namespace detail

/// A vertex of Z that can be dropped without changing which sets of size
/// <= k r-dominate Z, or nullopt when |Z| <= ell or no bucket of k+2
/// equivalent, pairwise far apart vertices turns up. `reason` receives a
/// diagnostic in the latter case.
inline std::optional<IrrelevantDominatee> find_irrelevant_dominatee(const Graph& g, std::span<const Vertex> Z,
                                                                    const CoreConfig& cfg,
                                                                    std::string* reason = nullptr) {
  cfg.validate();
  std::vector<Vertex> z(Z.begin(), Z.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (Vertex v : z) g.check(v);
  const std::size_t ell = cfg.effective_ell();
  if (z.size() <= ell) {
    if (reason) *reason = detail::stop_below_threshold(z.size(), ell);
    return std::nullopt;
  }
  const std::uint32_t radius = 2 * cfg.r;
  const std::size_t need = static_cast<std::size_t>(cfg.k) + 2;
  std::size_t a_size = ell;
  std::size_t best_seen = 0;
  for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    std::span<const Vertex> A(z.data(), a_size);
    std::size_t m = detail::saturating_pow_times(need, radius + 1, cfg.s_guess, A.size());
    UqwResult res = uqw_split(g, A, radius, m, cfg.uqw);
    if (!res.ok()) throw UqwFailureError(*res.failure);
    if (res.S.size() > cfg.s_guess) {
      std::size_t m2 = detail::saturating_pow_times(need, radius + 1, res.S.size(), A.size());
      if (m2 != m) {
        res = uqw_split(g, A, radius, m2, cfg.uqw);
        if (!res.ok()) throw UqwFailureError(*res.failure);
      }
    }
    if (!res.verified) throw InternalError("find_irrelevant_dominatee: uqw result failed verification");

    BoundedBfs bfs(g);
    std::vector<std::vector<Distance>> rows(res.B.size(), std::vector<Distance>(res.S.size()));
    for (std::size_t j = 0; j < res.S.size(); ++j) {
      bfs.run_from(res.S[j], radius);
      for (std::size_t b = 0; b < res.B.size(); ++b) rows[b][j] = bfs.distance(res.B[b]);
    }
    std::map<std::vector<Distance>, std::vector<Vertex>> buckets;
    for (std::size_t b = 0; b < res.B.size(); ++b) buckets[rows[b]].push_back(res.B[b]);

    const std::vector<Vertex>* chosen = nullptr;
    const std::vector<Distance>* chosen_key = nullptr;
    for (auto& [key, members] : buckets) {
      std::sort(members.begin(), members.end());
      best_seen = std::max(best_seen, members.size());
      if (members.size() < need) continue;
      if (!chosen || members.size() > chosen->size() ||
          (members.size() == chosen->size() && members.front() < chosen->front())) {
        chosen = &members;
        chosen_key = &key;
      }
    }
    if (chosen) {
      IrrelevantDominatee out;
      out.w = chosen->front();
      out.witness = DominateeWitness{res.S, *chosen, *chosen_key};
      return out;
    }
    if (a_size == z.size()) break;
    a_size = std::min(z.size(), 2 * a_size);
  }
  if (reason) {
    *reason = "no distance-vector bucket reached " + std::to_string(need) + " members (largest " +
              std::to_string(best_seen) + ")";
  }
  return std::nullopt;
}

/// Starts from Z = V(G) and drops irrelevant dominatees until none is found.
inline DominationCore domination_core(const Graph& g, const CoreConfig& cfg) {
  cfg.validate();
  DominationCore core;
  core.Z.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) core.Z[v] = static_cast<Vertex>(v);
  const std::size_t keep = static_cast<std::size_t>(cfg.k) + 1;
  while (true) {
    std::string reason;
    auto found = find_irrelevant_dominatee(g, core.Z, cfg, &reason);
    if (!found) {
      core.stop_reason = reason;
      break;
    }
    RemovalStep step;
    if (cfg.batch) {
      const auto& bucket = found->witness.bucket;
      step.removed.assign(bucket.begin() + static_cast<std::ptrdiff_t>(keep), bucket.end());
    } else {
      step.removed = {found->w};
    }
    std::vector<Vertex> next;
    next.reserve(core.Z.size());
    std::set_difference(core.Z.begin(), core.Z.end(), step.removed.begin(), step.removed.end(),
                        std::back_inserter(next));
    core.Z = std::move(next);
    step.witness = std::move(found->witness);
    core.removal_log.push_back(std::move(step));
  }
  return core;
}

struct Representatives {
  std::vector<Vertex> Y;                         // sorted
  std::vector<std::vector<Vertex>> projection;  // projection[i]: sorted N_r[Y[i]] ∩ Z
  std::vector<Vertex> class_of;                  // per vertex: its representative in Y

  const std::vector<Vertex>& projection_of(Vertex y) const {
    auto it = std::lower_bound(Y.begin(), Y.end(), y);
    if (it == Y.end() || *it != y) throw InputError("vertex " + std::to_string(y) + " is not a representative");
    return projection[static_cast<std::size_t>(it - Y.begin())];
  }
};

/// Groups vertices by their closed r-ball trace on Z; the smallest id of each
/// group represents it.
inline Representatives reduce_dominators(const Graph& g, std::span<const Vertex> Z, std::uint32_t r) {
  std::vector<Vertex> z(Z.begin(), Z.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Vertex>> lists(n);
  BoundedBfs bfs(g);
  for (Vertex s : z) {
    for (Vertex v : bfs.run_from(s, r)) lists[v].push_back(s);
  }
  Representatives out;
  out.class_of.assign(n, 0);
  std::map<std::vector<Vertex>, Vertex> rep;
  for (Vertex v = 0; v < n; ++v) {
    auto [it, inserted] = rep.emplace(lists[v], v);
    out.class_of[v] = it->second;
    if (inserted) out.Y.push_back(v);
  }
  for (Vertex y : out.Y) out.projection.push_back(lists[y]);
  return out;
}

struct KernelInstance {
  Graph H;
  std::uint32_t r = 1;
  std::uint32_t k_new = 1;
  std::vector<Vertex> base_of;  // H id -> G id for the copies of Z ∪ Y (ids 0..base_of.size()-1)
  std::vector<Vertex> z_in_h;   // H ids of Z, in increasing G id
  std::vector<Vertex> y_in_h;   // H ids of Y, in increasing G id
  Vertex gadget_v = 0;
  Vertex gadget_v2 = 0;
  std::vector<Vertex> gadget_internal;  // interior vertices of the gadget paths
  bool projection_ok = false;

  std::size_t size_bound(std::size_t z, std::size_t y) const {
    return r * z * y + 2 + r * (y + 1) + z;
  }
};

/// Kernel graph for Z and its representatives: copies of Z ∪ Y, one fresh
/// path of length dist_G(y,z) per representative y and projected z, and a
/// vertex v reaching every non-Z vertex through a fresh length-r path, plus
/// a pendant length-r path v..v'. Parameter becomes k+1.
inline KernelInstance build_kernel(const Graph& g, std::span<const Vertex> Z, const Representatives& reps,
                                   std::uint32_t r, std::uint32_t k) {
  if (r < 1) throw InputError("build_kernel: r must be >= 1");
  std::vector<Vertex> z(Z.begin(), Z.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (Vertex v : z) g.check(v);
  if (reps.class_of.size() != g.num_vertices()) throw InputError("build_kernel: representatives do not match G");

  KernelInstance out;
  out.r = r;
  out.k_new = k + 1;
  std::set_union(z.begin(), z.end(), reps.Y.begin(), reps.Y.end(), std::back_inserter(out.base_of));
  const std::size_t core_n = out.base_of.size();
  auto h_of = [&](Vertex base) {
    return static_cast<Vertex>(std::lower_bound(out.base_of.begin(), out.base_of.end(), base) - out.base_of.begin());
  };
  for (Vertex v : z) out.z_in_h.push_back(h_of(v));
  for (Vertex y : reps.Y) out.y_in_h.push_back(h_of(y));
  std::vector<char> is_z(core_n, 0);
  for (Vertex h : out.z_in_h) is_z[h] = 1;

  std::vector<Edge> edges;
  Vertex next = static_cast<Vertex>(core_n);
  auto add_path = [&](Vertex from, Vertex to, std::uint32_t length, std::vector<Vertex>* interior) {
    Vertex prev = from;
    for (std::uint32_t step = 1; step < length; ++step) {
      Vertex fresh = next++;
      if (interior) interior->push_back(fresh);
      edges.emplace_back(prev, fresh);
      prev = fresh;
    }
    edges.emplace_back(prev, to);
  };

  BoundedBfs bfs(g);
  for (std::size_t i = 0; i < reps.Y.size(); ++i) {
    Vertex y = reps.Y[i];
    bfs.run_from(y, r);
    for (Vertex target : reps.projection[i]) {
      if (target == y) continue;
      Distance d = bfs.distance(target);
      if (!d) {
        throw InternalError("build_kernel: projected vertex " + std::to_string(target) + " is farther than r from " +
                            std::to_string(y));
      }
      // A pair of representatives that both lie in Z is joined only once.
      if (target < y && std::binary_search(reps.Y.begin(), reps.Y.end(), target) &&
          std::binary_search(z.begin(), z.end(), y)) {
        continue;
      }
      add_path(h_of(y), h_of(target), *d, nullptr);
    }
  }

  const Vertex attach_end = next;
  out.gadget_v = next++;
  out.gadget_v2 = next++;
  for (Vertex h = 0; h < attach_end; ++h) {
    if (h < core_n && is_z[h]) continue;
    add_path(out.gadget_v, h, r, &out.gadget_internal);
  }
  add_path(out.gadget_v, out.gadget_v2, r, &out.gadget_internal);
  out.H = Graph::from_edges(next, edges);

  out.projection_ok = true;
  BoundedBfs hbfs(out.H);
  for (std::size_t i = 0; i < reps.Y.size() && out.projection_ok; ++i) {
    std::vector<Vertex> seen;
    for (Vertex h : hbfs.run_from(out.y_in_h[i], r)) {
      if (h < core_n && is_z[h]) seen.push_back(out.base_of[h]);
    }
    std::sort(seen.begin(), seen.end());
    out.projection_ok = seen == reps.projection[i];
  }
  if (!out.projection_ok) {
    throw InternalError("build_kernel: r-ball traces on Z changed in the kernel graph");
  }
  return out;
}

struct KernelResult {
  DominationCore core;
  Representatives reps;
  KernelInstance kernel;
};

inline KernelResult kernelize(const Graph& g, const CoreConfig& cfg) {
  KernelResult out;
  out.core = domination_core(g, cfg);
  out.reps = reduce_dominators(g, out.core.Z, cfg.r);
  out.kernel = build_kernel(g, out.core.Z, out.reps, cfg.r, cfg.k);
  return out;
}

namespace detail {

inline std::string join_ids(std::span<const Vertex> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace detail

/// Edge-list file of H with `k_new=`, `z=`, `y=`, `gadget=` comment lines
/// (ids are H ids; gadget lists v, v' and then the path interiors).
inline void write_kernel(std::ostream& out, const KernelInstance& kernel) {
  std::vector<Vertex> gadget{kernel.gadget_v, kernel.gadget_v2};
  gadget.insert(gadget.end(), kernel.gadget_internal.begin(), kernel.gadget_internal.end());
  std::vector<std::string> header{
      "k_new=" + std::to_string(kernel.k_new),
      "r=" + std::to_string(kernel.r),
      "z=" + detail::join_ids(kernel.z_in_h),
      "y=" + detail::join_ids(kernel.y_in_h),
      "gadget=" + detail::join_ids(gadget),
  };
  write_edge_list(out, kernel.H, header);
}

}  // namespace quasiwide
