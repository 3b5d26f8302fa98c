#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

namespace detail {

class LadderSearch {
 public:
  LadderSearch(const Graph& g, std::size_t max_k) : g_(g), max_k_(max_k) {}

  std::size_t run() {
    extend();
    return best_;
  }

 private:
  // Pair i+1 needs v adjacent to w, w adjacent to every earlier v, and v
  // non-adjacent to every earlier w.
  void extend() {
    best_ = std::max(best_, vs_.size());
    if (best_ >= max_k_ || vs_.size() >= max_k_) return;
    const std::size_t n = g_.num_vertices();
    for (Vertex w = 0; w < n && best_ < max_k_; ++w) {
      bool w_ok = true;
      for (Vertex v : vs_) {
        if (!g_.adjacent_unchecked(v, w)) {
          w_ok = false;
          break;
        }
      }
      if (!w_ok) continue;
      for (Vertex v : g_.neighbors(w)) {
        bool v_ok = true;
        for (Vertex prev : ws_) {
          if (g_.adjacent_unchecked(v, prev)) {
            v_ok = false;
            break;
          }
        }
        if (!v_ok) continue;
        vs_.push_back(v);
        ws_.push_back(w);
        extend();
        vs_.pop_back();
        ws_.pop_back();
        if (best_ >= max_k_) return;
      }
    }
  }

  const Graph& g_;
  std::size_t max_k_;
  std::size_t best_ = 0;
  std::vector<Vertex> vs_;
  std::vector<Vertex> ws_;
};

}  // namespace detail

/// Largest k <= max_k admitting v_1..v_k, w_1..w_k with v_i ~ w_j iff i <= j.
/// Exhaustive; meant for graphs of a few dozen vertices.
inline std::size_t ladder_index(const Graph& g, std::size_t max_k) {
  if (max_k < 1) throw InputError("ladder_index: max_k must be >= 1");
  return detail::LadderSearch(g, max_k).run();
}

}  // namespace quasiwide
