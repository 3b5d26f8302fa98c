// Build a union of stars, kernelize it for distance-r domination and
// compare exact answers on the graph and the kernel.
#include <iostream>

#include "quasiwide/quasiwide.hpp"

using namespace quasiwide;

int main(int argc, char** argv) {
  std::size_t leaves = argc > 1 ? std::stoul(argv[1]) : 12;
  std::uint32_t r = 1;
  std::uint32_t k = 4;

  Graph g = stars_graph(k, leaves);
  std::cout << "G: " << g.num_vertices() << " vertices, " << g.num_edges() << " edges, degeneracy "
            << g.degeneracy() << '\n';

  CoreConfig cfg;
  cfg.r = r;
  cfg.k = k;
  cfg.ell = k + 2;  // small threshold so the core actually shrinks on small inputs
  auto core = domination_core(g, cfg);
  auto reps = reduce_dominators(g, core.Z, r);
  auto kernel = build_kernel(g, core.Z, reps, r, k);
  std::cout << "core " << core.Z.size() << ", dominators " << reps.Y.size() << ", kernel "
            << kernel.H.num_vertices() << " vertices with budget " << kernel.k_new << '\n';

  auto in_g = exact_drds(g, r, k);
  auto in_h = exact_drds(kernel.H, r, kernel.k_new);
  std::cout << "G has a solution: " << (in_g ? "yes" : "no") << ", H has a solution: " << (in_h ? "yes" : "no")
            << '\n';
  if (in_g) {
    std::cout << "solution:";
    for (Vertex v : *in_g) std::cout << ' ' << v;
    std::cout << '\n';
  }

  auto cds = cds_fpt(cycle_graph(7), 5);
  std::cout << "C7 connected dominating set of size <= 5: " << (cds ? "found" : "none") << '\n';
  return in_g.has_value() == in_h.has_value() ? 0 : 1;
}
