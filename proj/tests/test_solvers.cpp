#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "quasiwide/cds.hpp"
#include "quasiwide/drds.hpp"
#include "quasiwide/generators.hpp"
#include "quasiwide/steiner.hpp"

using namespace quasiwide;

namespace {

// The edge set spans a tree on `vertices` that contains every terminal.
bool is_steiner_tree(const SteinerTree& t, const std::vector<Vertex>& terminals, const Graph& g) {
  if (t.edges.size() != t.cost) return false;
  if (t.vertices.size() != t.cost + 1) return false;
  std::set<Vertex> vs(t.vertices.begin(), t.vertices.end());
  for (Vertex x : terminals) {
    if (!vs.count(x)) return false;
  }
  std::vector<Edge> local;
  for (auto [u, v] : t.edges) {
    if (!g.adjacent(u, v) || !vs.count(u) || !vs.count(v)) return false;
    local.emplace_back(u, v);
  }
  oracle::Dense d(g.num_vertices(), local);
  return oracle::induces_connected(d, t.vertices);
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

}  // namespace

TEST(ExactDrds, Examples) {
  Graph empty = Graph::from_edges(0, {});
  auto e = exact_drds(empty, 1, 0);
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->empty());

  Graph c6 = cycle_graph(6);
  auto two = exact_drds(c6, 1, 2);
  ASSERT_TRUE(two);
  EXPECT_EQ(two->size(), 2u);
  EXPECT_TRUE(is_r_dominating(c6, *two, 1));
  EXPECT_FALSE(exact_drds(c6, 1, 1));

  EXPECT_EQ(exact_drds(path_graph(5), 2, 1), (std::vector<Vertex>{2}));
  EXPECT_THROW(exact_drds(c6, 0, 1), InputError);
}

TEST(ExactDrds, AgreesWithEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial) % 14;
    Graph g = build_graph(oracle::random_edges(rng, n, 0.1 + 0.05 * (trial % 5)), n);
    oracle::Dense d(g);
    for (std::uint32_t r = 1; r <= 3; ++r) {
      for (std::size_t k = 0; k <= 3; ++k) {
        auto found = exact_drds(g, r, k);
        EXPECT_EQ(found.has_value(), oracle::drds_exists(d, r, k)) << "n=" << n << " r=" << r << " k=" << k;
        if (found) {
          EXPECT_LE(found->size(), k);
          EXPECT_TRUE(oracle::dominates(oracle::all_distances(d), *found, r, oracle::all_vertices(n)));
        }
      }
    }
  }
}

TEST(IsRDominating, Targets) {
  Graph p = path_graph(7);
  std::vector<Vertex> mid{3};
  EXPECT_TRUE(is_r_dominating(p, mid, 3));
  EXPECT_FALSE(is_r_dominating(p, mid, 2));
  std::vector<Vertex> targets{1, 2, 3, 4, 5};
  EXPECT_TRUE(is_r_dominating(p, mid, 2, targets));
  EXPECT_TRUE(is_r_dominating(p, {}, 1, {}));
}

TEST(DreyfusWagner, Examples) {
  Graph p5 = path_graph(5);
  std::vector<Vertex> one{2};
  auto single = dreyfus_wagner(p5, one);
  EXPECT_EQ(single.cost, 0u);
  EXPECT_TRUE(single.edges.empty());

  std::vector<Vertex> ends{0, 4};
  auto path = dreyfus_wagner(p5, ends);
  EXPECT_EQ(path.cost, 4u);
  EXPECT_EQ(path.vertices, oracle::all_vertices(5));

  Graph star = star_graph(5);
  std::vector<Vertex> leaves{1, 2, 3, 4, 5};
  auto st = dreyfus_wagner(star, leaves);
  EXPECT_EQ(st.cost, 5u);
  EXPECT_TRUE(is_steiner_tree(st, leaves, star));
}

TEST(DreyfusWagner, Errors) {
  Graph g = build_graph({{0, 1}, {2, 3}}, 4);
  std::vector<Vertex> split{0, 3};
  EXPECT_THROW(dreyfus_wagner(g, split), InfeasibleError);
  std::vector<Vertex> none;
  EXPECT_THROW(dreyfus_wagner(g, none), InputError);
  std::vector<Vertex> twice{1, 1};
  EXPECT_THROW(dreyfus_wagner(g, twice), InputError);
  std::vector<Vertex> outside{0, 9};
  EXPECT_THROW(dreyfus_wagner(g, outside), InputError);
}

TEST(DreyfusWagner, AgreesWithBruteForceAndIsMonotone) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial) % 11;
    Graph g = build_graph(oracle::random_connected_edges(rng, n, 0.15), n);
    oracle::Dense d(g);
    std::vector<Vertex> order = oracle::all_vertices(n);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t prev = 0;
    for (std::size_t t = 1; t <= std::min<std::size_t>(4, n); ++t) {
      std::vector<Vertex> T(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
      auto tree = dreyfus_wagner(g, T);
      auto expect = oracle::steiner_cost(d, T);
      ASSERT_TRUE(expect);
      EXPECT_EQ(tree.cost, *expect);
      EXPECT_TRUE(is_steiner_tree(tree, T, g));
      EXPECT_GE(tree.cost, prev);
      prev = tree.cost;
    }
  }
}

TEST(BruteCds, Examples) {
  auto k5 = brute_cds(clique_graph(5), 1);
  ASSERT_TRUE(k5);
  EXPECT_EQ(k5->size(), 1u);

  Graph c5 = cycle_graph(5);
  EXPECT_FALSE(brute_cds(c5, 2));
  auto three = brute_cds(c5, 3);
  ASSERT_TRUE(three);
  EXPECT_TRUE(is_connected_dominating(c5, *three));

  EXPECT_EQ(brute_cds(path_graph(4), 2), (std::vector<Vertex>{1, 2}));
}

TEST(BruteCds, AgreesWithOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial) % 12;
    Graph g = build_graph(oracle::random_edges(rng, n, 0.3), n);
    oracle::Dense d(g);
    for (std::size_t k = 0; k <= 4; ++k) {
      auto found = brute_cds(g, k);
      EXPECT_EQ(found.has_value(), oracle::min_cds_size(d, k).has_value());
      if (found) {
        EXPECT_TRUE(oracle::is_cds(d, *found));
      }
    }
  }
}

TEST(IsConnectedDominating, Examples) {
  Graph p4 = path_graph(4);
  EXPECT_TRUE(is_connected_dominating(p4, std::vector<Vertex>{1, 2}));
  EXPECT_FALSE(is_connected_dominating(p4, std::vector<Vertex>{0, 3}));
  EXPECT_FALSE(is_connected_dominating(p4, std::vector<Vertex>{1}));
  EXPECT_EQ(count_components(build_graph({{0, 1}}, 4)), 3u);
}

TEST(CdsFpt, Examples) {
  for (std::size_t n = 1; n <= 30; n += 7) {
    auto found = cds_fpt(clique_graph(n), 1);
    ASSERT_TRUE(found);
    EXPECT_EQ(found->size(), 1u);
  }
  Graph c5 = cycle_graph(5);
  EXPECT_FALSE(cds_fpt(c5, 2));
  auto three = cds_fpt(c5, 3);
  ASSERT_TRUE(three);
  EXPECT_EQ(three->size(), 3u);
  EXPECT_TRUE(is_connected_dominating(c5, *three));

  EXPECT_FALSE(cds_fpt(build_graph({{0, 1}, {2, 3}}, 4), 3));
  EXPECT_THROW(cds_fpt(c5, 0), InputError);
  CdsOptions small;
  small.K_threshold = 3;
  EXPECT_THROW(cds_fpt(c5, 2, {}, small), InputError);
}

TEST(CdsFpt, GridFiveByFiveUpToEight) {
  // The optimum exceeds 8 here, so every answer up to the oracle's reach is no.
  Graph g = grid_graph(5, 5);
  for (std::size_t k = 1; k <= 8; ++k) {
    CdsOptions opts;
    opts.K_threshold = k + 2;
    EXPECT_EQ(cds_fpt(g, k, {}, opts).has_value(), brute_cds(g, k).has_value()) << "k=" << k;
  }
}

TEST(CdsFpt, GridOptimumAndBelow) {
  Graph g = grid_graph(4, 4);
  std::size_t best = 0;
  for (std::size_t k = 1; k <= 12 && !best; ++k) {
    if (brute_cds(g, k)) best = k;
  }
  ASSERT_GT(best, 1u);
  CdsOptions opts;
  opts.K_threshold = best + 2;
  auto yes = cds_fpt(g, best, {}, opts);
  ASSERT_TRUE(yes);
  EXPECT_TRUE(is_connected_dominating(g, *yes));
  EXPECT_FALSE(cds_fpt(g, best - 1, {}, opts));
}

TEST(CdsFpt, AgreesWithBruteForce) {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial) % 15;
    double p = 0.08 + 0.04 * (trial % 6);
    Graph g = build_graph(trial % 3 ? oracle::random_connected_edges(rng, n, p) : oracle::random_edges(rng, n, p), n);
    for (std::size_t k = 1; k <= 4; ++k) {
      CdsOptions opts;
      if (trial % 2) opts.K_threshold = k + 2;
      auto fast = cds_fpt(g, k, {}, opts);
      auto slow = brute_cds(g, k);
      EXPECT_EQ(fast.has_value(), slow.has_value()) << "n=" << n << " k=" << k;
      if (fast) {
        EXPECT_LE(fast->size(), k);
        EXPECT_TRUE(oracle::is_cds(oracle::Dense(g), *fast));
      }
    }
  }
}

TEST(CdsFpt, BranchingOnDeletionSetIsSound) {
  // Whenever the search branches on S, every CDS of size <= k extending X meets S.
  std::mt19937_64 rng(99);
  std::size_t branchings = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 8 + static_cast<std::size_t>(trial) % 9;
    Graph g = build_graph(oracle::random_connected_edges(rng, n, 0.05), n);
    oracle::Dense d(g);
    for (std::size_t k = 1; k <= 4; ++k) {
      CdsOptions opts;
      opts.K_threshold = k + 2;
      opts.on_branch = [&](std::span<const Vertex> X, std::span<const Vertex>, std::span<const Vertex> S) {
        ++branchings;
        std::vector<Vertex> xs(X.begin(), X.end());
        std::vector<Vertex> ss(S.begin(), S.end());
        oracle::for_each_subset(n, k, [&](const std::vector<Vertex>& D) {
          for (Vertex x : xs) {
            if (!contains(D, x)) return false;
          }
          if (!oracle::is_cds(d, D)) return false;
          bool meets = false;
          for (Vertex v : D) meets = meets || (contains(ss, v) && !contains(xs, v));
          EXPECT_TRUE(meets);
          return false;
        });
      };
      cds_fpt(g, k, {}, opts);
    }
  }
  EXPECT_GT(branchings, 10u);
}

TEST(CdsFpt, StatsAreRecorded) {
  Graph g = grid_graph(4, 4);
  CdsStats stats;
  CdsOptions opts;
  opts.stats = &stats;
  opts.K_threshold = 6;
  cds_fpt(g, 4, {}, opts);
  EXPECT_GT(stats.nodes, 0u);
  EXPECT_GT(stats.leaves, 0u);
  EXPECT_GT(stats.uqw_branchings + stats.fallback_branchings, 0u);
}
