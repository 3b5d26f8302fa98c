#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "quasiwide/generators.hpp"
#include "quasiwide/uqw.hpp"

using namespace quasiwide;

namespace {

UqwConfig checked() {
  UqwConfig cfg;
  cfg.check_rounds = true;
  return cfg;
}

// Pairwise distances in G - S, computed on the dense matrix.
bool independent_by_oracle(const Graph& g, const UqwResult& res, std::uint32_t r) {
  oracle::Dense d(g);
  std::vector<char> removed(g.num_vertices(), 0);
  for (Vertex s : res.S) removed[s] = 1;
  for (std::size_t i = 0; i < res.B.size(); ++i) {
    auto dist = oracle::distances(d, res.B[i], removed);
    for (std::size_t j = i + 1; j < res.B.size(); ++j) {
      if (dist[res.B[j]] <= r) return false;
    }
  }
  return true;
}

}  // namespace

TEST(UqwSplit, EdgelessNeedsNoDeletion) {
  Graph g = edgeless_graph(12);
  auto A = oracle::all_vertices(12);
  auto res = uqw_split(g, A, 4, A.size(), checked());
  ASSERT_TRUE(res.ok());
  EXPECT_TRUE(res.S.empty());
  EXPECT_EQ(res.B, A);
  EXPECT_TRUE(res.verified);
}

TEST(UqwSplit, StarDeletesItsCenter) {
  Graph g = star_graph(8);
  std::vector<Vertex> leaves{1, 2, 3, 4, 5, 6, 7, 8};
  auto res = uqw_split(g, leaves, 2, 8, checked());
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.S, (std::vector<Vertex>{0}));
  EXPECT_EQ(res.B, leaves);
  EXPECT_TRUE(res.verified);
  EXPECT_TRUE(uqw_verify(g, res, leaves, 2));
}

TEST(UqwSplit, GridIsVerified) {
  Graph g = grid_graph(12, 12);
  auto A = oracle::all_vertices(144);
  auto res = uqw_split(g, A, 2, 8, checked());
  ASSERT_TRUE(res.ok());
  EXPECT_TRUE(res.verified);
  EXPECT_LE(res.S.size(), 16u);
  EXPECT_TRUE(uqw_verify(g, res, A, 2));
  EXPECT_TRUE(independent_by_oracle(g, res, 2));
}

TEST(UqwSplit, RejectsBadInput) {
  Graph g = path_graph(5);
  std::vector<Vertex> none;
  std::vector<Vertex> some{0, 2};
  EXPECT_THROW(uqw_split(g, none, 2, 1), InputError);
  EXPECT_THROW(uqw_split(g, some, 0, 1), InputError);
  EXPECT_THROW(uqw_split(g, some, 2, 0), InputError);
  UqwConfig bad;
  bad.theta = 0.0;
  EXPECT_THROW(uqw_split(g, some, 2, 1, bad), InputError);
}

TEST(UqwVerify, Examples) {
  Graph g = star_graph(8);
  std::vector<Vertex> leaves{1, 2, 3, 4, 5, 6, 7, 8};
  auto res = uqw_split(g, leaves, 2, 8);
  EXPECT_TRUE(uqw_verify(g, res, leaves, 2));

  UqwResult tampered = res;
  tampered.S.clear();
  EXPECT_FALSE(uqw_verify(g, tampered, leaves, 2));

  UqwResult single;
  single.B = {3};
  single.S = {0, 5};
  EXPECT_TRUE(uqw_verify(g, single, leaves, 2));

  UqwResult outside;
  outside.B = {0};
  EXPECT_FALSE(uqw_verify(g, outside, leaves, 2));
}

TEST(UqwSplit, CliqueFailsWithCertificate) {
  Graph g = clique_graph(40);
  auto A = oracle::all_vertices(40);
  auto res = uqw_split(g, A, 2, 10);
  ASSERT_FALSE(res.ok());
  EXPECT_GT(res.failure->candidates.size(), 16u);
  EXPECT_FALSE(res.failure->sequence.empty());
  EXPECT_FALSE(uqw_verify(g, res, A, 2));
}

TEST(UqwSplit, RandomGraphsVerifyAndKeepRoundInvariant) {
  std::mt19937_64 rng(31);
  std::size_t successes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 30 + (trial * 37) % 170;
    Graph g = build_graph(oracle::random_degenerate_edges(rng, n, 1 + trial % 3), n);
    std::vector<Vertex> A;
    for (Vertex v = 0; v < n; ++v) {
      if (rng() % 2) A.push_back(v);
    }
    if (A.empty()) A.push_back(0);
    std::uint32_t r = 1 + trial % 4;
    auto res = uqw_split(g, A, r, 1 + trial % 10, checked());
    if (!res.ok()) continue;
    ++successes;
    EXPECT_TRUE(res.verified);
    EXPECT_TRUE(uqw_verify(g, res, A, r));
    EXPECT_TRUE(independent_by_oracle(g, res, r));
    EXPECT_LE(res.S.size(), 16u);
    EXPECT_EQ(res.rounds.size(), (r + 1) / 2);
  }
  EXPECT_GT(successes, 30u);
}

TEST(UqwSplit, Deterministic) {
  Graph g = random_degenerate_graph(150, 2, 99);
  auto A = oracle::all_vertices(150);
  auto a = uqw_split(g, A, 3, 6);
  auto b = uqw_split(g, A, 3, 6);
  EXPECT_EQ(a.S, b.S);
  EXPECT_EQ(a.B, b.B);
  EXPECT_EQ(a.rounds.size(), b.rounds.size());
}

TEST(UqwSplit, DisjointStars) {
  // Either a center is deleted or its star keeps at most one leaf in B.
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::size_t p = 2; p <= 7; ++p) {
      Graph g = stars_graph(k, p);
      std::vector<Vertex> leaves;
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 1; l <= p; ++l) leaves.push_back(static_cast<Vertex>(j * (p + 1) + l));
      }
      auto res = uqw_split(g, leaves, 2, leaves.size(), checked());
      ASSERT_TRUE(res.ok());
      EXPECT_TRUE(uqw_verify(g, res, leaves, 2));
      EXPECT_LE(res.S.size(), k);
      for (std::size_t j = 0; j < k; ++j) {
        Vertex c = static_cast<Vertex>(j * (p + 1));
        std::size_t kept = 0;
        for (Vertex b : res.B) kept += (b > c && b <= c + p);
        bool deleted = std::binary_search(res.S.begin(), res.S.end(), c);
        EXPECT_TRUE(deleted || kept <= 1);
        if (kept >= 2) {
          EXPECT_TRUE(deleted);
        }
      }
    }
  }
}

TEST(UqwSplit, MaxRoundsOverrideIsReported) {
  Graph g = path_graph(40);
  auto A = oracle::all_vertices(40);
  UqwConfig cfg;
  cfg.max_rounds = 1;
  auto res = uqw_split(g, A, 4, 5, cfg);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.rounds.size(), 1u);
  EXPECT_EQ(res.verified, uqw_verify(g, res, A, 4));
}
