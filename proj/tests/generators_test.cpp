#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "flipwide/errors.hpp"
#include "flipwide/generators.hpp"
#include "flipwide/io.hpp"
#include "support.hpp"

namespace flipwide {
namespace {

TEST(GenerateTest, Counts) {
  EXPECT_EQ(generate({Family::Clique, 4}).edge_count(), 6u);
  EXPECT_EQ(generate({Family::Edgeless, 7}).edge_count(), 0u);
  const Graph m = generate({Family::Matching, 5});
  EXPECT_EQ(m.size(), 10u);
  EXPECT_EQ(m.edge_count(), 5u);
  const Graph sk = generate({Family::SubdividedClique, 4});
  EXPECT_EQ(sk.size(), 10u);
  EXPECT_EQ(sk.edge_count(), 12u);
  const Graph sf = generate({Family::StarForest, 3, 4});
  EXPECT_EQ(sf.size(), 15u);
  EXPECT_EQ(sf.edge_count(), 12u);
  const Graph grid = generate({Family::Grid, 3, 4});
  EXPECT_EQ(grid.size(), 12u);
  EXPECT_EQ(grid.edge_count(), 3u * 3 + 2u * 4);
  EXPECT_EQ(generate({Family::Path, 6}).edge_count(), 5u);
  const Graph sg = generate({Family::ShatterGadget, 3});
  EXPECT_EQ(sg.size(), 3u + 8u);
  EXPECT_EQ(sg.edge_count(), 12u);
}

TEST(GenerateTest, HalfGraphMatrix) {
  const Graph h = generate({Family::HalfGraph, 3});
  const Sequence a = half_graph_a(3), b = half_graph_b(3);
  const int want[3][3] = {{1, 1, 1}, {0, 1, 1}, {0, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(h.adjacent(a[i], b[j]), want[i][j] == 1);
  EXPECT_EQ(h.edge_count(), 6u);
}

TEST(GenerateTest, ShatterGadgetRealizesEverySubset) {
  const Graph g = generate({Family::ShatterGadget, 4});
  for (std::size_t J = 0; J < 16; ++J)
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_EQ(g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(4 + J)), ((J >> i) & 1) != 0);
}

TEST(GenerateTest, StarCentersAndSubdivisions) {
  const Graph sf = generate({Family::StarForest, 4, 3});
  for (Vertex c : star_centers(4, 3)) EXPECT_EQ(sf.degree(c), 3u);
  const Graph sk = generate({Family::SubdividedClique, 4});
  // pair {0,1} is vertex 4, pair {2,3} is the last one
  EXPECT_TRUE(sk.adjacent(4, 0) && sk.adjacent(4, 1));
  EXPECT_TRUE(sk.adjacent(9, 2) && sk.adjacent(9, 3));
}

TEST(GenerateTest, RandomBoundedDegree) {
  const Graph g = generate({Family::RandomBoundedDegree, 60, 3, 42});
  for (Vertex v = 0; v < g.size(); ++v) EXPECT_LE(g.degree(v), 3u);
  EXPECT_GT(g.edge_count(), 0u);
  EXPECT_EQ(to_edge_list(g), to_edge_list(generate({Family::RandomBoundedDegree, 60, 3, 42})));
  EXPECT_NE(g, generate({Family::RandomBoundedDegree, 60, 3, 43}));
}

TEST(GenerateTest, RandomFollowsTheDocumentedStream) {
  const std::size_t n = 20, d = 2;
  std::mt19937_64 rng(9);
  std::vector<std::size_t> deg(n, 0);
  testing::Matrix adj(n, std::vector<char>(n, 0));
  for (std::size_t t = 0; t < n * d * 4; ++t) {
    const std::size_t u = rng() % n;
    const std::size_t v = rng() % n;
    if (u == v || adj[u][v] || deg[u] >= d || deg[v] >= d) continue;
    adj[u][v] = adj[v][u] = 1;
    ++deg[u];
    ++deg[v];
  }
  EXPECT_EQ(testing::adjacency(generate({Family::RandomBoundedDegree, n, d, 9})), adj);
}

TEST(GenerateTest, Validation) {
  EXPECT_THROW(generate({Family::Clique, 0}), InputError);
  EXPECT_THROW(generate({Family::StarForest, 3, 0}), InputError);
  EXPECT_THROW(generate({Family::ShatterGadget, 21}), InputError);
  EXPECT_THROW(power(generate({Family::Path, 3}), 0), InputError);
}

TEST(FamilyNameTest, RoundTrip) {
  for (Family f : {Family::Clique, Family::Edgeless, Family::Matching, Family::HalfGraph, Family::StarForest,
                   Family::Path, Family::Grid, Family::SubdividedClique, Family::ShatterGadget,
                   Family::RandomBoundedDegree}) {
    const auto parsed = parse_family(family_name(f));
    ASSERT_TRUE(parsed);
    EXPECT_EQ(*parsed, f);
  }
  EXPECT_FALSE(parse_family("petersen"));
  EXPECT_EQ(family_arity(Family::Grid), 2u);
  EXPECT_EQ(family_arity(Family::Clique), 1u);
}

TEST(ComplementTest, Examples) {
  EXPECT_EQ(complement(generate({Family::Edgeless, 6})), generate({Family::Clique, 6}));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Graph g = testing::random_graph(11, 0.3, seed);
    const Graph c = complement(g);
    EXPECT_EQ(complement(c), g);
    EXPECT_EQ(g.edge_count() + c.edge_count(), 55u);
  }
}

TEST(PowerTest, Examples) {
  const Graph p4 = generate({Family::Path, 4});
  const Graph sq = power(p4, 2);
  EXPECT_EQ(sq.edge_count(), 5u);
  EXPECT_TRUE(sq.adjacent(0, 2));
  EXPECT_TRUE(sq.adjacent(1, 3));
  EXPECT_FALSE(sq.adjacent(0, 3));
  EXPECT_EQ(power(p4, 1), p4);
}

TEST(PowerTest, MatchesDistanceOracleAndIsMonotone) {
  const Graph g = testing::random_graph(14, 0.15, 77);
  const auto d = testing::floyd_warshall(g);
  std::size_t last = 0;
  for (std::size_t p = 1; p <= 5; ++p) {
    const Graph gp = power(g, p);
    for (Vertex u = 0; u < 14; ++u)
      for (Vertex v = 0; v < 14; ++v) EXPECT_EQ(gp.adjacent(u, v), u != v && d[u][v] <= p);
    EXPECT_GE(gp.edge_count(), last);
    last = gp.edge_count();
  }
}

}  // namespace
}  // namespace flipwide
