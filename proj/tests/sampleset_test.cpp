#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "flipwide/errors.hpp"
#include "flipwide/generators.hpp"
#include "flipwide/sampleset.hpp"
#include "support.hpp"

namespace flipwide {
namespace {

std::shared_ptr<const Graph> shared(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

Sequence first_n(std::size_t n, std::size_t from = 0) {
  std::vector<Vertex> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<Vertex>(from + i));
  return Sequence(v);
}

// Greedy centers with pairwise distance > 2 * half_radius.
Sequence spread_centers(const Graph& g, std::size_t half_radius, std::size_t limit) {
  const auto d = testing::floyd_warshall(g);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size() && out.size() < limit; ++v) {
    bool ok = true;
    for (Vertex c : out) ok = ok && d[v][c] > 2 * half_radius;
    if (ok) out.push_back(v);
  }
  return Sequence(out);
}

SampleBudget small_budget() { return {8, 8, 1}; }

TEST(PhiEquivalentTest, Examples) {
  const Graph e = generate({Family::Edgeless, 5});
  const VertexSet ball{2};
  for (Vertex a = 0; a < 5; ++a) {
    EXPECT_TRUE(phi_equivalent_over(e, a, a, ball));
    for (Vertex b = 0; b < 5; ++b) EXPECT_EQ(phi_equivalent_over(e, a, b, ball), (a == 2) == (b == 2));
  }
  // Two leaves of star 1 seen from the radius-1 ball of star 0.
  const Graph sf = generate({Family::StarForest, 2, 3});
  const VertexSet star0{0, 1, 2, 3};
  EXPECT_TRUE(phi_equivalent_over(sf, 5, 6, star0));
  EXPECT_TRUE(phi_equivalent_over(sf, 5, 6, star0.to_bitset(sf.size())));
  EXPECT_FALSE(phi_equivalent_over(sf, 1, 5, star0));
}

TEST(DecomposeTest, NoSamplesMeansNoDecomposition) {
  const Graph g = generate({Family::Path, 4});
  const std::vector<Bitset> balls{ball_bits(g, 0, 0)};
  EXPECT_FALSE(decompose_exceptional(g, {}, balls, 2));
}

TEST(DecomposeTest, UniformVertexGetsLastPosition) {
  const Graph g = generate({Family::Edgeless, 8});
  std::vector<Bitset> balls;
  for (Vertex c : {0u, 1u, 2u}) balls.push_back(ball_bits(g, c, 0));
  const std::vector<Vertex> samples{6};
  const auto cert = decompose_exceptional(g, samples, balls, 7);
  ASSERT_TRUE(cert);
  EXPECT_EQ(*cert, (Certificate{2, 0, 0}));
}

TEST(DecomposeTest, StarLeafExceptionalAtItsOwnStar) {
  const Graph g = generate({Family::StarForest, 6, 3});
  const Sequence centers = star_centers(5, 3);
  std::vector<Bitset> balls;
  for (Vertex c : centers) balls.push_back(ball_bits(g, c, 1));
  const std::vector<Vertex> samples{21};  // a leaf of the sixth star
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const Vertex leaf = centers[j] + 2;
    const auto cert = decompose_exceptional(g, samples, balls, leaf);
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->ex, j);
    for (std::size_t i = 0; i < balls.size(); ++i)
      if (i != j) EXPECT_TRUE(phi_equivalent_over(g, leaf, samples[0], balls[i]));
  }
}

TEST(DecomposeTest, SmallestValidSplit) {
  // Vertex 4 looks like sample 0 over ball 0 and like sample 1 over balls 1, 2.
  const Edge edges[] = {{4, 0}, {4, 1}, {4, 2}, {5, 0}, {6, 1}, {6, 2}};
  const Graph g = Graph::from_edges(7, edges);
  std::vector<Bitset> balls;
  for (Vertex c : {0u, 1u, 2u}) balls.push_back(ball_bits(g, c, 0));
  const std::vector<Vertex> samples{5, 6};
  const auto cert = decompose_exceptional(g, samples, balls, 4);
  ASSERT_TRUE(cert);
  EXPECT_EQ(*cert, (Certificate{0, 0, 1}));
}

TEST(BuildSampleSetTest, EdgelessTerminatesWithOneSample) {
  const auto g = shared(generate({Family::Edgeless, 50}));
  const EvalContext base(g, 0);
  const DisjointFamilyInput input{Sequence{3, 9, 14, 20, 21, 30, 33, 40, 41, 47}, 0, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  EXPECT_EQ(res.samples.size(), 1u);
  EXPECT_EQ(res.subseq, input.centers);
  EXPECT_EQ(std::find(input.centers.begin(), input.centers.end(), res.samples[0]), input.centers.end());
  EXPECT_TRUE(verify_sample_set(*g, input, res));
}

TEST(BuildSampleSetTest, StarForestLeavesPointAtTheirStar) {
  const auto g = shared(generate({Family::StarForest, 10, 8}));
  const EvalContext base(g, 1);
  const DisjointFamilyInput input{star_centers(10, 8), 1, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  EXPECT_LE(res.samples.size(), 2u);
  ASSERT_TRUE(verify_sample_set(*g, input, res));
  for (std::size_t j = 0; j < res.subseq.size(); ++j)
    for (std::size_t l = 1; l <= 8; ++l) {
      const Vertex leaf = res.subseq[j] + static_cast<Vertex>(l);
      EXPECT_EQ(res.certificates[leaf].ex, j);
      EXPECT_EQ(res.certificates[leaf].s_lt, res.certificates[leaf].s_gt);
    }
}

TEST(BuildSampleSetTest, CliqueNeedsFewSamples) {
  const auto g = shared(generate({Family::Clique, 30}));
  const EvalContext base(g, 0);
  const DisjointFamilyInput input{first_n(10, 5), 0, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  EXPECT_LE(res.samples.size(), 2u);
  EXPECT_TRUE(verify_sample_set(*g, input, res));
}

TEST(BuildSampleSetTest, OverlappingBallsAreRejected) {
  const auto g = shared(generate({Family::Path, 10}));
  const EvalContext base(g, 1);
  const DisjointFamilyInput input{Sequence{0, 2, 6}, 1, SampleMode::Stable};
  EXPECT_THROW(build_sample_set(base, input, small_budget()), InputError);
  const DisjointFamilyInput wrong_radius{Sequence{0, 6}, 2, SampleMode::Stable};
  EXPECT_THROW(build_sample_set(base, wrong_radius, small_budget()), InputError);
}

TEST(BuildSampleSetTest, RoundBudgetExhaustionCarriesPartialState) {
  const auto g = shared(generate({Family::Clique, 20}));
  const EvalContext base(g, 0);
  const DisjointFamilyInput input{first_n(6), 0, SampleMode::Stable};
  try {
    build_sample_set(base, input, {8, 1, 1});
    FAIL() << "expected budget exhaustion";
  } catch (const SampleBudgetExhausted& e) {
    EXPECT_EQ(e.reason(), ExhaustionReason::Rounds);
    EXPECT_TRUE(e.samples().empty());
    EXPECT_EQ(e.subseq(), input.centers);
    EXPECT_NE(std::string(e.what()).find("not monadically NIP"), std::string::npos);
  }
}

TEST(BuildSampleSetTest, EmptyCentersAreVacuous) {
  const auto g = shared(generate({Family::Path, 5}));
  const EvalContext base(g, 1);
  const DisjointFamilyInput input{Sequence{}, 1, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  EXPECT_TRUE(res.samples.empty());
  EXPECT_TRUE(res.certificates.empty());
  EXPECT_TRUE(verify_sample_set(*g, input, res));
}

TEST(VerifySampleSetTest, ShiftedExceptionalIndexIsCaught) {
  const auto g = shared(generate({Family::StarForest, 10, 8}));
  const EvalContext base(g, 1);
  const DisjointFamilyInput input{star_centers(10, 8), 1, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  ASSERT_TRUE(verify_sample_set(*g, input, res));
  ASSERT_GE(res.subseq.size(), 3u);
  for (std::size_t j : {std::size_t{0}, std::size_t{1}, res.subseq.size() - 1}) {
    const Vertex leaf = res.subseq[j] + 3;
    auto bad = res;
    auto& c = bad.certificates[leaf];
    c.ex = c.ex + 1 < bad.subseq.size() ? c.ex + 1 : c.ex - 1;
    const auto v = verify_sample_set(*g, input, bad);
    EXPECT_FALSE(v);
    EXPECT_FALSE(v.violation.empty());
  }
}

TEST(VerifySampleSetTest, OtherCorruptions) {
  const auto g = shared(generate({Family::Edgeless, 20}));
  const EvalContext base(g, 0);
  const DisjointFamilyInput input{first_n(5), 0, SampleMode::Stable};
  const auto res = build_sample_set(base, input, small_budget());
  ASSERT_TRUE(verify_sample_set(*g, input, res));

  auto sample_in_ball = res;
  sample_in_ball.samples[0] = 0;
  EXPECT_FALSE(verify_sample_set(*g, input, sample_in_ball));

  auto twin_samples = res;
  twin_samples.samples.push_back(res.samples[0] == 19 ? 18 : 19);
  EXPECT_FALSE(verify_sample_set(*g, input, twin_samples));

  auto not_subseq = res;
  not_subseq.subseq = Sequence{4, 0};
  EXPECT_FALSE(verify_sample_set(*g, input, not_subseq));

  auto bad_index = res;
  bad_index.certificates[7].s_lt = 3;
  EXPECT_FALSE(verify_sample_set(*g, input, bad_index));
}

struct FamilyCase {
  const char* name;
  Graph graph;
  std::size_t half_radius;
};

TEST(BuildSampleSetTest, VerifiesOnGeneratorFamilies) {
  std::vector<FamilyCase> cases{
      {"clique", generate({Family::Clique, 25}), 0},
      {"edgeless", generate({Family::Edgeless, 25}), 0},
      {"matching", generate({Family::Matching, 15}), 0},
      {"matching r1", generate({Family::Matching, 15}), 1},
      {"star forest", generate({Family::StarForest, 8, 4}), 1},
      {"path", generate({Family::Path, 40}), 1},
      {"grid", generate({Family::Grid, 6, 6}), 1},
      {"random", generate({Family::RandomBoundedDegree, 40, 3, 7}), 1},
      {"co-matching", complement(generate({Family::Matching, 12})), 0},
  };
  for (auto& c : cases) {
    const auto g = shared(c.graph);
    const EvalContext base(g, c.half_radius);
    const DisjointFamilyInput input{spread_centers(*g, c.half_radius, 12), c.half_radius, SampleMode::Nip};
    try {
      const auto res = build_sample_set(base, input, {16, 16, 1});
      const auto v = verify_sample_set(*g, input, res);
      EXPECT_TRUE(v) << c.name << ": " << v.violation;
      for (std::size_t i = 0; i < res.subseq.size(); ++i)
        for (Vertex w : ball(*g, res.subseq[i], c.half_radius)) EXPECT_EQ(res.certificates[w].ex, i) << c.name;
    } catch (const Error& e) {
      ADD_FAILURE() << c.name << ": " << e.what();
    }
  }
}

}  // namespace
}  // namespace flipwide
