#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipwide/errors.hpp"
#include "flipwide/formulas.hpp"
#include "flipwide/graph.hpp"
#include "flipwide/indiscernibles.hpp"

namespace flipwide {

enum class SampleMode { Stable, Nip };

/// Centers whose balls of radius `half_radius` are pairwise disjoint.
struct DisjointFamilyInput {
  Sequence centers;
  std::size_t half_radius = 0;
  SampleMode mode = SampleMode::Stable;
};

/// Runtime stand-ins for the non-constructive size bounds.
struct SampleBudget {
  std::size_t max_samples = 16;
  std::size_t max_rounds = 16;
  std::size_t min_surviving_length = 1;
};

/// For one vertex a: a is equivalent to samples[s_lt] over every ball before
/// position `ex` and to samples[s_gt] over every ball after it.
struct Certificate {
  std::size_t ex = 0;
  std::size_t s_lt = 0;
  std::size_t s_gt = 0;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct SampleSetResult {
  std::vector<Vertex> samples;
  Sequence subseq;
  /// Indexed by vertex id; empty when `subseq` is empty.
  std::vector<Certificate> certificates;
  std::size_t rounds = 0;
};

enum class ExhaustionReason { Samples, Rounds, Length, NoCandidate };

/// Budget exhaustion; on monadically NIP inputs this signals budgets that are
/// too small. Carries the partial construction.
class SampleBudgetExhausted : public BudgetError {
 public:
  SampleBudgetExhausted(ExhaustionReason reason, std::vector<Vertex> samples, Sequence subseq,
                        const std::string& detail);
  ExhaustionReason reason() const { return reason_; }
  const std::vector<Vertex>& samples() const { return samples_; }
  const Sequence& subseq() const { return subseq_; }

 private:
  ExhaustionReason reason_;
  std::vector<Vertex> samples_;
  Sequence subseq_;
};

/// Same membership in `ball` and the same neighbours inside it.
bool phi_equivalent_over(const Graph& g, Vertex a, Vertex b, const Bitset& ball);
bool phi_equivalent_over(const Graph& g, Vertex a, Vertex b, const VertexSet& ball);

/// Canonical split for vertex `a`: uniform vertices get ex = last position;
/// otherwise the smallest valid ex, with the lowest sample index on each side.
std::optional<Certificate> decompose_exceptional(const Graph& g, std::span<const Vertex> samples,
                                                 std::span<const Bitset> balls, Vertex a);

/// Builds the sample set S and subsequence I. `base` must carry balls of
/// radius input.half_radius; its constants are ignored.
SampleSetResult build_sample_set(const EvalContext& base, const DisjointFamilyInput& input,
                                 const SampleBudget& budget, const ExtractionConfig& extraction = {});

struct Verdict {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// Re-checks a SampleSetResult from scratch (fresh BFS balls, neighbour-list
/// comparisons) without touching the construction's data structures.
Verdict verify_sample_set(const Graph& g, const DisjointFamilyInput& input,
                          const SampleSetResult& result);

}  // namespace flipwide
