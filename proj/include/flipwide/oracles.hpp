#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipwide/formulas.hpp"
#include "flipwide/graph.hpp"

namespace flipwide {

/// E(b, seq_i) for every position i.
struct ConnectionProfile {
  std::vector<bool> truth;
  std::size_t size() const { return truth.size(); }
  std::size_t positives() const;
};

ConnectionProfile connection_profile(const Graph& g, Vertex b, const Sequence& seq);

struct RankResult {
  std::size_t rank = 0;
  /// Lowest vertex attaining the rank; empty on an empty graph or sequence.
  std::optional<Vertex> witness;
  /// Alternation: the start of every run, rank + 1 positions.
  /// Exception: `rank` positive positions followed by `rank` negative ones.
  std::vector<std::size_t> indices;
};

RankResult alternation_rank(const Graph& g, const Sequence& seq);
RankResult exception_rank(const Graph& g, const Sequence& seq);

enum class DecompositionMode { Nip, Stable };

/// tau_before holds against every position before ex, tau_after against every
/// position after it. In stable mode both are equal.
struct TypeDecomposition {
  std::size_t ex = 0;
  PhiType before;
  PhiType after;
};

/// Positions whose types rule out every decomposition. Nip mode: four
/// positions 0 < p < q < n-1 with type(0) != type(p) and type(q) != type(n-1).
/// Stable mode: removing any one position still leaves two different types.
struct TypeFalsifier {
  std::vector<std::size_t> positions;
  std::vector<PhiType> types;
};

struct SequenceDecomposition {
  std::optional<TypeDecomposition> decomposition;
  std::optional<TypeFalsifier> falsifier;
  explicit operator bool() const { return decomposition.has_value(); }
};

/// Canonical answer: a uniform profile gets ex = n-1; otherwise the smallest ex.
SequenceDecomposition decompose_sequence_types(const EvalContext& ctx, const PhiSet& phi,
                                               const Sequence& seq, Vertex a,
                                               DecompositionMode mode);

enum class WitnessKind { Order, Shattering, Pairing };

/// Order:      adj(a_i, b_j) iff i <= j, |a| = |b| = k.
/// Shattering: adj(a_i, b_J) iff bit i of J, |a| = k, |b| = 2^k.
/// Pairing:    adj(a_p, b_l) iff l in pair p, pairs {i < j} in lexicographic order.
struct Witness {
  WitnessKind kind = WitnessKind::Order;
  std::size_t k = 0;
  std::vector<Vertex> a;
  std::vector<Vertex> b;
};

/// Re-evaluates the defining truth matrix entry by entry.
bool validate_witness(const Graph& g, const Witness& w);

enum class SearchMode { Exhaustive, Randomized, Budget };
const char* to_string(SearchMode m);

struct SearchOptions {
  /// Feasibility guard: larger inputs raise BudgetError before searching.
  std::size_t max_vertices = 1 << 14;
  std::size_t max_k = 16;
  /// Candidate tests allowed for the exhaustive pass.
  std::size_t node_budget = 50'000'000;
  /// Randomized-order restarts (same node budget each) after the exhaustive pass runs out.
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
};

/// Exhaustive means "none" is a proof of absence; Randomized and Budget mean
/// the search gave up.
struct WitnessSearch {
  std::optional<Witness> witness;
  SearchMode mode = SearchMode::Exhaustive;
  std::size_t nodes = 0;
};

WitnessSearch order_property_witness(const Graph& g, std::size_t k, const SearchOptions& opt = {});
WitnessSearch shattering_witness(const Graph& g, std::size_t k, const SearchOptions& opt = {});
WitnessSearch pairing_index_witness(const Graph& g, std::size_t k, const SearchOptions& opt = {});

enum class CanonicalKind { Matching, CoMatching, Ladder };
const char* to_string(CanonicalKind k);

/// Pairs (left index, right index) p_1..p_l with adj(left[p_s], right[p_t])
/// iff s = t (matching), s != t (co-matching) or s <= t (ladder).
struct CanonicalPattern {
  CanonicalKind kind = CanonicalKind::Matching;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

using AdjacencyOracle = std::function<bool(Vertex, Vertex)>;

/// Kinds are tried in the order matching, co-matching, ladder. The left side
/// must be twin-free towards the right side (InputError otherwise); a search
/// exceeding opt.node_budget raises BudgetError.
std::optional<CanonicalPattern> bipartite_canonical_pattern(const Sequence& left,
                                                            const Sequence& right,
                                                            const AdjacencyOracle& adj,
                                                            std::size_t order,
                                                            const SearchOptions& opt = {});
std::optional<CanonicalPattern> bipartite_canonical_pattern(const Graph& g, const Sequence& left,
                                                            const Sequence& right,
                                                            std::size_t order,
                                                            const SearchOptions& opt = {});

}  // namespace flipwide
