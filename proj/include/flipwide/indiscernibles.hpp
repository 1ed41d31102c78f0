#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flipwide/errors.hpp"
#include "flipwide/formulas.hpp"
#include "flipwide/graph.hpp"

namespace flipwide {

/// The set Delta of gamma-formulas an indiscernibility question is asked for.
///
/// Either an explicit list of patterns, or the implicit family of *all* type
/// patterns of length 1..k over Phi. The implicit family is never
/// materialised: two tuples agree on every type pattern of their length iff
/// they realise the same set of type vectors, which is what the checker compares.
class PatternFamily {
 public:
  static PatternFamily explicit_patterns(std::size_t phi_count, std::vector<Pattern> patterns);
  static PatternFamily all_type_patterns(std::size_t phi_count, std::size_t max_length);

  bool is_implicit() const { return implicit_; }
  std::size_t phi_count() const { return phi_count_; }
  std::size_t max_length() const { return max_length_; }
  /// Explicit patterns (empty for the implicit family).
  const std::vector<Pattern>& patterns() const { return patterns_; }

 private:
  bool implicit_ = false;
  std::size_t phi_count_ = 0;
  std::size_t max_length_ = 0;
  std::vector<Pattern> patterns_;
};

/// Two increasing position tuples on which `pattern` disagrees.
struct Counterexample {
  Pattern pattern;
  std::vector<std::size_t> holds_on;
  std::vector<std::size_t> fails_on;
};

struct IndiscernibilityReport {
  bool indiscernible = true;
  std::optional<Counterexample> counterexample;
  explicit operator bool() const { return indiscernible; }
};

IndiscernibilityReport is_delta_indiscernible(const EvalContext& ctx, const PhiSet& phi,
                                              const PatternFamily& family, const Sequence& seq);

/// Patterns of the family that hold on every increasing tuple of the sequence.
/// Lengths exceeding |seq| have no tuples; they are reported as vacuous and
/// every pattern of such a length is a member.
class EmType {
 public:
  bool contains(const Pattern& p) const;
  /// Non-vacuous members, ordered by length then type code.
  const std::vector<Pattern>& patterns() const { return members_; }
  std::size_t vacuous_from() const { return vacuous_from_; }

 private:
  friend EmType em_type(const EvalContext&, const PhiSet&, const PatternFamily&, const Sequence&);
  std::vector<Pattern> members_;
  std::size_t vacuous_from_ = 0;
  std::size_t max_length_ = 0;
};

EmType em_type(const EvalContext& ctx, const PhiSet& phi, const PatternFamily& family,
               const Sequence& seq);

/// GreedyRamsey: repeated homogenisation against a counterexample pattern.
/// Maximum: the greedy result, then a branch-and-bound search for a longest
/// indiscernible subsequence; when the node budget runs out the best one seen
/// so far is returned (never shorter than the greedy one).
enum class ExtractionStrategy { GreedyRamsey, Maximum };

const char* to_string(ExtractionStrategy s);

struct ExtractionConfig {
  std::size_t target_length = 1;
  std::size_t max_pattern_length = 4;
  /// Maximum number of homogenisation passes (one pattern fixed per pass).
  std::size_t pattern_budget = 4096;
  ExtractionStrategy strategy = ExtractionStrategy::GreedyRamsey;
  /// Search nodes for the Maximum strategy.
  std::size_t search_budget = 100'000;
};

/// Raised when the extracted subsequence is shorter than the target. The
/// achieved subsequence is still indiscernible.
class ExtractionShortfall : public Error {
 public:
  ExtractionShortfall(Sequence achieved, std::optional<Pattern> blocking, std::size_t target);
  const Sequence& achieved() const { return achieved_; }
  const std::optional<Pattern>& blocking_pattern() const { return blocking_; }

 private:
  Sequence achieved_;
  std::optional<Pattern> blocking_;
};

/// Extracts an order-preserving Delta-indiscernible subsequence. Returns the
/// input unchanged when it is already indiscernible.
Sequence extract_indiscernible(const EvalContext& ctx, const PhiSet& phi,
                               const PatternFamily& family, const Sequence& seq,
                               const ExtractionConfig& cfg);

/// Convenience: extraction against all type patterns up to cfg.max_pattern_length.
Sequence extract_indiscernible(const EvalContext& ctx, const PhiSet& phi, const Sequence& seq,
                               const ExtractionConfig& cfg);

}  // namespace flipwide
