#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipwide/bitset.hpp"
#include "flipwide/graph.hpp"

namespace flipwide {

/// Radius-r balls of every vertex of a graph, computed once by BFS.
class BallCache {
 public:
  BallCache(std::shared_ptr<const Graph> graph, std::size_t radius);

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  std::size_t radius() const { return radius_; }
  const Bitset& ball(Vertex v) const { return balls_[v]; }

 private:
  std::shared_ptr<const Graph> graph_;
  std::size_t radius_;
  std::vector<Bitset> balls_;
};

/// A graph with interpreted constants c_0..c_{k-1}, the balls of radius
/// `ball_radius` around every vertex, and the edge-neighbourhood mask of each
/// constant. Immutable; safe to share across threads.
class EvalContext {
 public:
  EvalContext(std::shared_ptr<const Graph> graph, std::size_t ball_radius,
              std::vector<Vertex> constants = {});
  EvalContext(std::shared_ptr<const BallCache> balls, std::vector<Vertex> constants);

  /// Same graph and balls, different constants.
  EvalContext with_constants(std::vector<Vertex> constants) const;

  const Graph& graph() const { return balls_->graph(); }
  const std::shared_ptr<const BallCache>& ball_cache() const { return balls_; }
  std::size_t ball_radius() const { return balls_->radius(); }
  const Bitset& ball(Vertex v) const { return balls_->ball(v); }
  std::span<const Vertex> constants() const { return constants_; }
  std::size_t constant_count() const { return constants_.size(); }
  Vertex constant(std::size_t c) const { return constants_.at(c); }
  const Bitset& constant_neighborhood(std::size_t c) const { return constant_marks_.at(c); }

 private:
  std::shared_ptr<const BallCache> balls_;
  std::vector<Vertex> constants_;
  std::vector<Bitset> constant_marks_;
};

enum class AtomKind : std::uint8_t {
  Edge,     // E(x, y)
  DistLeq,  // dist(x, y) <= ball_radius
  EqNbhd,   // x is Edge-equivalent to constant c over the ball of y
};

struct Atom {
  AtomKind kind = AtomKind::Edge;
  std::size_t constant = 0;  // EqNbhd only

  static Atom edge() { return {AtomKind::Edge, 0}; }
  static Atom dist_leq() { return {AtomKind::DistLeq, 0}; }
  static Atom eq_nbhd(std::size_t c) { return {AtomKind::EqNbhd, c}; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

using PhiSet = std::vector<Atom>;

/// Upper bound on |Phi| (truth tables have 2^|Phi| rows).
inline constexpr std::size_t kMaxPhiSize = 16;

/// {eq(c_0), ..., eq(c_{count-1})}.
PhiSet eq_phi_set(std::size_t count);

/// Throws InputError if `phi` is too large or references a missing constant.
void validate_phi(const EvalContext& ctx, std::span<const Atom> phi);

/// x and y are Edge-equivalent over the ball of y with respect to constant c:
/// same membership in ball(y) and the same neighbours inside it.
bool eval_eq_nbhd(const EvalContext& ctx, std::size_t c, Vertex x, Vertex y);
bool eval_atom(const EvalContext& ctx, const Atom& atom, Vertex x, Vertex y);

/// A complete conjunction of Phi-literals. Bit j set means Phi[j] occurs positively.
struct PhiType {
  std::uint32_t positive = 0;
  friend auto operator<=>(const PhiType&, const PhiType&) = default;
};

inline std::size_t type_count(std::size_t phi_count) { return std::size_t{1} << phi_count; }

/// The unique Phi-type realised by (x, y).
PhiType type_of(const EvalContext& ctx, std::span<const Atom> phi, Vertex x, Vertex y);
bool eval_type(const EvalContext& ctx, std::span<const Atom> phi, PhiType tau, Vertex x, Vertex y);

/// A boolean combination over Phi, stored as its set of satisfying types.
class TypeSet {
 public:
  TypeSet() = default;
  explicit TypeSet(std::size_t phi_count) : bits_(type_count(phi_count)) {}

  static TypeSet single(std::size_t phi_count, PhiType t);
  static TypeSet all(std::size_t phi_count);

  bool contains(PhiType t) const { return t.positive < bits_.size() && bits_.test(t.positive); }
  void add(PhiType t) { bits_.set(t.positive); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  /// Number of types in the universe (2^|Phi|).
  std::size_t universe() const { return bits_.size(); }
  std::vector<PhiType> types() const;
  friend bool operator==(const TypeSet&, const TypeSet&) = default;

 private:
  Bitset bits_;
};

/// A Phi-pattern (entry_1, ..., entry_l); gamma_pattern(y_1..y_l) holds iff
/// some z satisfies entry_i(z, y_i) for every i.
struct Pattern {
  std::size_t phi_count = 0;
  std::vector<TypeSet> entries;

  static Pattern of_types(std::size_t phi_count, std::span<const PhiType> types);
  std::size_t length() const { return entries.size(); }
  bool is_type_pattern() const;
  /// Throws InputError unless non-empty with non-empty entries over phi_count.
  void validate() const;
  /// Compact text form, e.g. "(+E,-E)" style is not available for generic
  /// Phi, so entries are printed as type-code sets: "({1},{0,2})".
  std::string to_string() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Evaluates gamma_pattern on `tuple`; returns the lowest witness z, if any.
std::optional<Vertex> eval_gamma(const EvalContext& ctx, std::span<const Atom> phi,
                                 const Pattern& pattern, std::span<const Vertex> tuple);

inline constexpr std::size_t kDefaultPatternCap = std::size_t{1} << 20;

/// All type patterns (single-type entries) of length 1..k, ordered by length
/// then lexicographically by type code. Count = sum_{i=1..k} (2^phi_count)^i.
std::vector<Pattern> enumerate_type_patterns(std::size_t phi_count, std::size_t k,
                                             std::size_t cap = kDefaultPatternCap);
/// Number of patterns enumerate_type_patterns would produce (saturating).
std::size_t type_pattern_count(std::size_t phi_count, std::size_t k);

/// Type codes of (z, seq_j) for every vertex z and sequence position j.
class TypeTable {
 public:
  TypeTable(const EvalContext& ctx, std::span<const Atom> phi, std::span<const Vertex> seq);

  std::size_t vertices() const { return n_; }
  std::size_t positions() const { return m_; }
  std::size_t phi_count() const { return phi_count_; }
  std::uint32_t at(Vertex z, std::size_t j) const { return codes_[z * m_ + j]; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t phi_count_ = 0;
  std::vector<std::uint32_t> codes_;
};

}  // namespace flipwide
