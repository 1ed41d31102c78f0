#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flipwide/bitset.hpp"

namespace flipwide {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids);
  explicit VertexSet(std::vector<Vertex> ids);

  static VertexSet range(std::size_t n);
  static VertexSet from_bitset(const Bitset& bits);

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Largest member + 1, or 0 when empty.
  std::size_t bound() const { return members_.empty() ? 0 : members_.back() + 1; }
  Bitset to_bitset(std::size_t n) const;

  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Ordered list of pairwise distinct vertices.
class Sequence {
 public:
  Sequence() = default;
  Sequence(std::initializer_list<Vertex> items);
  explicit Sequence(std::vector<Vertex> items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Vertex>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// Subsequence at the given (strictly increasing) positions.
  Sequence select(std::span<const std::size_t> positions) const;
  bool is_subsequence_of(const Sequence& other) const;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Vertex> items_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
  /// and out-of-range ids raise InputError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  /// Builds a graph from symmetric adjacency rows (diagonal must be clear).
  static Graph from_rows(std::vector<Bitset> rows);

  std::size_t size() const { return rows_.size(); }
  bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(v); }
  const Bitset& row(Vertex v) const { return rows_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const { return neighbors_[v]; }
  std::size_t degree(Vertex v) const { return neighbors_[v].size(); }
  std::size_t edge_count() const { return edge_count_; }
  /// Edges (u < v) in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  void rebuild_lists();

  std::vector<Bitset> rows_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::size_t edge_count_ = 0;
};

/// A flip (A, B): toggles every pair {u, v}, u != v, with (u, v) in
/// (A x B) u (B x A). A pair is toggled at most once per flip.
struct Flip {
  VertexSet a;
  VertexSet b;
  friend auto operator<=>(const Flip&, const Flip&) = default;
};

/// Set of pairwise distinct flips, kept in insertion order.
class FlipSet {
 public:
  FlipSet() = default;
  FlipSet(std::initializer_list<Flip> flips);

  /// Adds a flip; returns false (and leaves the set unchanged) on a duplicate.
  bool insert(Flip f);
  /// Symmetric-difference update: removes `f` if present, inserts it
  /// otherwise. Keeps G + set equal to sequential application.
  void toggle(Flip f);
  bool erase(const Flip& f);

  std::size_t size() const { return flips_.size(); }
  bool empty() const { return flips_.empty(); }
  const std::vector<Flip>& flips() const { return flips_; }
  auto begin() const { return flips_.begin(); }
  auto end() const { return flips_.end(); }

 private:
  std::vector<Flip> flips_;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

Graph apply_flip(const Graph& g, const Flip& flip);
Graph apply_flips(const Graph& g, const FlipSet& flips);

/// BFS distances from `source`; kUnreachable for other components.
std::vector<std::size_t> distances_from(const Graph& g, Vertex source);
/// Multi-source BFS: distance of every vertex to the nearest member of `sources`.
std::vector<std::size_t> distances_from(const Graph& g, const VertexSet& sources);

VertexSet ball(const Graph& g, Vertex v, std::size_t radius);
Bitset ball_bits(const Graph& g, Vertex v, std::size_t radius);
VertexSet exact_distance_layer(const Graph& g, const VertexSet& sources, std::size_t distance);

struct IndependenceReport {
  bool independent = true;
  std::optional<Edge> violation;  // a pair at distance <= r when not independent
  explicit operator bool() const { return independent; }
};

IndependenceReport is_distance_r_independent(const Graph& g, std::span<const Vertex> set,
                                             std::size_t radius);
inline IndependenceReport is_distance_r_independent(const Graph& g, const VertexSet& set,
                                                    std::size_t radius) {
  return is_distance_r_independent(g, std::span<const Vertex>(set.members()), radius);
}

/// Row-major n x n table of BFS distances.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}
  std::size_t size() const { return n_; }
  std::size_t operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }
  std::size_t& at(Vertex u, Vertex v) { return d_[u * n_ + v]; }
  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> d_;
};

DistanceTable all_pairs_distance(const Graph& g);

/// Throws InputError unless every member is < n.
void check_in_range(const VertexSet& set, std::size_t n, const char* what);
void check_in_range(const Sequence& seq, std::size_t n, const char* what);

}  // namespace flipwide
