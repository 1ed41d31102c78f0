#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "flipwide/graph.hpp"

namespace flipwide {

enum class Family {
  Clique,
  Edgeless,
  Matching,
  HalfGraph,
  StarForest,
  Path,
  Grid,
  SubdividedClique,
  ShatterGadget,
  RandomBoundedDegree,
};

/// Size parameters by family:
///   clique, edgeless, path, subdivided_clique: n
///   matching, half_graph: n (pairs / side length)
///   star_forest: n stars, m leaves each
///   grid: n rows, m columns
///   shatter_gadget: n = k (left side size, at most 20)
///   random_bounded_degree: n vertices, m = max degree, seed
struct FamilySpec {
  Family family = Family::Clique;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
/// Number of size parameters the family takes (1 or 2).
std::size_t family_arity(Family f);

/// Vertex numbering:
///   matching(n):           left i, right n + i, edges {i, n + i}
///   half_graph(n):         a_i = i, b_j = n + j, adjacent iff i <= j
///   star_forest(s, l):     star t has center t*(l+1) followed by its l leaves
///   grid(r, c):            cell (x, y) = x*c + y
///   subdivided_clique(n):  principals 0..n-1, then one vertex per pair {i<j}
///                          in lexicographic order
///   shatter_gadget(k):     left 0..k-1, right k + J adjacent to left i iff bit i of J
///   random_bounded_degree: n*d*4 attempts; draw u, v from std::mt19937_64(seed)
///                          (each value mod n) and add {u, v} when u != v, the edge
///                          is new, and both degrees are below d
Graph generate(const FamilySpec& spec);

Graph complement(const Graph& g);
/// Connects every pair at distance <= p (p >= 1).
Graph power(const Graph& g, std::size_t p);

Sequence matching_left(std::size_t n);
Sequence matching_right(std::size_t n);
Sequence half_graph_a(std::size_t n);
Sequence half_graph_b(std::size_t n);
Sequence star_centers(std::size_t stars, std::size_t leaves);
Sequence shatter_left(std::size_t k);

}  // namespace flipwide
