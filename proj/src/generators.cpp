#include "flipwide/generators.hpp"

#include <array>
#include <random>
#include <string>
#include <vector>

#include "flipwide/errors.hpp"

namespace flipwide {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FamilyInfo, 10> kFamilies{{
    {Family::Clique, "clique", 1},
    {Family::Edgeless, "edgeless", 1},
    {Family::Matching, "matching", 1},
    {Family::HalfGraph, "half_graph", 1},
    {Family::StarForest, "star_forest", 2},
    {Family::Path, "path", 1},
    {Family::Grid, "grid", 2},
    {Family::SubdividedClique, "subdivided_clique", 1},
    {Family::ShatterGadget, "shatter_gadget", 1},
    {Family::RandomBoundedDegree, "random_bounded_degree", 2},
}};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i;
  throw InputError("unknown family");
}

Sequence iota_seq(std::size_t from, std::size_t count) {
  std::vector<Vertex> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = static_cast<Vertex>(from + i);
  return Sequence(std::move(v));
}

constexpr std::size_t kMaxOrder = std::size_t{1} << 24;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }
std::size_t family_arity(Family f) { return info(f).arity; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& i : kFamilies)
    if (i.name == name) return i.family;
  return std::nullopt;
}

Graph generate(const FamilySpec& spec) {
  const std::size_t n = spec.n, m = spec.m;
  const std::string fam(family_name(spec.family));
  require(n >= 1, fam + ": size parameter must be positive");
  if (family_arity(spec.family) == 2)
    require(m >= 1, fam + ": second parameter must be positive");
  std::vector<Edge> edges;
  auto V = [](std::size_t x) { return static_cast<Vertex>(x); };

  switch (spec.family) {
    case Family::Clique:
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(V(u), V(v));
      return Graph::from_edges(n, edges);
    case Family::Edgeless:
      return Graph(n);
    case Family::Matching:
      for (std::size_t i = 0; i < n; ++i) edges.emplace_back(V(i), V(n + i));
      return Graph::from_edges(2 * n, edges);
    case Family::HalfGraph:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) edges.emplace_back(V(i), V(n + j));
      return Graph::from_edges(2 * n, edges);
    case Family::StarForest: {
      require(n * (m + 1) <= kMaxOrder, fam + ": too large");
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t c = t * (m + 1);
        for (std::size_t l = 1; l <= m; ++l) edges.emplace_back(V(c), V(c + l));
      }
      return Graph::from_edges(n * (m + 1), edges);
    }
    case Family::Path:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(V(i), V(i + 1));
      return Graph::from_edges(n, edges);
    case Family::Grid:
      require(n * m <= kMaxOrder, fam + ": too large");
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          if (x + 1 < n) edges.emplace_back(V(x * m + y), V((x + 1) * m + y));
          if (y + 1 < m) edges.emplace_back(V(x * m + y), V(x * m + y + 1));
        }
      return Graph::from_edges(n * m, edges);
    case Family::SubdividedClique: {
      std::size_t next = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++next) {
          edges.emplace_back(V(i), V(next));
          edges.emplace_back(V(j), V(next));
        }
      return Graph::from_edges(next, edges);
    }
    case Family::ShatterGadget: {
      require(n <= 20, fam + ": k must be at most 20");
      const std::size_t subsets = std::size_t{1} << n;
      for (std::size_t J = 0; J < subsets; ++J)
        for (std::size_t i = 0; i < n; ++i)
          if ((J >> i) & 1u) edges.emplace_back(V(i), V(n + J));
      return Graph::from_edges(n + subsets, edges);
    }
    case Family::RandomBoundedDegree: {
      std::vector<Bitset> rows(n, Bitset(n));
      std::vector<std::size_t> deg(n, 0);
      std::mt19937_64 rng(spec.seed);
      for (std::size_t t = 0; t < n * m * 4; ++t) {
        const std::size_t u = rng() % n;
        const std::size_t v = rng() % n;
        if (u == v || rows[u].test(v) || deg[u] >= m || deg[v] >= m) continue;
        rows[u].set(v);
        rows[v].set(u);
        ++deg[u];
        ++deg[v];
      }
      return Graph::from_rows(std::move(rows));
    }
  }
  throw InputError("unknown family");
}

Graph complement(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) rows[u].set(v);
  return Graph::from_rows(std::move(rows));
}

Graph power(const Graph& g, std::size_t p) {
  if (p < 1) throw InputError("power: exponent must be at least 1");
  const std::size_t n = g.size();
  std::vector<Bitset> rows(n);
  for (Vertex u = 0; u < n; ++u) {
    rows[u] = ball_bits(g, u, p);
    rows[u].reset(u);
  }
  return Graph::from_rows(std::move(rows));
}

Sequence matching_left(std::size_t n) { return iota_seq(0, n); }
Sequence matching_right(std::size_t n) { return iota_seq(n, n); }
Sequence half_graph_a(std::size_t n) { return iota_seq(0, n); }
Sequence half_graph_b(std::size_t n) { return iota_seq(n, n); }
Sequence shatter_left(std::size_t k) { return iota_seq(0, k); }

Sequence star_centers(std::size_t stars, std::size_t leaves) {
  std::vector<Vertex> v(stars);
  for (std::size_t t = 0; t < stars; ++t) v[t] = static_cast<Vertex>(t * (leaves + 1));
  return Sequence(std::move(v));
}

}  // namespace flipwide
