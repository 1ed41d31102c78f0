// Test-only reference implementations. Nothing here calls into the library's
// BFS, ball cache or bitset code paths.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "flipwide/formulas.hpp"
#include "flipwide/graph.hpp"

namespace flipwide::testing {

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

using Matrix = std::vector<std::vector<char>>;
using DistMatrix = std::vector<std::vector<std::size_t>>;

inline Matrix adjacency(const Graph& g) {
  Matrix m(g.size(), std::vector<char>(g.size(), 0));
  for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = 1;
  return m;
}

inline DistMatrix floyd_warshall(const Matrix& adj) {
  const std::size_t n = adj.size();
  DistMatrix d(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (adj[u][v]) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != kInf && d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline DistMatrix floyd_warshall(const Graph& g) { return floyd_warshall(adjacency(g)); }

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

/// Pair-by-pair parity of covering flips, straight from the definition.
inline Matrix naive_apply(const Matrix& adj, const std::vector<Flip>& flips) {
  const std::size_t n = adj.size();
  Matrix out = adj;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      std::size_t covering = 0;
      for (const Flip& f : flips) {
        const bool ab = f.a.contains(static_cast<Vertex>(u)) && f.b.contains(static_cast<Vertex>(v));
        const bool ba = f.b.contains(static_cast<Vertex>(u)) && f.a.contains(static_cast<Vertex>(v));
        if (ab || ba) ++covering;
      }
      if (covering % 2) out[u][v] = out[v][u] = static_cast<char>(!out[u][v]);
    }
  return out;
}

/// Phi-type of (x, y) evaluated from the formula definitions over a distance matrix.
inline std::uint32_t brute_type(const Matrix& adj, const DistMatrix& d, std::size_t radius,
                                const std::vector<Vertex>& constants, const PhiSet& phi, Vertex x,
                                Vertex y) {
  const std::size_t n = adj.size();
  auto in_ball = [&](std::size_t w) { return d[y][w] <= radius; };
  std::uint32_t t = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    bool v = false;
    switch (phi[j].kind) {
      case AtomKind::Edge: v = adj[x][y]; break;
      case AtomKind::DistLeq: v = d[x][y] <= radius; break;
      case AtomKind::EqNbhd: {
        const Vertex c = constants[phi[j].constant];
        v = in_ball(x) == in_ball(c);
        for (std::size_t w = 0; w < n && v; ++w)
          if (in_ball(w) && adj[x][w] != adj[c][w]) v = false;
        break;
      }
    }
    if (v) t |= std::uint32_t{1} << j;
  }
  return t;
}

/// Calls f(tuple) for every increasing tuple of `len` positions out of m.
template <typename F>
void each_tuple(std::size_t m, std::size_t len, F&& f) {
  if (len > m) return;
  std::vector<std::size_t> t(len);
  for (std::size_t i = 0; i < len; ++i) t[i] = i;
  while (true) {
    f(t);
    std::size_t i = len;
    while (i > 0 && t[i - 1] == m - len + i - 1) --i;
    if (i == 0) return;
    ++t[i - 1];
    for (std::size_t j = i; j < len; ++j) t[j] = t[j - 1] + 1;
  }
}

/// Definition-level indiscernibility check against every type pattern of
/// length 1..k (explicitly enumerated).
inline bool brute_indiscernible(const Graph& g, std::size_t radius,
                                const std::vector<Vertex>& constants, const PhiSet& phi,
                                const std::vector<Vertex>& seq, std::size_t k) {
  const Matrix adj = adjacency(g);
  const DistMatrix d = floyd_warshall(adj);
  const std::size_t n = g.size(), m = seq.size();
  std::vector<std::vector<std::uint32_t>> type(n, std::vector<std::uint32_t>(m));
  for (Vertex z = 0; z < n; ++z)
    for (std::size_t j = 0; j < m; ++j) type[z][j] = brute_type(adj, d, radius, constants, phi, z, seq[j]);
  const std::uint32_t base = std::uint32_t{1} << phi.size();
  for (std::size_t len = 1; len <= k && len <= m; ++len) {
    std::vector<std::uint32_t> pat(len, 0);
    while (true) {
      int truth = -1;
      bool ok = true;
      each_tuple(m, len, [&](const std::vector<std::size_t>& t) {
        if (!ok) return;
        bool holds = false;
        for (Vertex z = 0; z < n && !holds; ++z) {
          bool all = true;
          for (std::size_t i = 0; i < len && all; ++i) all = type[z][t[i]] == pat[i];
          holds = all;
        }
        if (truth == -1) truth = holds;
        else if (truth != static_cast<int>(holds)) ok = false;
      });
      if (!ok) return false;
      std::size_t pos = len;
      while (pos > 0 && ++pat[pos - 1] == base) pat[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return true;
}

}  // namespace flipwide::testing
