#include "flipwide/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "flipwide/errors.hpp"

namespace flipwide {

// ---------------------------------------------------------------------------
// VertexSet / Sequence

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::range(std::size_t n) {
  std::vector<Vertex> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<Vertex>(i);
  return VertexSet(std::move(ids));
}

VertexSet VertexSet::from_bitset(const Bitset& bits) {
  std::vector<Vertex> ids;
  ids.reserve(bits.count());
  bits.for_each([&](std::size_t i) { ids.push_back(static_cast<Vertex>(i)); });
  VertexSet s;
  s.members_ = std::move(ids);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

Bitset VertexSet::to_bitset(std::size_t n) const {
  Bitset bits(n);
  for (Vertex v : members_) bits.set(v);
  return bits;
}

Sequence::Sequence(std::initializer_list<Vertex> items) : Sequence(std::vector<Vertex>(items)) {}

Sequence::Sequence(std::vector<Vertex> items) : items_(std::move(items)) {
  std::vector<Vertex> sorted = items_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("sequence contains a repeated vertex");
}

Sequence Sequence::select(std::span<const std::size_t> positions) const {
  Sequence out;
  out.items_.reserve(positions.size());
  for (std::size_t p : positions) out.items_.push_back(items_.at(p));
  return out;
}

bool Sequence::is_subsequence_of(const Sequence& other) const {
  std::size_t j = 0;
  for (Vertex v : items_) {
    while (j < other.size() && other[j] != v) ++j;
    if (j == other.size()) return false;
    ++j;
  }
  return true;
}

void check_in_range(const VertexSet& set, std::size_t n, const char* what) {
  if (set.bound() > n)
    throw InputError(std::string(what) + ": vertex " + std::to_string(set.bound() - 1) +
                     " out of range for graph of order " + std::to_string(n));
}

void check_in_range(const Sequence& seq, std::size_t n, const char* what) {
  for (Vertex v : seq)
    if (v >= n)
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) +
                       " out of range for graph of order " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n) : rows_(n, Bitset(n)), neighbors_(n) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") out of range for graph of order " + std::to_string(n));
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.rows_[u].set(v);
    g.rows_[v].set(u);
  }
  g.rebuild_lists();
  return g;
}

Graph Graph::from_rows(std::vector<Bitset> rows) {
  const std::size_t n = rows.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (rows[u].size() != n) throw InputError("adjacency row has wrong width");
    if (rows[u].test(u)) throw InputError("self-loop at vertex " + std::to_string(u));
    for (std::size_t v = 0; v < u; ++v)
      if (rows[u].test(v) != rows[v].test(u)) throw InputError("adjacency is not symmetric");
  }
  Graph g;
  g.rows_ = std::move(rows);
  g.rebuild_lists();
  return g;
}

void Graph::rebuild_lists() {
  const std::size_t n = rows_.size();
  neighbors_.assign(n, {});
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    rows_[v].for_each([&](std::size_t w) { neighbors_[v].push_back(static_cast<Vertex>(w)); });
    degree_sum += neighbors_[v].size();
  }
  edge_count_ = degree_sum / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------------------
// FlipSet

FlipSet::FlipSet(std::initializer_list<Flip> flips) {
  for (const auto& f : flips) insert(f);
}

bool FlipSet::insert(Flip f) {
  if (std::find(flips_.begin(), flips_.end(), f) != flips_.end()) return false;
  flips_.push_back(std::move(f));
  return true;
}

bool FlipSet::erase(const Flip& f) {
  auto it = std::find(flips_.begin(), flips_.end(), f);
  if (it == flips_.end()) return false;
  flips_.erase(it);
  return true;
}

void FlipSet::toggle(Flip f) {
  if (!erase(f)) flips_.push_back(std::move(f));
}

// ---------------------------------------------------------------------------
// Flip application

namespace {

// Toggles pairs of one flip directly on adjacency rows.
void toggle_rows(std::vector<Bitset>& rows, const Flip& flip) {
  const std::size_t n = rows.size();
  check_in_range(flip.a, n, "flip side A");
  check_in_range(flip.b, n, "flip side B");
  const Bitset a = flip.a.to_bitset(n);
  const Bitset b = flip.b.to_bitset(n);
  const Bitset both = a | b;
  for (std::size_t u = 0; u < n; ++u) {
    const bool in_a = a.test(u);
    const bool in_b = b.test(u);
    if (!in_a && !in_b) continue;
    const Bitset& mask = in_a && in_b ? both : (in_a ? b : a);
    rows[u] ^= mask;
    if (mask.test(u)) rows[u].flip(u);
  }
}

std::vector<Bitset> rows_of(const Graph& g) {
  std::vector<Bitset> rows;
  rows.reserve(g.size());
  for (Vertex v = 0; v < g.size(); ++v) rows.push_back(g.row(v));
  return rows;
}

}  // namespace

Graph apply_flip(const Graph& g, const Flip& flip) {
  auto rows = rows_of(g);
  toggle_rows(rows, flip);
  return Graph::from_rows(std::move(rows));
}

Graph apply_flips(const Graph& g, const FlipSet& flips) {
  auto rows = rows_of(g);
  for (const auto& f : flips) toggle_rows(rows, f);
  return Graph::from_rows(std::move(rows));
}

// ---------------------------------------------------------------------------
// Distances

namespace {

std::vector<std::size_t> bfs(const Graph& g, std::span<const Vertex> sources, std::size_t limit) {
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= g.size()) throw InputError("BFS source out of range");
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    if (dist[u] >= limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

std::vector<std::size_t> distances_from(const Graph& g, Vertex source) {
  const Vertex src[] = {source};
  return bfs(g, src, kUnreachable);
}

std::vector<std::size_t> distances_from(const Graph& g, const VertexSet& sources) {
  return bfs(g, sources.members(), kUnreachable);
}

Bitset ball_bits(const Graph& g, Vertex v, std::size_t radius) {
  const Vertex src[] = {v};
  const auto dist = bfs(g, src, radius);
  Bitset out(g.size());
  for (std::size_t w = 0; w < g.size(); ++w)
    if (dist[w] <= radius) out.set(w);
  return out;
}

VertexSet ball(const Graph& g, Vertex v, std::size_t radius) {
  return VertexSet::from_bitset(ball_bits(g, v, radius));
}

VertexSet exact_distance_layer(const Graph& g, const VertexSet& sources, std::size_t distance) {
  const auto dist = bfs(g, sources.members(), distance);
  std::vector<Vertex> out;
  for (std::size_t w = 0; w < g.size(); ++w)
    if (dist[w] == distance) out.push_back(static_cast<Vertex>(w));
  return VertexSet(std::move(out));
}

IndependenceReport is_distance_r_independent(const Graph& g, std::span<const Vertex> set,
                                             std::size_t radius) {
  Bitset members(g.size());
  for (Vertex v : set) {
    if (v >= g.size()) throw InputError("vertex out of range in independence check");
    members.set(v);
  }
  for (Vertex u : set) {
    const Vertex src[] = {u};
    const auto dist = bfs(g, src, radius);
    for (Vertex v : set)
      if (v != u && dist[v] <= radius) return {false, Edge{std::min(u, v), std::max(u, v)}};
  }
  return {};
}

DistanceTable all_pairs_distance(const Graph& g) {
  DistanceTable table(g.size());
  for (Vertex u = 0; u < g.size(); ++u) {
    const auto dist = distances_from(g, u);
    for (Vertex v = 0; v < g.size(); ++v) table.at(u, v) = dist[v];
  }
  return table;
}

}  // namespace flipwide
