#include "flipwide/flipwide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "flipwide/formulas.hpp"

namespace flipwide {

const char* to_string(LevelCase c) {
  switch (c) {
    case LevelCase::Base: return "base";
    case LevelCase::Even: return "even";
    case LevelCase::Odd: return "odd";
  }
  return "?";
}

FlipWideShortfall::FlipWideShortfall(FlipWideResult result, std::size_t target)
    : BudgetError("flip-widen achieved |B| = " + std::to_string(result.b_set.size()) +
                  " below the requested " + std::to_string(target)),
      result_(std::move(result)),
      target_(target) {}

namespace {

std::string pair_text(Edge e) {
  return "(" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")";
}

// (sample index, S-neighbourhood with sample 0 as the most significant bit).
using Color = std::pair<std::size_t, std::uint64_t>;

std::vector<Flip> even_flips(const Graph& gr, const SampleSetResult& ss, const VertexSet& layer) {
  const std::size_t k = ss.samples.size();
  std::map<Color, std::vector<Vertex>> classes;
  std::vector<Color> col(gr.size());
  for (Vertex x : layer) {
    std::uint64_t nb = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (gr.adjacent(x, ss.samples[j])) nb |= std::uint64_t{1} << (k - 1 - j);
    col[x] = {ss.certificates[x].s_lt, nb};
    classes[col[x]].push_back(x);
  }
  auto in_r = [k](const Color& c1, const Color& c2) {
    return (c2.second >> (k - 1 - c1.first)) & 1u;
  };

  // Across distinct balls the relation must match adjacency in both directions.
  const auto& members = layer.members();
  for (std::size_t p = 0; p < members.size(); ++p)
    for (std::size_t q = p + 1; q < members.size(); ++q) {
      const Vertex x = members[p], y = members[q];
      if (ss.certificates[x].ex == ss.certificates[y].ex) continue;
      const bool adj = gr.adjacent(x, y);
      if (adj != static_cast<bool>(in_r(col[x], col[y])) ||
          adj != static_cast<bool>(in_r(col[y], col[x])))
        throw InvariantError("colour relation disagrees with adjacency on " +
                             pair_text({x, y}));
    }

  std::vector<Flip> out;
  for (auto i = classes.begin(); i != classes.end(); ++i)
    for (auto j = i; j != classes.end(); ++j) {
      if (i == j && i->second.size() < 2) continue;  // toggles no pair
      if (in_r(i->first, j->first)) out.push_back(Flip{VertexSet(i->second), VertexSet(j->second)});
    }
  return out;
}

std::vector<Flip> odd_flips(const Graph& gr, const SampleSetResult& ss,
                            const std::vector<std::size_t>& dist, std::size_t i) {
  std::vector<Flip> out;
  for (std::size_t s = 0; s < ss.samples.size(); ++s) {
    std::vector<Vertex> c, d;
    for (Vertex a = 0; a < gr.size(); ++a)
      if (ss.certificates[a].s_lt == s && dist[a] >= i + 1) c.push_back(a);
    for (Vertex w : gr.neighbors(ss.samples[s]))
      if (dist[w] == i) d.push_back(w);
    if (c.empty() || d.empty()) continue;
    out.push_back(Flip{VertexSet(std::move(c)), VertexSet(std::move(d))});
  }
  return out;
}

}  // namespace

FlipWideResult flip_widen(const FlipWideRequest& req) {
  const Graph& g = req.graph;
  if (req.target_size < 1) throw InputError("flip-widen: target size must be at least 1");
  check_in_range(req.a_set, g.size(), "flip-widen A");

  FlipWideResult res;
  res.b_set = req.a_set;
  res.trace.push_back(LevelTrace{0, req.a_set, {}, LevelCase::Base, {}, false});

  auto current = std::make_shared<const Graph>(g);
  for (std::size_t r = 0; r < req.radius; ++r) {
    const Graph& gr = *current;
    LevelTrace level;
    level.level = r + 1;
    level.parity = (r % 2 == 0) ? LevelCase::Even : LevelCase::Odd;

    if (is_distance_r_independent(gr, res.b_set.items(), r + 1)) {
      level.surviving = res.b_set;
      level.shortcut = true;
      res.trace.push_back(std::move(level));
      continue;
    }

    const std::size_t i = r / 2;
    const EvalContext base(current, i);
    const DisjointFamilyInput input{res.b_set, i, SampleMode::Stable};
    SampleSetResult ss = build_sample_set(base, input, req.budget, req.extraction);

    const VertexSet survivors(ss.subseq.items());
    const auto dist = distances_from(gr, survivors);
    std::vector<Flip> added;
    if (level.parity == LevelCase::Even) {
      VertexSet layer = exact_distance_layer(gr, survivors, i);
      added = even_flips(gr, ss, layer);
    } else {
      added = odd_flips(gr, ss, dist, i);
    }

    FlipSet step;
    for (const Flip& f : added) step.toggle(f);
    auto next = std::make_shared<const Graph>(apply_flips(gr, step));
    if (auto rep = is_distance_r_independent(*next, ss.subseq.items(), r + 1); !rep)
      throw InvariantError("level " + std::to_string(r + 1) + ": pair " + pair_text(*rep.violation) +
                           " still within distance " + std::to_string(r + 1));

    for (const Flip& f : added) res.flip_set.toggle(f);
    res.b_set = ss.subseq;
    level.surviving = ss.subseq;
    level.flips = std::move(added);
    level.samples = ss.samples;
    res.trace.push_back(std::move(level));
    current = std::move(next);
  }

  if (res.b_set.size() < req.target_size) throw FlipWideShortfall(std::move(res), req.target_size);
  return res;
}

FlipWideVerdict verify_flip_wide(const Graph& g, const FlipWideResult& res, std::size_t radius) {
  const std::size_t n = g.size();
  for (Vertex b : res.b_set)
    if (b >= n) return {false, std::nullopt, "b_set member " + std::to_string(b) + " out of range"};

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  for (const Flip& f : res.flip_set) {
    std::vector<std::vector<char>> hit(n, std::vector<char>(n, 0));
    auto touch = [&](const VertexSet& x, const VertexSet& y) {
      for (Vertex u : x)
        for (Vertex v : y) {
          if (u >= n || v >= n) return false;
          if (u != v) hit[u][v] = hit[v][u] = 1;
        }
      return true;
    };
    if (!touch(f.a, f.b) || !touch(f.b, f.a))
      return {false, std::nullopt, "flip references a vertex out of range"};
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) adj[u][v] ^= hit[u][v];
  }

  std::vector<char> in_b(n, 0);
  for (Vertex b : res.b_set) in_b[b] = 1;
  for (Vertex s : res.b_set) {
    std::vector<std::size_t> dist(n, kUnreachable);
    std::deque<Vertex> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      if (dist[u] >= radius) continue;
      for (Vertex v = 0; v < n; ++v)
        if (adj[u][v] && dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          if (in_b[v]) {
            const Edge e{std::min(s, v), std::max(s, v)};
            return {false, e,
                    "pair " + pair_text(e) + " at distance " + std::to_string(dist[v]) + " <= " +
                        std::to_string(radius)};
          }
          queue.push_back(v);
        }
    }
  }
  return {};
}

}  // namespace flipwide
