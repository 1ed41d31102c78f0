#include "flipwide/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "flipwide/errors.hpp"

namespace flipwide {

std::size_t ConnectionProfile::positives() const {
  return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), true));
}

ConnectionProfile connection_profile(const Graph& g, Vertex b, const Sequence& seq) {
  check_in_range(seq, g.size(), "connection profile");
  if (b >= g.size()) throw InputError("connection profile: vertex out of range");
  ConnectionProfile p;
  p.truth.reserve(seq.size());
  for (Vertex y : seq) p.truth.push_back(g.adjacent(b, y));
  return p;
}

RankResult alternation_rank(const Graph& g, const Sequence& seq) {
  RankResult best;
  if (seq.empty()) return best;
  for (Vertex b = 0; b < g.size(); ++b) {
    const auto p = connection_profile(g, b, seq);
    std::vector<std::size_t> starts{0};
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p.truth[i] != p.truth[i - 1]) starts.push_back(i);
    if (!best.witness || starts.size() - 1 > best.rank) {
      best.rank = starts.size() - 1;
      best.witness = b;
      best.indices = std::move(starts);
    }
  }
  return best;
}

RankResult exception_rank(const Graph& g, const Sequence& seq) {
  RankResult best;
  if (seq.empty()) return best;
  for (Vertex b = 0; b < g.size(); ++b) {
    const auto p = connection_profile(g, b, seq);
    const std::size_t pos = p.positives();
    const std::size_t r = std::min(pos, p.size() - pos);
    if (best.witness && r <= best.rank) continue;
    best.rank = r;
    best.witness = b;
    best.indices.clear();
    for (bool want : {true, false}) {
      std::size_t taken = 0;
      for (std::size_t i = 0; i < p.size() && taken < r; ++i)
        if (p.truth[i] == want) {
          best.indices.push_back(i);
          ++taken;
        }
    }
  }
  return best;
}

SequenceDecomposition decompose_sequence_types(const EvalContext& ctx, const PhiSet& phi,
                                               const Sequence& seq, Vertex a,
                                               DecompositionMode mode) {
  validate_phi(ctx, phi);
  check_in_range(seq, ctx.graph().size(), "decompose");
  if (a >= ctx.graph().size()) throw InputError("decompose: vertex out of range");
  if (seq.empty()) throw InputError("decompose: empty sequence");
  const std::size_t n = seq.size();
  std::vector<PhiType> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = type_of(ctx, phi, a, seq[i]);

  SequenceDecomposition out;
  if (std::all_of(t.begin(), t.end(), [&](PhiType x) { return x == t[0]; })) {
    out.decomposition = TypeDecomposition{n - 1, t[0], t[0]};
    return out;
  }

  if (mode == DecompositionMode::Nip) {
    std::size_t p = 0;
    while (t[p] == t[0]) ++p;
    std::size_t q = n - 1;
    while (t[q] == t[n - 1]) --q;
    if (q <= p) {
      out.decomposition = TypeDecomposition{q, t[0], t[n - 1]};
    } else {
      out.falsifier = TypeFalsifier{{0, p, q, n - 1}, {t[0], t[p], t[q], t[n - 1]}};
    }
    return out;
  }

  // A valid all-but-one type equals t[0], or t[1] when the exception is position 0.
  for (PhiType tau : {t[0], t[1]}) {
    std::vector<std::size_t> off;
    for (std::size_t i = 0; i < n; ++i)
      if (t[i] != tau) off.push_back(i);
    if (off.size() == 1 && (!out.decomposition || off[0] < out.decomposition->ex))
      out.decomposition = TypeDecomposition{off[0], tau, tau};
  }
  if (out.decomposition) return out;

  std::vector<std::size_t> pos{0};
  for (std::size_t i = 1; i < n && pos.size() < 3; ++i)
    if (t[i] != t[0]) pos.push_back(i);
  if (t[pos[1]] == t[pos[2]]) {
    for (std::size_t i = 1; i < n; ++i)
      if (t[i] != t[pos[1]]) {
        pos.push_back(i);
        break;
      }
    std::sort(pos.begin(), pos.end());
  }
  TypeFalsifier f;
  f.positions = pos;
  for (std::size_t i : pos) f.types.push_back(t[i]);
  out.falsifier = std::move(f);
  return out;
}

// ---------------------------------------------------------------------------
// Witness validation

namespace {

bool distinct(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::vector<std::pair<std::size_t, std::size_t>> lex_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace

bool validate_witness(const Graph& g, const Witness& w) {
  const std::size_t n = g.size();
  for (Vertex v : w.a)
    if (v >= n) return false;
  for (Vertex v : w.b)
    if (v >= n) return false;
  if (!distinct(w.a) || !distinct(w.b)) return false;
  switch (w.kind) {
    case WitnessKind::Order:
      if (w.a.size() != w.k || w.b.size() != w.k) return false;
      for (std::size_t i = 0; i < w.k; ++i)
        for (std::size_t j = 0; j < w.k; ++j)
          if (g.adjacent(w.a[i], w.b[j]) != (i <= j)) return false;
      return true;
    case WitnessKind::Shattering:
      if (w.k >= 32 || w.a.size() != w.k || w.b.size() != (std::size_t{1} << w.k)) return false;
      for (std::size_t i = 0; i < w.k; ++i)
        for (std::size_t J = 0; J < w.b.size(); ++J)
          if (g.adjacent(w.a[i], w.b[J]) != static_cast<bool>((J >> i) & 1u)) return false;
      return true;
    case WitnessKind::Pairing: {
      const auto pairs = lex_pairs(w.k);
      if (w.b.size() != w.k || w.a.size() != pairs.size()) return false;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        for (std::size_t l = 0; l < w.k; ++l)
          if (g.adjacent(w.a[p], w.b[l]) != (l == pairs[p].first || l == pairs[p].second))
            return false;
      return true;
    }
  }
  return false;
}

const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::Randomized: return "randomized";
    case SearchMode::Budget: return "budget";
  }
  return "?";
}

const char* to_string(CanonicalKind k) {
  switch (k) {
    case CanonicalKind::Matching: return "matching";
    case CanonicalKind::CoMatching: return "co-matching";
    case CanonicalKind::Ladder: return "ladder";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Witness searches

namespace {

struct OutOfNodes {};

struct NodeCounter {
  std::size_t used = 0;
  std::size_t cap = 0;
  void tick() {
    if (++used > cap) throw OutOfNodes{};
  }
};

using Search = std::function<std::optional<Witness>(const std::vector<Vertex>&, NodeCounter&)>;

void guard(const Graph& g, std::size_t k, const SearchOptions& opt, const char* what) {
  if (k < 1) throw InputError(std::string(what) + ": k must be at least 1");
  if (g.size() > opt.max_vertices || k > opt.max_k)
    throw BudgetError(std::string(what) + ": n = " + std::to_string(g.size()) + ", k = " +
                      std::to_string(k) + " exceeds the brute-force guard");
}

WitnessSearch drive(std::size_t n, const SearchOptions& opt, const Search& search) {
  WitnessSearch out;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  NodeCounter c{0, opt.node_budget};
  try {
    out.witness = search(order, c);
    out.mode = SearchMode::Exhaustive;
    out.nodes = c.used;
    return out;
  } catch (const OutOfNodes&) {
    out.nodes = c.used;
  }
  if (opt.restarts == 0) {
    out.mode = SearchMode::Budget;
    return out;
  }
  std::mt19937_64 rng(opt.seed);
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    std::shuffle(order.begin(), order.end(), rng);
    NodeCounter rc{0, opt.node_budget};
    try {
      auto w = search(order, rc);
      out.nodes += rc.used;
      out.witness = std::move(w);
      // A completed pass over a permuted order is still a full search.
      out.mode = out.witness ? SearchMode::Randomized : SearchMode::Exhaustive;
      return out;
    } catch (const OutOfNodes&) {
      out.nodes += rc.used;
    }
  }
  out.mode = SearchMode::Randomized;
  return out;
}

}  // namespace

WitnessSearch order_property_witness(const Graph& g, std::size_t k, const SearchOptions& opt) {
  guard(g, k, opt, "order property");
  const std::size_t n = g.size();
  return drive(n, opt, [&](const std::vector<Vertex>& order, NodeCounter& c) -> std::optional<Witness> {
    std::vector<Vertex> a(k), b(k);
    std::vector<char> used_a(n, 0), used_b(n, 0);
    // Slots a_0, b_0, a_1, b_1, ...; a_i must miss b_0..b_{i-1}, b_i must hit a_0..a_i.
    std::function<bool(std::size_t)> rec = [&](std::size_t slot) {
      if (slot == 2 * k) return true;
      const std::size_t i = slot / 2;
      const bool a_side = slot % 2 == 0;
      for (Vertex v : order) {
        c.tick();
        if (a_side) {
          if (used_a[v] || g.degree(v) < k - i) continue;
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j) ok = !g.adjacent(v, b[j]);
          if (!ok) continue;
          a[i] = v;
          used_a[v] = 1;
          if (rec(slot + 1)) return true;
          used_a[v] = 0;
        } else {
          if (used_b[v] || g.degree(v) < i + 1) continue;
          bool ok = true;
          for (std::size_t l = 0; l <= i && ok; ++l) ok = g.adjacent(a[l], v);
          if (!ok) continue;
          b[i] = v;
          used_b[v] = 1;
          if (rec(slot + 1)) return true;
          used_b[v] = 0;
        }
      }
      return false;
    };
    if (!rec(0)) return std::nullopt;
    return Witness{WitnessKind::Order, k, a, b};
  });
}

namespace {

// Grows an increasing (in `order`) list of chosen vertices; after each step
// `complete(traces, t)` must accept the traces of all vertices on the first
// t chosen ones. Returns the chosen list and the final traces.
std::optional<std::pair<std::vector<Vertex>, std::vector<std::uint32_t>>> grow(
    const Graph& g, std::size_t k, const std::vector<Vertex>& order, NodeCounter& c,
    const std::function<bool(const std::vector<std::uint32_t>&, std::size_t)>& complete) {
  const std::size_t n = g.size();
  std::vector<Vertex> chosen;
  std::vector<std::uint32_t> trace(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    const std::size_t t = chosen.size();
    if (t == k) return true;
    for (std::size_t pos = from; pos + (k - t) <= order.size(); ++pos) {
      c.tick();
      const Vertex v = order[pos];
      for (Vertex w : g.neighbors(v)) trace[w] |= std::uint32_t{1} << t;
      chosen.push_back(v);
      if (complete(trace, t + 1) && rec(pos + 1)) return true;
      chosen.pop_back();
      for (Vertex w : g.neighbors(v)) trace[w] &= ~(std::uint32_t{1} << t);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return std::make_pair(chosen, trace);
}

}  // namespace

WitnessSearch shattering_witness(const Graph& g, std::size_t k, const SearchOptions& opt) {
  guard(g, k, opt, "shattering");
  if (k > 20) throw BudgetError("shattering: k must be at most 20");
  const std::size_t n = g.size();
  return drive(n, opt, [&](const std::vector<Vertex>& order, NodeCounter& c) -> std::optional<Witness> {
    std::vector<char> seen;
    auto complete = [&](const std::vector<std::uint32_t>& trace, std::size_t t) {
      const std::size_t need = std::size_t{1} << t;
      seen.assign(need, 0);
      std::size_t got = 0;
      for (std::uint32_t m : trace)
        if (!seen[m]) {
          seen[m] = 1;
          if (++got == need) return true;
        }
      return false;
    };
    auto found = grow(g, k, order, c, complete);
    if (!found) return std::nullopt;
    const auto& [a, trace] = *found;
    std::vector<Vertex> b(std::size_t{1} << k, 0);
    std::vector<char> have(b.size(), 0);
    for (Vertex v = 0; v < n; ++v)
      if (!have[trace[v]]) {
        have[trace[v]] = 1;
        b[trace[v]] = v;
      }
    return Witness{WitnessKind::Shattering, k, a, b};
  });
}

WitnessSearch pairing_index_witness(const Graph& g, std::size_t k, const SearchOptions& opt) {
  guard(g, k, opt, "pairing index");
  if (k > 32) throw BudgetError("pairing index: k must be at most 32");
  const std::size_t n = g.size();
  return drive(n, opt, [&](const std::vector<Vertex>& order, NodeCounter& c) -> std::optional<Witness> {
    std::set<std::uint32_t> seen;
    auto complete = [&](const std::vector<std::uint32_t>& trace, std::size_t t) {
      seen.clear();
      for (std::uint32_t m : trace)
        if (std::popcount(m) == 2) seen.insert(m);
      return seen.size() == t * (t - 1) / 2;
    };
    auto found = grow(g, k, order, c, complete);
    if (!found) return std::nullopt;
    const auto& [bs, trace] = *found;
    std::vector<Vertex> a;
    for (auto [i, j] : lex_pairs(k)) {
      const std::uint32_t want = (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
      for (Vertex v = 0; v < n; ++v)
        if (trace[v] == want) {
          a.push_back(v);
          break;
        }
    }
    return Witness{WitnessKind::Pairing, k, a, bs};
  });
}

// ---------------------------------------------------------------------------
// Bipartite canonical patterns

std::optional<CanonicalPattern> bipartite_canonical_pattern(const Sequence& left,
                                                            const Sequence& right,
                                                            const AdjacencyOracle& adj,
                                                            std::size_t order,
                                                            const SearchOptions& opt) {
  if (order < 1) throw InputError("canonical pattern: order must be at least 1");
  const std::size_t L = left.size(), R = right.size();
  std::vector<std::vector<char>> m(L, std::vector<char>(R, 0));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < R; ++j) m[i][j] = adj(left[i], right[j]) ? 1 : 0;
  {
    std::set<std::vector<char>> rows;
    for (std::size_t i = 0; i < L; ++i)
      if (!rows.insert(m[i]).second)
        throw InputError("canonical pattern: left vertex " + std::to_string(left[i]) +
                         " has a twin");
  }
  if (order > std::min(L, R)) return std::nullopt;

  NodeCounter c{0, opt.node_budget};
  for (CanonicalKind kind : {CanonicalKind::Matching, CanonicalKind::CoMatching, CanonicalKind::Ladder}) {
    auto rel = [kind](std::size_t s, std::size_t t) {
      switch (kind) {
        case CanonicalKind::Matching: return s == t;
        case CanonicalKind::CoMatching: return s != t;
        case CanonicalKind::Ladder: return s <= t;
      }
      return false;
    };
    const bool unordered = kind != CanonicalKind::Ladder;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<char> used_l(L, 0), used_r(R, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      const std::size_t t = pairs.size();
      if (t == order) return true;
      for (std::size_t i = unordered ? from : 0; i < L; ++i) {
        if (used_l[i]) continue;
        bool ok = true;
        for (std::size_t s = 0; s < t && ok; ++s) ok = (m[i][pairs[s].second] != 0) == rel(t, s);
        if (!ok) continue;
        for (std::size_t j = 0; j < R; ++j) {
          try {
            c.tick();
          } catch (const OutOfNodes&) {
            throw BudgetError("canonical pattern: search budget exhausted");
          }
          if (used_r[j] || (m[i][j] != 0) != rel(t, t)) continue;
          bool fits = true;
          for (std::size_t s = 0; s < t && fits; ++s) fits = (m[pairs[s].first][j] != 0) == rel(s, t);
          if (!fits) continue;
          pairs.emplace_back(i, j);
          used_l[i] = used_r[j] = 1;
          if (rec(i + 1)) return true;
          used_l[i] = used_r[j] = 0;
          pairs.pop_back();
        }
      }
      return false;
    };
    if (rec(0)) return CanonicalPattern{kind, pairs};
  }
  return std::nullopt;
}

std::optional<CanonicalPattern> bipartite_canonical_pattern(const Graph& g, const Sequence& left,
                                                            const Sequence& right,
                                                            std::size_t order,
                                                            const SearchOptions& opt) {
  check_in_range(left, g.size(), "canonical pattern left");
  check_in_range(right, g.size(), "canonical pattern right");
  return bipartite_canonical_pattern(
      left, right, [&g](Vertex u, Vertex v) { return g.adjacent(u, v); }, order, opt);
}

}  // namespace flipwide
