#include "flipwide/indiscernibles.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>

namespace flipwide {

PatternFamily PatternFamily::explicit_patterns(std::size_t phi_count, std::vector<Pattern> patterns) {
  PatternFamily f;
  f.phi_count_ = phi_count;
  for (const auto& p : patterns) {
    p.validate();
    if (p.phi_count != phi_count) throw InputError("pattern family: mixed formula sets");
    f.max_length_ = std::max(f.max_length_, p.length());
  }
  f.patterns_ = std::move(patterns);
  return f;
}

PatternFamily PatternFamily::all_type_patterns(std::size_t phi_count, std::size_t max_length) {
  if (max_length < 1) throw InputError("pattern family: max length must be >= 1");
  if (phi_count > kMaxPhiSize) throw InputError("pattern family: formula set too large");
  PatternFamily f;
  f.implicit_ = true;
  f.phi_count_ = phi_count;
  f.max_length_ = max_length;
  return f;
}

ExtractionShortfall::ExtractionShortfall(Sequence achieved, std::optional<Pattern> blocking,
                                         std::size_t target)
    : Error("indiscernible extraction reached length " + std::to_string(achieved.size()) +
            " of the requested " + std::to_string(target) +
            (blocking ? ", blocked by pattern " + blocking->to_string() : std::string())),
      achieved_(std::move(achieved)),
      blocking_(std::move(blocking)) {}

namespace {

/// Calls f(tuple) for every strictly increasing tuple of `len` positions in
/// [0, m), lexicographically. Stops early when f returns false.
template <typename F>
bool for_each_tuple(std::size_t m, std::size_t len, F&& f) {
  if (len > m) return true;
  std::vector<std::size_t> t(len);
  std::iota(t.begin(), t.end(), std::size_t{0});
  while (true) {
    if (!f(std::span<const std::size_t>(t))) return false;
    std::size_t i = len;
    while (i > 0 && t[i - 1] == m - len + (i - 1)) --i;
    if (i == 0) return true;
    ++t[i - 1];
    for (std::size_t j = i; j < len; ++j) t[j] = t[j - 1] + 1;
  }
}

std::size_t key_width(std::size_t phi_count) { return std::max<std::size_t>(phi_count, 1); }

void check_key_capacity(std::size_t phi_count, std::size_t len) {
  if (key_width(phi_count) * len > 64)
    throw InputError("type patterns of length " + std::to_string(len) + " over " +
                     std::to_string(phi_count) + " formulas exceed the 64-bit key space");
}

/// Sorted set of type vectors realised on `tuple`, packed into 64-bit keys.
std::vector<std::uint64_t> realized_keys(const TypeTable& table, std::span<const std::size_t> tuple) {
  const std::size_t w = key_width(table.phi_count());
  std::vector<std::uint64_t> keys(table.vertices());
  for (Vertex z = 0; z < table.vertices(); ++z) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      key |= static_cast<std::uint64_t>(table.at(z, tuple[i])) << (i * w);
    keys[z] = key;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

Pattern decode_key(std::uint64_t key, std::size_t phi_count, std::size_t len) {
  const std::size_t w = key_width(phi_count);
  const std::uint64_t mask = (w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
  std::vector<PhiType> types(len);
  for (std::size_t i = 0; i < len; ++i)
    types[i].positive = static_cast<std::uint32_t>((key >> (i * w)) & mask) &
                        static_cast<std::uint32_t>(type_count(phi_count) - 1);
  return Pattern::of_types(phi_count, types);
}

/// witness[i][j]: vertices z whose type towards position j lies in entry i.
std::vector<std::vector<Bitset>> witness_sets(const TypeTable& table, const Pattern& pattern) {
  std::vector<std::vector<Bitset>> w(pattern.length(),
                                     std::vector<Bitset>(table.positions(), Bitset(table.vertices())));
  for (std::size_t i = 0; i < pattern.length(); ++i)
    for (std::size_t j = 0; j < table.positions(); ++j)
      for (Vertex z = 0; z < table.vertices(); ++z)
        if (pattern.entries[i].contains(PhiType{table.at(z, j)})) w[i][j].set(z);
  return w;
}

bool gamma_on(const std::vector<std::vector<Bitset>>& w, std::span<const std::size_t> tuple) {
  Bitset acc = w[0][tuple[0]];
  for (std::size_t i = 1; i < tuple.size(); ++i) acc &= w[i][tuple[i]];
  return acc.any();
}

void check_family(const PhiSet& phi, const PatternFamily& family) {
  if (family.phi_count() != phi.size())
    throw InputError("pattern family built for " + std::to_string(family.phi_count()) +
                     " formulas, got " + std::to_string(phi.size()));
}

std::optional<Counterexample> find_counterexample(const TypeTable& table, const PatternFamily& family) {
  const std::size_t m = table.positions();
  if (family.is_implicit()) {
    const std::size_t k = std::min(family.max_length(), m);
    for (std::size_t len = 1; len <= k; ++len) {
      check_key_capacity(family.phi_count(), len);
      std::vector<std::uint64_t> ref;
      std::vector<std::size_t> ref_tuple;
      std::optional<Counterexample> found;
      for_each_tuple(m, len, [&](std::span<const std::size_t> tuple) {
        auto keys = realized_keys(table, tuple);
        if (ref_tuple.empty()) {
          ref = std::move(keys);
          ref_tuple.assign(tuple.begin(), tuple.end());
          return true;
        }
        if (keys == ref) return true;
        std::vector<std::uint64_t> only_ref, only_here;
        std::set_difference(ref.begin(), ref.end(), keys.begin(), keys.end(),
                            std::back_inserter(only_ref));
        std::set_difference(keys.begin(), keys.end(), ref.begin(), ref.end(),
                            std::back_inserter(only_here));
        const std::vector<std::size_t> here(tuple.begin(), tuple.end());
        if (!only_ref.empty() && (only_here.empty() || only_ref.front() < only_here.front()))
          found = Counterexample{decode_key(only_ref.front(), family.phi_count(), len), ref_tuple, here};
        else
          found = Counterexample{decode_key(only_here.front(), family.phi_count(), len), here, ref_tuple};
        return false;
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  for (const Pattern& p : family.patterns()) {
    if (p.length() > m) continue;
    const auto w = witness_sets(table, p);
    std::optional<bool> ref;
    std::vector<std::size_t> ref_tuple;
    std::optional<Counterexample> found;
    for_each_tuple(m, p.length(), [&](std::span<const std::size_t> tuple) {
      const bool value = gamma_on(w, tuple);
      if (!ref) {
        ref = value;
        ref_tuple.assign(tuple.begin(), tuple.end());
        return true;
      }
      if (value == *ref) return true;
      const std::vector<std::size_t> here(tuple.begin(), tuple.end());
      found = *ref ? Counterexample{p, ref_tuple, here} : Counterexample{p, here, ref_tuple};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Greedy Ramsey homogenisation for a single pattern.

struct Homogeneous {
  std::vector<std::size_t> items;
  std::optional<bool> color;  // nullopt: too short to contain any tuple
};

class Homogenizer {
 public:
  explicit Homogenizer(std::vector<std::vector<Bitset>> witness)
      : witness_(std::move(witness)), length_(witness_.size()) {}

  Homogeneous run(const std::vector<std::size_t>& items) const {
    Bitset all(witness_[0].empty() ? 0 : witness_[0][0].size());
    for (std::size_t z = 0; z < all.size(); ++z) all.set(z);
    return solve(items, 0, all);
  }

 private:
  // Items are colored by gamma(prefix ++ tuple); `mask` holds the witnesses
  // compatible with the fixed prefix of length `depth`.
  Homogeneous solve(const std::vector<std::size_t>& items, std::size_t depth,
                    const Bitset& mask) const {
    const std::size_t slots = length_ - depth;
    if (items.size() < slots) return {items, std::nullopt};
    if (slots == 1) {
      std::vector<std::size_t> yes, no;
      for (std::size_t x : items) (mask.intersects(witness_[depth][x]) ? yes : no).push_back(x);
      const bool first_color = mask.intersects(witness_[depth][items.front()]);
      bool pick = yes.size() > no.size() ? true : (no.size() > yes.size() ? false : first_color);
      return {pick ? std::move(yes) : std::move(no), pick};
    }

    std::vector<std::size_t> heads;
    std::vector<std::optional<bool>> colors;
    std::vector<std::size_t> rest = items;
    while (!rest.empty()) {
      const std::size_t head = rest.front();
      std::vector<std::size_t> tail(rest.begin() + 1, rest.end());
      Homogeneous sub = solve(tail, depth + 1, mask & witness_[depth][head]);
      heads.push_back(head);
      colors.push_back(sub.color);
      rest = std::move(sub.items);
    }

    std::size_t yes = 0, no = 0;
    std::optional<bool> first;
    for (const auto& c : colors) {
      if (!c) continue;
      (*c ? yes : no) += 1;
      if (!first) first = c;
    }
    if (!first) return {heads, std::nullopt};
    const bool pick = yes > no ? true : (no > yes ? false : *first);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < heads.size(); ++i)
      if (!colors[i] || *colors[i] == pick) kept.push_back(heads[i]);
    return {std::move(kept), pick};
  }

  std::vector<std::vector<Bitset>> witness_;
  std::size_t length_;
};

}  // namespace

IndiscernibilityReport is_delta_indiscernible(const EvalContext& ctx, const PhiSet& phi,
                                              const PatternFamily& family, const Sequence& seq) {
  check_family(phi, family);
  const TypeTable table(ctx, phi, seq.items());
  auto cx = find_counterexample(table, family);
  if (!cx) return {};
  return {false, std::move(cx)};
}

bool EmType::contains(const Pattern& p) const {
  if (p.length() >= vacuous_from_ && p.length() <= max_length_) return true;
  return std::find(members_.begin(), members_.end(), p) != members_.end();
}

EmType em_type(const EvalContext& ctx, const PhiSet& phi, const PatternFamily& family,
               const Sequence& seq) {
  check_family(phi, family);
  const TypeTable table(ctx, phi, seq.items());
  const std::size_t m = seq.size();
  EmType em;
  em.max_length_ = family.max_length();

  if (family.is_implicit()) {
    em.vacuous_from_ = m + 1;
    const std::size_t k = std::min(family.max_length(), m);
    for (std::size_t len = 1; len <= k; ++len) {
      check_key_capacity(family.phi_count(), len);
      std::optional<std::vector<std::uint64_t>> common;
      for_each_tuple(m, len, [&](std::span<const std::size_t> tuple) {
        auto keys = realized_keys(table, tuple);
        if (!common) {
          common = std::move(keys);
        } else {
          std::vector<std::uint64_t> both;
          std::set_intersection(common->begin(), common->end(), keys.begin(), keys.end(),
                                std::back_inserter(both));
          *common = std::move(both);
        }
        return !common->empty();
      });
      std::vector<Pattern> at_len;
      for (std::uint64_t key : *common) at_len.push_back(decode_key(key, family.phi_count(), len));
      std::sort(at_len.begin(), at_len.end(), [](const Pattern& a, const Pattern& b) {
        for (std::size_t i = 0; i < a.length(); ++i) {
          const auto ta = a.entries[i].types().front(), tb = b.entries[i].types().front();
          if (ta != tb) return ta < tb;
        }
        return false;
      });
      for (auto& p : at_len) em.members_.push_back(std::move(p));
    }
    return em;
  }

  em.vacuous_from_ = static_cast<std::size_t>(-1);
  for (const Pattern& p : family.patterns()) {
    const auto w = witness_sets(table, p);
    const bool always =
        for_each_tuple(m, p.length(), [&](std::span<const std::size_t> t) { return gamma_on(w, t); });
    if (always) em.members_.push_back(p);
  }
  return em;
}

namespace {

struct GreedyOutcome {
  Sequence kept;
  std::optional<Pattern> blocking;
};

GreedyOutcome greedy_extract(const EvalContext& ctx, const PhiSet& phi, const PatternFamily& family,
                             const Sequence& seq, const ExtractionConfig& cfg) {
  GreedyOutcome out{seq, std::nullopt};
  for (std::size_t pass = 0;; ++pass) {
    const TypeTable table(ctx, phi, out.kept.items());
    auto cx = find_counterexample(table, family);
    if (!cx) break;
    if (pass >= cfg.pattern_budget)
      throw BudgetError("extraction: pattern budget of " + std::to_string(cfg.pattern_budget) +
                        " homogenisation passes exhausted");
    std::vector<std::size_t> positions(out.kept.size());
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    const Homogenizer homogenizer(witness_sets(table, cx->pattern));
    const Homogeneous kept = homogenizer.run(positions);
    Sequence next = out.kept.select(kept.items);
    if (next.size() < cfg.target_length && !out.blocking) out.blocking = cx->pattern;
    out.kept = std::move(next);
  }
  return out;
}

// Longest indiscernible subsequence by include-first depth-first search.
// Indiscernibility is inherited by subsequences, so a failed extension prunes
// its whole subtree. Each tuple length has a reference signature (realised
// type vectors, or pattern truths for explicit families) fixed by the first
// tuple of that length.
class MaximumSearch {
 public:
  MaximumSearch(const TypeTable& table, const PatternFamily& family, std::size_t budget)
      : table_(table), family_(family), budget_(budget), k_(std::min(family.max_length(), table.positions())) {
    if (!family.is_implicit())
      for (const Pattern& p : family.patterns()) witness_.push_back(witness_sets(table, p));
    for (std::size_t len = 1; len <= k_ && family.is_implicit(); ++len)
      check_key_capacity(family.phi_count(), len);
    ref_.resize(k_ + 1);
  }

  std::vector<std::size_t> run(std::vector<std::size_t> lower_bound) {
    best_ = std::move(lower_bound);
    dfs(0);
    return best_;
  }

 private:
  std::vector<std::uint64_t> signature(std::span<const std::size_t> tuple) const {
    if (family_.is_implicit()) return realized_keys(table_, tuple);
    std::vector<std::uint64_t> bits;
    for (std::size_t i = 0; i < witness_.size(); ++i)
      if (family_.patterns()[i].length() == tuple.size()) bits.push_back(gamma_on(witness_[i], tuple));
    return bits;
  }

  // Checks every tuple ending in x; fills in references for lengths reached
  // for the first time and records them in `fresh`.
  bool extend_ok(std::size_t x, std::vector<std::size_t>& fresh) {
    const std::size_t c = chosen_.size();
    for (std::size_t len = 1; len <= std::min(k_, c + 1); ++len) {
      bool ok = true;
      std::vector<std::size_t> tuple(len);
      for_each_tuple(c, len - 1, [&](std::span<const std::size_t> idx) {
        for (std::size_t i = 0; i + 1 < len; ++i) tuple[i] = chosen_[idx[i]];
        tuple[len - 1] = x;
        auto sig = signature(tuple);
        if (!ref_[len]) {
          ref_[len] = std::move(sig);
          fresh.push_back(len);
          return true;
        }
        ok = sig == *ref_[len];
        return ok;
      });
      if (!ok) return false;
    }
    return true;
  }

  void dfs(std::size_t next) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    const std::size_t m = table_.positions();
    for (std::size_t x = next; x < m; ++x) {
      if (chosen_.size() + (m - x) <= best_.size()) return;
      if (nodes_++ >= budget_) return;
      std::vector<std::size_t> fresh;
      if (extend_ok(x, fresh)) {
        chosen_.push_back(x);
        dfs(x + 1);
        chosen_.pop_back();
      }
      for (std::size_t len : fresh) ref_[len].reset();
      if (nodes_ >= budget_) return;
    }
  }

  const TypeTable& table_;
  const PatternFamily& family_;
  std::size_t budget_;
  std::size_t k_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::vector<Bitset>>> witness_;
  std::vector<std::optional<std::vector<std::uint64_t>>> ref_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
};

}  // namespace

const char* to_string(ExtractionStrategy s) {
  switch (s) {
    case ExtractionStrategy::GreedyRamsey: return "greedy";
    case ExtractionStrategy::Maximum: return "maximum";
  }
  return "?";
}

Sequence extract_indiscernible(const EvalContext& ctx, const PhiSet& phi,
                               const PatternFamily& family, const Sequence& seq,
                               const ExtractionConfig& cfg) {
  check_family(phi, family);
  if (cfg.target_length < 1) throw InputError("extraction: target length must be >= 1");
  if (cfg.max_pattern_length < 1) throw InputError("extraction: pattern length must be >= 1");
  check_in_range(seq, ctx.graph().size(), "extraction sequence");

  GreedyOutcome out = greedy_extract(ctx, phi, family, seq, cfg);
  if (cfg.strategy == ExtractionStrategy::Maximum && out.kept.size() < seq.size()) {
    const TypeTable table(ctx, phi, seq.items());
    std::vector<std::size_t> lower;
    for (std::size_t i = 0, j = 0; i < seq.size() && j < out.kept.size(); ++i)
      if (seq[i] == out.kept[j]) {
        lower.push_back(i);
        ++j;
      }
    MaximumSearch search(table, family, cfg.search_budget);
    out.kept = seq.select(search.run(std::move(lower)));
  }
  if (out.kept.size() < cfg.target_length)
    throw ExtractionShortfall(std::move(out.kept), std::move(out.blocking), cfg.target_length);
  return out.kept;
}

Sequence extract_indiscernible(const EvalContext& ctx, const PhiSet& phi, const Sequence& seq,
                               const ExtractionConfig& cfg) {
  return extract_indiscernible(ctx, phi, PatternFamily::all_type_patterns(phi.size(), cfg.max_pattern_length),
                               seq, cfg);
}

}  // namespace flipwide
