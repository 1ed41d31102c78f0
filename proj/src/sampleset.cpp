#include "flipwide/sampleset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace flipwide {

namespace {

const char* reason_name(ExhaustionReason r) {
  switch (r) {
    case ExhaustionReason::Samples: return "sample budget";
    case ExhaustionReason::Rounds: return "round budget";
    case ExhaustionReason::Length: return "minimum surviving length";
    case ExhaustionReason::NoCandidate: return "no admissible new sample";
  }
  return "budget";
}

using SampleMask = std::uint64_t;
constexpr std::size_t kMaxSamples = 64;

std::size_t lowest(SampleMask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

// Split search over per-ball masks of equivalent samples.
std::optional<Certificate> split_from_masks(std::span<const SampleMask> masks, SampleMask full) {
  const std::size_t m = masks.size();
  if (m == 0 || full == 0) return std::nullopt;
  std::vector<SampleMask> prefix(m + 1, full), suffix(m + 1, full);
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] & masks[j];
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] & masks[j];
  if (prefix[m]) return Certificate{m - 1, lowest(prefix[m]), lowest(prefix[m])};
  for (std::size_t e = 0; e < m; ++e)
    if (prefix[e] && suffix[e + 1]) return Certificate{e, lowest(prefix[e]), lowest(suffix[e + 1])};
  return std::nullopt;
}

// All-but-one-ball form: a single sample covering every ball except ex.
std::optional<Certificate> stable_from_masks(std::span<const SampleMask> masks, SampleMask full) {
  const std::size_t m = masks.size();
  if (m == 0 || full == 0) return std::nullopt;
  std::vector<SampleMask> prefix(m + 1, full), suffix(m + 1, full);
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] & masks[j];
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] & masks[j];
  if (prefix[m]) return Certificate{m - 1, lowest(prefix[m]), lowest(prefix[m])};
  for (std::size_t e = 0; e < m; ++e)
    if (const SampleMask both = prefix[e] & suffix[e + 1]) return Certificate{e, lowest(both), lowest(both)};
  return std::nullopt;
}

// masks[a][j]: samples equivalent to a over the ball of subseq[j].
std::vector<std::vector<SampleMask>> equivalence_masks(const EvalContext& ctx,
                                                       const Sequence& subseq) {
  const std::size_t n = ctx.graph().size();
  std::vector<std::vector<SampleMask>> masks(n, std::vector<SampleMask>(subseq.size(), 0));
  for (Vertex a = 0; a < n; ++a)
    for (std::size_t j = 0; j < subseq.size(); ++j)
      for (std::size_t c = 0; c < ctx.constant_count(); ++c)
        if (eval_eq_nbhd(ctx, c, a, subseq[j])) masks[a][j] |= SampleMask{1} << c;
  return masks;
}

void check_disjoint(const BallCache& balls, const Sequence& centers) {
  const std::size_t n = balls.graph().size();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    bool clash = false;
    std::size_t other = 0;
    balls.ball(centers[i]).for_each([&](std::size_t w) {
      if (owner[w] >= 0 && !clash) {
        clash = true;
        other = static_cast<std::size_t>(owner[w]);
      }
      owner[w] = static_cast<int>(i);
    });
    if (clash)
      throw InputError("balls of radius " + std::to_string(balls.radius()) + " around centers " +
                       std::to_string(centers[other]) + " and " + std::to_string(centers[i]) +
                       " intersect");
  }
}

}  // namespace

SampleBudgetExhausted::SampleBudgetExhausted(ExhaustionReason reason, std::vector<Vertex> samples,
                                             Sequence subseq, const std::string& detail)
    : BudgetError(std::string("sample-set construction stopped (") + reason_name(reason) + "): " +
                  detail + "; class likely not monadically NIP at these budgets"),
      reason_(reason),
      samples_(std::move(samples)),
      subseq_(std::move(subseq)) {}

bool phi_equivalent_over(const Graph& g, Vertex a, Vertex b, const Bitset& ball) {
  if (ball.test(a) != ball.test(b)) return false;
  return Bitset::agree_on(g.row(a), g.row(b), ball);
}

bool phi_equivalent_over(const Graph& g, Vertex a, Vertex b, const VertexSet& ball) {
  if (ball.contains(a) != ball.contains(b)) return false;
  for (Vertex w : ball)
    if (g.adjacent(a, w) != g.adjacent(b, w)) return false;
  return true;
}

std::optional<Certificate> decompose_exceptional(const Graph& g, std::span<const Vertex> samples,
                                                 std::span<const Bitset> balls, Vertex a) {
  if (samples.size() > kMaxSamples) throw InputError("decompose: at most 64 samples supported");
  std::vector<SampleMask> masks(balls.size(), 0);
  for (std::size_t j = 0; j < balls.size(); ++j)
    for (std::size_t s = 0; s < samples.size(); ++s)
      if (phi_equivalent_over(g, a, samples[s], balls[j])) masks[j] |= SampleMask{1} << s;
  const SampleMask full = samples.empty() ? 0 : (~SampleMask{0} >> (kMaxSamples - samples.size()));
  return split_from_masks(masks, full);
}

SampleSetResult build_sample_set(const EvalContext& base, const DisjointFamilyInput& input,
                                 const SampleBudget& budget, const ExtractionConfig& extraction) {
  const Graph& g = base.graph();
  const std::size_t n = g.size();
  if (base.ball_radius() != input.half_radius)
    throw InputError("sample set: context balls have radius " + std::to_string(base.ball_radius()) +
                     ", input asks for " + std::to_string(input.half_radius));
  if (budget.max_samples < 1 || budget.max_rounds < 1 || budget.min_surviving_length < 1)
    throw InputError("sample set: budgets must be positive");
  if (budget.max_samples > kMaxSamples)
    throw InputError("sample set: at most 64 samples supported");
  check_in_range(input.centers, n, "sample set centers");
  check_disjoint(*base.ball_cache(), input.centers);

  SampleSetResult result;
  if (input.centers.empty()) return result;

  ExtractionConfig cfg = extraction;
  cfg.target_length = budget.min_surviving_length;

  std::vector<Vertex> samples;
  Sequence subseq = input.centers;
  while (true) {
    const EvalContext ctx = base.with_constants(samples);
    const PhiSet phi = eq_phi_set(samples.size());
    try {
      subseq = extract_indiscernible(ctx, phi, subseq, cfg);
    } catch (const ExtractionShortfall& e) {
      throw SampleBudgetExhausted(ExhaustionReason::Length, samples, e.achieved(), e.what());
    }
    ++result.rounds;

    const auto masks = equivalence_masks(ctx, subseq);
    const SampleMask full = samples.empty() ? 0 : (~SampleMask{0} >> (kMaxSamples - samples.size()));
    std::vector<Certificate> certs;
    certs.reserve(n);
    bool complete = true;
    for (Vertex a = 0; a < n && complete; ++a) {
      auto c = split_from_masks(masks[a], full);
      if (!c) {
        complete = false;
        break;
      }
      certs.push_back(*c);
    }

    if (complete) {
      if (input.mode == SampleMode::Stable) {
        for (Vertex a = 0; a < n; ++a) {
          if (certs[a].s_lt == certs[a].s_gt) continue;
          auto c = stable_from_masks(masks[a], full);
          if (!c)
            throw ModeError("vertex " + std::to_string(a) +
                            " needs different samples before and after its exceptional index");
          certs[a] = *c;
        }
      }
      result.samples = std::move(samples);
      result.subseq = std::move(subseq);
      result.certificates = std::move(certs);
      return result;
    }

    if (result.rounds >= budget.max_rounds)
      throw SampleBudgetExhausted(ExhaustionReason::Rounds, samples, subseq,
                                  std::to_string(result.rounds) + " rounds without termination");

    // New sample: inequivalent to every current sample over all but at most
    // two surviving balls. Prefer the fewest dropped balls, then the lowest id.
    const std::size_t m = subseq.size();
    std::optional<Vertex> best;
    std::vector<std::size_t> best_drop;
    for (Vertex a = 0; a < n; ++a) {
      if (std::find(samples.begin(), samples.end(), a) != samples.end()) continue;
      std::vector<std::size_t> drop;
      for (std::size_t j = 0; j < m; ++j)
        if (masks[a][j] != 0) drop.push_back(j);
      if (drop.size() > 2) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (base.ball(subseq[j]).test(a) && std::find(drop.begin(), drop.end(), j) == drop.end())
          drop.push_back(j);
      if (!best || drop.size() < best_drop.size()) {
        best = a;
        best_drop = std::move(drop);
        if (best_drop.empty()) break;
      }
    }
    if (!best)
      throw SampleBudgetExhausted(ExhaustionReason::NoCandidate, samples, subseq,
                                  "every vertex is equivalent to some sample over 3 or more balls");

    samples.push_back(*best);
    if (samples.size() > budget.max_samples)
      throw SampleBudgetExhausted(ExhaustionReason::Samples, samples, subseq,
                                  std::to_string(samples.size()) + " samples");
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m; ++j)
      if (std::find(best_drop.begin(), best_drop.end(), j) == best_drop.end()) keep.push_back(j);
    subseq = subseq.select(keep);
    if (subseq.size() < budget.min_surviving_length)
      throw SampleBudgetExhausted(ExhaustionReason::Length, samples, subseq,
                                  "surviving sequence has length " + std::to_string(subseq.size()));
  }
}

Verdict verify_sample_set(const Graph& g, const DisjointFamilyInput& input,
                          const SampleSetResult& result) {
  auto fail = [](std::string why) { return Verdict{false, std::move(why)}; };
  const std::size_t n = g.size();
  const Sequence& subseq = result.subseq;
  if (!subseq.is_subsequence_of(input.centers)) return fail("subsequence is not a subsequence of the centers");
  if (subseq.empty()) return {};
  if (result.samples.empty()) return fail("no samples for a non-empty subsequence");
  if (result.certificates.size() != n) return fail("certificate count differs from vertex count");

  std::vector<VertexSet> balls;
  balls.reserve(subseq.size());
  for (Vertex c : subseq) {
    const auto dist = distances_from(g, c);
    std::vector<Vertex> members;
    for (Vertex w = 0; w < n; ++w)
      if (dist[w] <= input.half_radius) members.push_back(w);
    balls.emplace_back(std::move(members));
  }
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      for (Vertex w : balls[i])
        if (balls[j].contains(w))
          return fail("balls of positions " + std::to_string(i) + " and " + std::to_string(j) + " meet");

  const auto& S = result.samples;
  for (std::size_t s = 0; s < S.size(); ++s) {
    for (std::size_t j = 0; j < balls.size(); ++j)
      if (balls[j].contains(S[s]))
        return fail("sample " + std::to_string(S[s]) + " lies in ball " + std::to_string(j));
    for (std::size_t t = s + 1; t < S.size(); ++t)
      for (std::size_t j = 0; j < balls.size(); ++j)
        if (phi_equivalent_over(g, S[s], S[t], balls[j]))
          return fail("samples " + std::to_string(S[s]) + " and " + std::to_string(S[t]) +
                      " are equivalent over ball " + std::to_string(j));
  }

  for (Vertex a = 0; a < n; ++a) {
    const Certificate& c = result.certificates[a];
    const std::string who = "vertex " + std::to_string(a);
    if (c.ex >= balls.size()) return fail(who + ": exceptional index out of range");
    if (c.s_lt >= S.size() || c.s_gt >= S.size()) return fail(who + ": sample index out of range");
    if (input.mode == SampleMode::Stable && c.s_lt != c.s_gt)
      return fail(who + ": stable certificate uses two samples");
    for (std::size_t j = 0; j < balls.size(); ++j) {
      if (balls[j].contains(a) && j != c.ex)
        return fail(who + " lies in ball " + std::to_string(j) + " but ex = " + std::to_string(c.ex));
      if (j == c.ex) continue;
      const Vertex s = S[j < c.ex ? c.s_lt : c.s_gt];
      if (!phi_equivalent_over(g, a, s, balls[j]))
        return fail(who + " differs from sample " + std::to_string(s) + " over ball " + std::to_string(j));
    }
  }
  return {};
}

}  // namespace flipwide
