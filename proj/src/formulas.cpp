#include "flipwide/formulas.hpp"

#include <string>

#include "flipwide/errors.hpp"

namespace flipwide {

BallCache::BallCache(std::shared_ptr<const Graph> graph, std::size_t radius)
    : graph_(std::move(graph)), radius_(radius) {
  if (!graph_) throw InputError("ball cache: null graph");
  balls_.reserve(graph_->size());
  for (Vertex v = 0; v < graph_->size(); ++v) balls_.push_back(ball_bits(*graph_, v, radius_));
}

EvalContext::EvalContext(std::shared_ptr<const Graph> graph, std::size_t ball_radius,
                         std::vector<Vertex> constants)
    : EvalContext(std::make_shared<const BallCache>(std::move(graph), ball_radius),
                  std::move(constants)) {}

EvalContext::EvalContext(std::shared_ptr<const BallCache> balls, std::vector<Vertex> constants)
    : balls_(std::move(balls)), constants_(std::move(constants)) {
  if (!balls_) throw InputError("eval context: null ball cache");
  const Graph& g = balls_->graph();
  constant_marks_.reserve(constants_.size());
  for (Vertex c : constants_) {
    if (c >= g.size()) throw InputError("eval context: constant out of range");
    constant_marks_.push_back(g.row(c));
  }
}

EvalContext EvalContext::with_constants(std::vector<Vertex> constants) const {
  return EvalContext(balls_, std::move(constants));
}

PhiSet eq_phi_set(std::size_t count) {
  PhiSet phi;
  phi.reserve(count);
  for (std::size_t c = 0; c < count; ++c) phi.push_back(Atom::eq_nbhd(c));
  return phi;
}

void validate_phi(const EvalContext& ctx, std::span<const Atom> phi) {
  if (phi.size() > kMaxPhiSize)
    throw InputError("formula set has " + std::to_string(phi.size()) + " atoms; at most " +
                     std::to_string(kMaxPhiSize) + " supported");
  for (const Atom& a : phi)
    if (a.kind == AtomKind::EqNbhd && a.constant >= ctx.constant_count())
      throw InputError("eq atom references constant " + std::to_string(a.constant) +
                       " but only " + std::to_string(ctx.constant_count()) + " are marked");
}

bool eval_eq_nbhd(const EvalContext& ctx, std::size_t c, Vertex x, Vertex y) {
  if (c >= ctx.constant_count()) throw InputError("eq atom: constant index out of range");
  const Vertex cv = ctx.constants()[c];
  const Bitset& b = ctx.ball(y);
  if (b.test(x) != b.test(cv)) return false;
  return Bitset::agree_on(ctx.graph().row(x), ctx.constant_neighborhood(c), b);
}

bool eval_atom(const EvalContext& ctx, const Atom& atom, Vertex x, Vertex y) {
  switch (atom.kind) {
    case AtomKind::Edge:
      return ctx.graph().adjacent(x, y);
    case AtomKind::DistLeq:
      return ctx.ball(y).test(x);
    case AtomKind::EqNbhd:
      return eval_eq_nbhd(ctx, atom.constant, x, y);
  }
  return false;
}

PhiType type_of(const EvalContext& ctx, std::span<const Atom> phi, Vertex x, Vertex y) {
  PhiType t;
  for (std::size_t j = 0; j < phi.size(); ++j)
    if (eval_atom(ctx, phi[j], x, y)) t.positive |= std::uint32_t{1} << j;
  return t;
}

bool eval_type(const EvalContext& ctx, std::span<const Atom> phi, PhiType tau, Vertex x,
               Vertex y) {
  return type_of(ctx, phi, x, y) == tau;
}

// ---------------------------------------------------------------------------

TypeSet TypeSet::single(std::size_t phi_count, PhiType t) {
  TypeSet s(phi_count);
  if (t.positive >= s.universe()) throw InputError("type code out of range");
  s.add(t);
  return s;
}

TypeSet TypeSet::all(std::size_t phi_count) {
  TypeSet s(phi_count);
  for (std::size_t i = 0; i < s.universe(); ++i) s.add(PhiType{static_cast<std::uint32_t>(i)});
  return s;
}

std::vector<PhiType> TypeSet::types() const {
  std::vector<PhiType> out;
  bits_.for_each([&](std::size_t i) { out.push_back(PhiType{static_cast<std::uint32_t>(i)}); });
  return out;
}

Pattern Pattern::of_types(std::size_t phi_count, std::span<const PhiType> types) {
  Pattern p;
  p.phi_count = phi_count;
  for (PhiType t : types) p.entries.push_back(TypeSet::single(phi_count, t));
  return p;
}

bool Pattern::is_type_pattern() const {
  for (const auto& e : entries)
    if (e.size() != 1) return false;
  return true;
}

void Pattern::validate() const {
  if (entries.empty()) throw InputError("pattern must have length >= 1");
  for (const auto& e : entries) {
    if (e.universe() != type_count(phi_count))
      throw InputError("pattern entry built over a different formula set");
    if (e.empty()) throw InputError("pattern entry is unsatisfiable");
  }
}

std::string Pattern::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ',';
    s += '{';
    bool first = true;
    for (PhiType t : entries[i].types()) {
      if (!first) s += ',';
      s += std::to_string(t.positive);
      first = false;
    }
    s += '}';
  }
  return s + ")";
}

std::optional<Vertex> eval_gamma(const EvalContext& ctx, std::span<const Atom> phi,
                                 const Pattern& pattern, std::span<const Vertex> tuple) {
  if (tuple.size() != pattern.length())
    throw InputError("gamma: tuple length " + std::to_string(tuple.size()) +
                     " does not match pattern length " + std::to_string(pattern.length()));
  if (pattern.phi_count != phi.size()) throw InputError("gamma: pattern built for another Phi");
  for (Vertex z = 0; z < ctx.graph().size(); ++z) {
    bool ok = true;
    for (std::size_t i = 0; i < tuple.size() && ok; ++i)
      ok = pattern.entries[i].contains(type_of(ctx, phi, z, tuple[i]));
    if (ok) return z;
  }
  return std::nullopt;
}

std::size_t type_pattern_count(std::size_t phi_count, std::size_t k) {
  constexpr std::size_t kSaturated = static_cast<std::size_t>(-1);
  if (phi_count >= 63) return kSaturated;
  const std::size_t base = type_count(phi_count);
  std::size_t total = 0, power = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    if (power > kSaturated / base) return kSaturated;
    power *= base;
    if (total > kSaturated - power) return kSaturated;
    total += power;
  }
  return total;
}

std::vector<Pattern> enumerate_type_patterns(std::size_t phi_count, std::size_t k,
                                             std::size_t cap) {
  if (phi_count < 1 || k < 1) throw InputError("pattern enumeration needs |Phi| >= 1 and k >= 1");
  if (phi_count > kMaxPhiSize) throw InputError("pattern enumeration: |Phi| too large");
  const std::size_t count = type_pattern_count(phi_count, k);
  if (count > cap)
    throw BudgetError("pattern enumeration: " + std::to_string(count) +
                      " patterns exceed the cap of " + std::to_string(cap));
  const std::uint32_t base = static_cast<std::uint32_t>(type_count(phi_count));
  std::vector<Pattern> out;
  out.reserve(count);
  // Odometer increment over base-2^|Phi| digits; false once it wraps around.
  auto advance = [base](std::vector<PhiType>& digits) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
      if (++digits[pos].positive < base) return true;
      digits[pos].positive = 0;
    }
    return false;
  };
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<PhiType> digits(len);
    do {
      out.push_back(Pattern::of_types(phi_count, digits));
    } while (advance(digits));
  }
  return out;
}

TypeTable::TypeTable(const EvalContext& ctx, std::span<const Atom> phi, std::span<const Vertex> seq)
    : n_(ctx.graph().size()), m_(seq.size()), phi_count_(phi.size()), codes_(n_ * m_) {
  validate_phi(ctx, phi);
  for (Vertex y : seq)
    if (y >= n_) throw InputError("type table: sequence vertex out of range");
  for (Vertex z = 0; z < n_; ++z)
    for (std::size_t j = 0; j < m_; ++j) codes_[z * m_ + j] = type_of(ctx, phi, z, seq[j]).positive;
}

}  // namespace flipwide
