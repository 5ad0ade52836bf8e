#include <algorithm>

#include "znmcfg/errors.hpp"
#include "znmcfg/synthesis.hpp"

namespace znmcfg::synth {

using zn::Vec;
using zn::operator+;
using zn::operator-;
using zn::operator+=;
using zn::operator-=;

mcfg::Instance tuple_instance(const Tuple& x) {
  mcfg::Instance inst{zn::kTupleNonterminal, {}};
  inst.components.reserve(x.size());
  for (const auto& w : x) inst.components.push_back(zn::to_terminals(w));
  return inst;
}

namespace {

std::size_t total_length(const Tuple& x) {
  std::size_t n = 0;
  for (const auto& w : x) n += w.size();
  return n;
}

Vec total_displacement(const Tuple& x, std::size_t first, std::size_t last, std::size_t n) {
  Vec d(n, 0);
  for (std::size_t i = first; i < last; ++i) d += zn::displacement(x[i], n);
  return d;
}

void require_tuple(const Tuple& x, const GrammarParams& params) {
  if (x.size() != params.m)
    throw PreconditionError("expected an " + std::to_string(params.m) + "-tuple, got " +
                            std::to_string(x.size()) + " components");
  if (!zn::is_zero(total_displacement(x, 0, x.size(), params.n)))
    throw PreconditionError("tuple has nonzero total displacement");
}

std::string describe(const Tuple& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += x[i].empty() ? "eps" : zn::format_word(x[i]);
  }
  return out + ")";
}

mcfg::RuleInstance axiom_step(std::size_t rule, const GrammarParams& params,
                              std::optional<std::size_t> axis) {
  mcfg::RuleInstance step;
  step.rule = mcfg::ConcreteRef{rule};
  step.conclusion.nonterminal = zn::kTupleNonterminal;
  step.conclusion.components.resize(params.m);
  if (axis) {
    step.conclusion.components[0] = {zn::token_name({*axis, 1})};
    step.conclusion.components[1] = {zn::token_name({*axis, -1})};
  }
  return step;
}

std::size_t empty_axiom(mcfg::DerivationBuilder& b, const GrammarParams& params) {
  return b.add(axiom_step(zn::kEmptyAxiom, params, std::nullopt));
}

// Places every slot not used by `blocks` at the end of the last block. The
// caller guarantees that those slots hold epsilon.
mcfg::Blocking complete_blocking(std::vector<std::vector<std::size_t>> blocks, std::size_t m) {
  std::vector<bool> used(2 * m + 1, false);
  for (const auto& block : blocks)
    for (std::size_t slot : block) used[slot] = true;
  for (std::size_t slot = 1; slot <= 2 * m; ++slot)
    if (!used[slot]) blocks.back().push_back(slot);
  return {std::move(blocks)};
}

std::size_t combine(mcfg::DerivationBuilder& b, const mcfg::Blocking& blocking, std::size_t first,
                    std::size_t second) {
  const mcfg::Instance a = b.conclusion(first);
  const mcfg::Instance c = b.conclusion(second);
  return b.add(mcfg::combine_instance(zn::kTupleNonterminal, blocking, a, first, c, second));
}

// Appends the base-case construction to `b` and returns the step deriving I(x).
std::size_t base_into(mcfg::DerivationBuilder& b, const Tuple& x, const GrammarParams& params) {
  const std::size_t m = params.m;

  struct Letter {
    std::size_t component;
    zn::Generator g;
  };
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& g : x[i]) letters.push_back({i, g});
  if (letters.empty()) return empty_axiom(b, params);

  // Match each a_i with the leftmost unmatched A_i.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> matched(letters.size(), false);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].g.sign < 0) continue;
    for (std::size_t j = 0; j < letters.size(); ++j) {
      if (!matched[j] && letters[j].g == letters[i].g.inverse()) {
        matched[j] = true;
        pairs.emplace_back(i, j);
        break;
      }
    }
  }
  if (2 * pairs.size() != letters.size())
    throw InvariantFailure("base case could not pair every letter of " + describe(x));

  std::vector<std::size_t> axioms;
  for (const auto& [pos, neg] : pairs) {
    const std::size_t axis = letters[pos].g.axis;
    axioms.push_back(b.add(axiom_step(zn::generator_axiom(axis), params, axis)));
  }

  // slot_of[letter] = 1-based slot of that letter in the accumulated instance.
  std::vector<std::size_t> slot_of(letters.size(), 0);
  slot_of[pairs[0].first] = 1;
  slot_of[pairs[0].second] = 2;
  std::size_t acc = axioms[0];

  auto arranged = [&](std::size_t last_pair_offset) {
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t l = 0; l < letters.size(); ++l) {
      std::size_t slot = slot_of[l];
      if (slot == 0) slot = last_pair_offset + (letters[l].g.sign > 0 ? 1 : 2);
      blocks[letters[l].component].push_back(slot);
    }
    return complete_blocking(std::move(blocks), m);
  };

  for (std::size_t r = 1; r + 1 < pairs.size(); ++r) {
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t s = 1; s <= 2 * r; ++s) blocks[s - 1] = {s};
    blocks[2 * r] = {m + 1};
    blocks[2 * r + 1] = {m + 2};
    acc = combine(b, complete_blocking(std::move(blocks), m), acc, axioms[r]);
    slot_of[pairs[r].first] = 2 * r + 1;
    slot_of[pairs[r].second] = 2 * r + 2;
  }

  if (pairs.size() >= 2) return combine(b, arranged(m), acc, axioms.back());
  if (b.conclusion(acc) == tuple_instance(x)) return acc;
  return combine(b, arranged(m), acc, empty_axiom(b, params));
}

class Synthesizer {
 public:
  explicit Synthesizer(const GrammarParams& params) : params_(params) {}

  std::size_t derive(const Tuple& x) {
    if (auto found = builder_.find(tuple_instance(x))) return *found;
    const std::size_t m = params_.m, h = params_.half(), n = params_.n;
    const std::size_t length = total_length(x);
    if (length <= m) return base_into(builder_, x, params_);

    if (!zn::is_zero(total_displacement(x, 0, h, n))) return split_step(x, length);

    const std::size_t left_length = total_length(Tuple(x.begin(), x.begin() + h));
    if (left_length > 0 && left_length < length) return halves_step(x);
    return rebalance_step(x);
  }

  mcfg::DerivationBuilder& builder() { return builder_; }

 private:
  // Both halves have nonzero displacement: split along balanced partitions.
  std::size_t split_step(const Tuple& x, std::size_t length) {
    const RefinedSplit split = lift_to_lattice(refine_and_split(x, params_));
    const YZSplit yz = make_yz(split, params_);
    if (total_length(yz.y) >= length || total_length(yz.z) >= length)
      throw InvariantFailure("split of " + describe(x) + " does not shorten both sides");
    const std::size_t iy = derive(yz.y);
    const std::size_t iz = derive(yz.z);
    return combine(builder_, yz.blocking, iy, iz);
  }

  // Both halves are nonempty with zero displacement: derive them separately.
  std::size_t halves_step(const Tuple& x) {
    const std::size_t m = params_.m, h = params_.half();
    Tuple first(m), second(m);
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t i = 0; i < h; ++i) {
      first[i] = x[i];
      second[i] = x[h + i];
      blocks[i] = {i + 1};
      blocks[h + i] = {m + i + 1};
    }
    const std::size_t a = derive(first);
    const std::size_t b = derive(second);
    return combine(builder_, complete_blocking(std::move(blocks), m), a, b);
  }

  // All letters sit in one half and that half is closed. Re-cut the letters
  // at the middle so both halves are nonempty, derive that tuple, and regroup
  // it into x against the empty axiom.
  std::size_t rebalance_step(const Tuple& x) {
    const std::size_t m = params_.m, h = params_.half();
    const std::size_t cut = total_length(x) / 2;

    Tuple recut(m);
    std::vector<std::vector<std::size_t>> blocks(m);
    std::size_t seen = 0, first_count = 0, second_count = 0;
    auto place = [&](std::size_t component, GroupWord piece, bool first_half) {
      std::size_t slot = first_half ? first_count++ : h + second_count++;
      if (slot >= (first_half ? h : m))
        throw InvariantFailure("rebalancing " + describe(x) + " overflows a half");
      recut[slot] = std::move(piece);
      blocks[component].push_back(slot + 1);
    };
    for (std::size_t i = 0; i < m; ++i) {
      const GroupWord& w = x[i];
      if (w.empty()) continue;
      if (seen + w.size() <= cut) {
        place(i, w, true);
      } else if (seen >= cut) {
        place(i, w, false);
      } else {
        const auto mid = w.begin() + static_cast<std::ptrdiff_t>(cut - seen);
        place(i, GroupWord(w.begin(), mid), true);
        place(i, GroupWord(mid, w.end()), false);
      }
      seen += w.size();
    }
    const std::size_t inner = derive(recut);
    const std::size_t empty = empty_axiom(builder_, params_);
    return combine(builder_, complete_blocking(std::move(blocks), m), inner, empty);
  }

  GrammarParams params_;
  mcfg::DerivationBuilder builder_;
};

}  // namespace

mcfg::Derivation base_derivation(const Tuple& x, const GrammarParams& params) {
  require_tuple(x, params);
  if (total_length(x) > params.m)
    throw PreconditionError("base case needs total length <= m, got " +
                            std::to_string(total_length(x)));
  mcfg::DerivationBuilder b;
  const std::size_t last = base_into(b, x, params);
  return std::move(b).finish(last);
}

mcfg::Derivation synthesize(const Tuple& x, const GrammarParams& params) {
  require_tuple(x, params);
  Synthesizer s(params);
  const std::size_t last = s.derive(x);
  return std::move(s.builder()).finish(last);
}

std::optional<mcfg::Derivation> synthesize_word(const GroupWord& w, std::size_t n) {
  const GrammarParams params = zn::grammar_params(n);
  if (!zn::is_identity(w, n)) return std::nullopt;

  // Short words go one letter per component, so a single pair is already an
  // axiom; longer ones start as (w, eps, ..., eps).
  Tuple x(params.m);
  if (w.size() <= params.m)
    for (std::size_t i = 0; i < w.size(); ++i) x[i] = {w[i]};
  else
    x[0] = w;
  Synthesizer s(params);
  const std::size_t inner = s.derive(x);

  mcfg::RuleInstance step;
  step.rule = mcfg::ConcreteRef{zn::kStartRule};
  const mcfg::Instance tuple = s.builder().conclusion(inner);
  for (std::size_t i = 0; i < params.m; ++i)
    step.substitution.emplace_back(mcfg::schema_variable(i + 1), tuple.components[i]);
  step.conclusion = {zn::kStartNonterminal, {tuple.concatenation()}};
  step.premises = {inner};
  const std::size_t last = s.builder().add(std::move(step));
  return std::move(s.builder()).finish(last);
}

}  // namespace znmcfg::synth
