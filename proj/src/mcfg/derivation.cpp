#include "znmcfg/mcfg.hpp"

#include <set>

namespace znmcfg::mcfg {

std::string_view to_string(DerivationErrorKind kind) {
  switch (kind) {
    case DerivationErrorKind::empty: return "empty-derivation";
    case DerivationErrorKind::unknown_rule: return "unknown-rule";
    case DerivationErrorKind::blocking_malformed: return "blocking-malformed";
    case DerivationErrorKind::substitution_mismatch: return "substitution-mismatch";
    case DerivationErrorKind::premise_not_derived: return "premise-not-derived";
    case DerivationErrorKind::premise_mismatch: return "premise-mismatch";
    case DerivationErrorKind::template_mismatch: return "template-mismatch";
  }
  return "unknown";
}

DerivationError::DerivationError(DerivationErrorKind kind, std::size_t step,
                                 const std::string& detail)
    : std::runtime_error("step " + std::to_string(step) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      step_(step) {}

namespace {

using Bindings = std::map<std::string, const TerminalString*>;

Bindings bind(const Substitution& subst, const std::set<std::string>& expected, std::size_t step) {
  Bindings out;
  for (const auto& [var, value] : subst) {
    if (!expected.count(var))
      throw DerivationError(DerivationErrorKind::substitution_mismatch, step,
                            "variable " + var + " is not bound by the rule");
    if (!out.emplace(var, &value).second)
      throw DerivationError(DerivationErrorKind::substitution_mismatch, step,
                            "variable " + var + " substituted twice");
  }
  for (const auto& var : expected) {
    if (!out.count(var))
      throw DerivationError(DerivationErrorKind::substitution_mismatch, step,
                            "variable " + var + " has no substitution");
  }
  return out;
}

void check_premise(const Derivation& d, std::size_t step, std::size_t slot,
                   const Instance& required) {
  const auto& premises = d.steps[step].premises;
  if (slot >= premises.size() || premises[slot] >= step)
    throw DerivationError(DerivationErrorKind::premise_not_derived, step,
                          "no earlier step provides premise " + std::to_string(slot) + " (" +
                              required.nonterminal + ")");
  if (d.steps[premises[slot]].conclusion != required)
    throw DerivationError(DerivationErrorKind::premise_mismatch, step,
                          "step " + std::to_string(premises[slot]) +
                              " does not conclude the required " + required.nonterminal +
                              " instance");
}

void check_concrete(const Grammar& g, const Derivation& d, std::size_t step, std::size_t index) {
  const RuleInstance& inst = d.steps[step];
  if (index >= g.rules.size())
    throw DerivationError(DerivationErrorKind::unknown_rule, step,
                          "rule index " + std::to_string(index) + " out of range");
  const Rule& rule = g.rules[index];

  std::set<std::string> expected;
  for (const auto& p : rule.rhs) expected.insert(p.vars.begin(), p.vars.end());
  Bindings bindings = bind(inst.substitution, expected, step);

  if (inst.premises.size() != rule.rhs.size())
    throw DerivationError(DerivationErrorKind::premise_not_derived, step,
                          "rule has " + std::to_string(rule.rhs.size()) + " premises, step lists " +
                              std::to_string(inst.premises.size()));
  for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
    Instance required{rule.rhs[j].nonterminal, {}};
    for (const auto& v : rule.rhs[j].vars) required.components.push_back(*bindings.at(v));
    check_premise(d, step, j, required);
  }

  Instance produced{rule.lhs, {}};
  for (const auto& tmpl : rule.templates) {
    TerminalString component;
    for (const auto& item : tmpl) {
      if (item.is_variable()) {
        const auto& value = *bindings.at(item.name);
        component.insert(component.end(), value.begin(), value.end());
      } else {
        component.push_back(item.name);
      }
    }
    produced.components.push_back(std::move(component));
  }
  if (produced != inst.conclusion)
    throw DerivationError(DerivationErrorKind::template_mismatch, step,
                          "substituted templates differ from the stated conclusion");
}

void check_schema(const Grammar& g, const Derivation& d, std::size_t step, const SchemaRef& ref) {
  const RuleInstance& inst = d.steps[step];
  const CombineSchema* schema = g.find_schema(ref.nonterminal);
  if (schema == nullptr)
    throw DerivationError(DerivationErrorKind::unknown_rule, step,
                          "no combine schema for " + ref.nonterminal);
  const std::size_t m = schema->arity;
  if (!ref.blocking.well_formed(m))
    throw DerivationError(DerivationErrorKind::blocking_malformed, step,
                          "blocking must place each of slots 1.." + std::to_string(2 * m) +
                              " exactly once into " + std::to_string(m) + " blocks");

  std::set<std::string> expected;
  for (std::size_t slot = 1; slot <= 2 * m; ++slot) expected.insert(schema_variable(slot));
  Bindings bindings = bind(inst.substitution, expected, step);

  if (inst.premises.size() != 2)
    throw DerivationError(DerivationErrorKind::premise_not_derived, step,
                          "combine instances take exactly two premises");
  for (std::size_t j = 0; j < 2; ++j) {
    Instance required{schema->nonterminal, {}};
    for (std::size_t slot = j * m + 1; slot <= (j + 1) * m; ++slot)
      required.components.push_back(*bindings.at(schema_variable(slot)));
    check_premise(d, step, j, required);
  }

  Instance produced{schema->nonterminal, {}};
  for (const auto& block : ref.blocking.blocks) {
    TerminalString component;
    for (std::size_t slot : block) {
      const auto& value = *bindings.at(schema_variable(slot));
      component.insert(component.end(), value.begin(), value.end());
    }
    produced.components.push_back(std::move(component));
  }
  if (produced != inst.conclusion)
    throw DerivationError(DerivationErrorKind::template_mismatch, step,
                          "blocked concatenation differs from the stated conclusion");
}

}  // namespace

Instance check_derivation(const Grammar& g, const Derivation& d) {
  if (d.steps.empty()) throw DerivationError(DerivationErrorKind::empty, 0, "no steps");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& rule = d.steps[i].rule;
    if (const auto* concrete = std::get_if<ConcreteRef>(&rule))
      check_concrete(g, d, i, concrete->index);
    else
      check_schema(g, d, i, std::get<SchemaRef>(rule));
  }
  return d.steps.back().conclusion;
}

Instance apply_blocking(const std::string& nonterminal, const Blocking& blocking,
                        const Instance& first, const Instance& second) {
  const std::size_t m = first.components.size();
  if (second.components.size() != m || !blocking.well_formed(m))
    throw DerivationError(DerivationErrorKind::blocking_malformed, 0,
                          "blocking does not fit premises of arity " + std::to_string(m));
  Instance out{nonterminal, {}};
  out.components.reserve(m);
  for (const auto& block : blocking.blocks) {
    TerminalString component;
    for (std::size_t slot : block) {
      const auto& src = slot <= m ? first.components[slot - 1] : second.components[slot - m - 1];
      component.insert(component.end(), src.begin(), src.end());
    }
    out.components.push_back(std::move(component));
  }
  return out;
}

RuleInstance combine_instance(const std::string& nonterminal, const Blocking& blocking,
                              const Instance& first, std::size_t first_step,
                              const Instance& second, std::size_t second_step) {
  RuleInstance inst;
  inst.rule = SchemaRef{nonterminal, blocking};
  inst.conclusion = apply_blocking(nonterminal, blocking, first, second);
  const std::size_t m = first.components.size();
  inst.substitution.reserve(2 * m);
  for (std::size_t slot = 1; slot <= m; ++slot)
    inst.substitution.emplace_back(schema_variable(slot), first.components[slot - 1]);
  for (std::size_t slot = 1; slot <= m; ++slot)
    inst.substitution.emplace_back(schema_variable(m + slot), second.components[slot - 1]);
  inst.premises = {first_step, second_step};
  return inst;
}

std::size_t DerivationBuilder::add(RuleInstance step) {
  if (auto found = find(step.conclusion)) return *found;
  const std::size_t index = derivation_.steps.size();
  index_.emplace(step.conclusion, index);
  derivation_.steps.push_back(std::move(step));
  return index;
}

std::optional<std::size_t> DerivationBuilder::find(const Instance& conclusion) const {
  auto it = index_.find(conclusion);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Instance& DerivationBuilder::conclusion(std::size_t step) const {
  return derivation_.steps.at(step).conclusion;
}

Derivation DerivationBuilder::finish(std::size_t last) && {
  // Steps after `last` cannot be premises of it, so the prefix stays valid.
  derivation_.steps.resize(last + 1);
  index_.clear();
  return std::move(derivation_);
}

}  // namespace znmcfg::mcfg
