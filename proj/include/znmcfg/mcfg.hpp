#pragma once

// Multiple context-free grammars: representation, validation, derivation
// checking and bounded recognition for grammars with concrete rules only.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace znmcfg::mcfg {

using Symbol = std::string;
// A terminal string. The empty vector is epsilon.
using TerminalString = std::vector<Symbol>;

struct Item {
  enum class Kind { terminal, variable };

  Kind kind = Kind::terminal;
  std::string name;

  static Item terminal(std::string s) { return {Kind::terminal, std::move(s)}; }
  static Item variable(std::string v) { return {Kind::variable, std::move(v)}; }

  bool is_variable() const { return kind == Kind::variable; }
  bool operator==(const Item&) const = default;
};

using Template = std::vector<Item>;

struct Nonterminal {
  std::string name;
  std::size_t arity = 0;
  bool operator==(const Nonterminal&) const = default;
};

// One right-hand-side occurrence I_l(y_1^l, ..., y_{m_l}^l).
struct Premise {
  std::string nonterminal;
  std::vector<std::string> vars;
  bool operator==(const Premise&) const = default;
};

// I_0(t_1, ..., t_{m_0}) <- I_1(...), ..., I_p(...). An empty rhs is an axiom.
struct Rule {
  std::string lhs;
  std::vector<Template> templates;
  std::vector<Premise> rhs;
  bool operator==(const Rule&) const = default;
};

// Stands for every rule  N(z_1..z_m) <- N(x_1..x_m), N(x_{m+1}..x_{2m})
// where z_1 ... z_m is some permutation of x_1 ... x_{2m} cut into m
// contiguous, possibly empty, blocks. Never enumerated; instances carry
// their Blocking.
struct CombineSchema {
  std::string nonterminal;
  std::size_t arity = 0;
  bool operator==(const CombineSchema&) const = default;
};

struct Grammar {
  std::vector<Symbol> terminals;
  std::vector<Nonterminal> nonterminals;
  std::string start;
  std::vector<Rule> rules;
  std::vector<CombineSchema> schemas;
  // Declared bound K on arities; 0 means "the largest declared arity".
  std::size_t max_arity = 0;

  const Nonterminal* find_nonterminal(std::string_view name) const;
  const CombineSchema* find_schema(std::string_view nonterminal) const;
  bool is_terminal(std::string_view symbol) const;

  bool operator==(const Grammar&) const = default;
};

struct Violation {
  std::string code;
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every structural requirement of a K-MCFG. Violations are data.
ValidationReport validate_grammar(const Grammar& g);

// Block j lists, in order, the 1-based source slots whose concatenation
// forms target component j. Slots 1..m come from the first premise,
// m+1..2m from the second.
struct Blocking {
  std::vector<std::vector<std::size_t>> blocks;

  // True iff there are `arity` blocks and every slot 1..2*arity appears
  // exactly once.
  bool well_formed(std::size_t arity) const;
  bool operator==(const Blocking&) const = default;
};

// Variable name bound to source slot `slot` (1-based) of a schema instance.
std::string schema_variable(std::size_t slot);

struct Instance {
  std::string nonterminal;
  std::vector<TerminalString> components;

  // Total number of terminals across all components.
  std::size_t length() const;
  TerminalString concatenation() const;

  auto operator<=>(const Instance&) const = default;
  bool operator==(const Instance&) const = default;
};

struct ConcreteRef {
  std::size_t index = 0;
  bool operator==(const ConcreteRef&) const = default;
};

struct SchemaRef {
  std::string nonterminal;
  Blocking blocking;
  bool operator==(const SchemaRef&) const = default;
};

using RuleRef = std::variant<ConcreteRef, SchemaRef>;

using Substitution = std::vector<std::pair<std::string, TerminalString>>;

struct RuleInstance {
  RuleRef rule;
  Substitution substitution;
  Instance conclusion;
  std::vector<std::size_t> premises;
  bool operator==(const RuleInstance&) const = default;
};

struct Derivation {
  std::vector<RuleInstance> steps;
  bool operator==(const Derivation&) const = default;
};

enum class DerivationErrorKind {
  empty,
  unknown_rule,
  blocking_malformed,
  substitution_mismatch,
  premise_not_derived,
  premise_mismatch,
  template_mismatch,
};

std::string_view to_string(DerivationErrorKind kind);

class DerivationError : public std::runtime_error {
 public:
  DerivationError(DerivationErrorKind kind, std::size_t step, const std::string& detail);

  DerivationErrorKind kind() const { return kind_; }
  std::size_t step() const { return step_; }

 private:
  DerivationErrorKind kind_;
  std::size_t step_;
};

// Returns the conclusion of the last step if every step is a valid instance
// whose premises are conclusions of strictly earlier steps. Throws
// DerivationError naming the first offending step otherwise. Assumes
// validate_grammar(g).ok().
Instance check_derivation(const Grammar& g, const Derivation& d);

// Instantiates a schema rule: target component j is the concatenation of
// the slots of block j. Throws DerivationError(blocking_malformed) if the
// blocking does not fit the premises.
Instance apply_blocking(const std::string& nonterminal, const Blocking& blocking,
                        const Instance& first, const Instance& second);

// Builds the full rule instance for a schema application.
RuleInstance combine_instance(const std::string& nonterminal, const Blocking& blocking,
                              const Instance& first, std::size_t first_step,
                              const Instance& second, std::size_t second_step);

// Appends steps while reusing any earlier step with the same conclusion.
class DerivationBuilder {
 public:
  std::size_t add(RuleInstance step);
  std::optional<std::size_t> find(const Instance& conclusion) const;
  const Instance& conclusion(std::size_t step) const;
  std::size_t size() const { return derivation_.steps.size(); }

  // Makes `step` the last one, so the derivation ends in its conclusion.
  Derivation finish(std::size_t last) &&;

 private:
  Derivation derivation_;
  std::map<Instance, std::size_t> index_;
};

struct Recognition {
  bool accepted = false;
  std::optional<Derivation> witness;
};

class UnsupportedGrammar : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bottom-up closure over all instances whose components are substrings of
// `s` and whose total length is at most |s|. Exact for grammars whose rules
// never discard a premise component. Rejects grammars carrying schemas with
// UnsupportedGrammar.
Recognition recognize_bounded(const Grammar& g, const TerminalString& s);

// recognize_bounded with the grammar compiled once, for many queries against
// one grammar. Keeps a pointer to `g`, which must outlive it.
class BoundedRecognizer {
 public:
  explicit BoundedRecognizer(const Grammar& g);
  Recognition operator()(const TerminalString& s) const;

  struct Compiled;

 private:
  std::shared_ptr<const Compiled> compiled_;
};

}  // namespace znmcfg::mcfg
