#include "znmcfg/mcfg.hpp"

#include <algorithm>
#include <set>

namespace znmcfg::mcfg {

const Nonterminal* Grammar::find_nonterminal(std::string_view name) const {
  for (const auto& nt : nonterminals)
    if (nt.name == name) return &nt;
  return nullptr;
}

const CombineSchema* Grammar::find_schema(std::string_view nonterminal) const {
  for (const auto& s : schemas)
    if (s.nonterminal == nonterminal) return &s;
  return nullptr;
}

bool Grammar::is_terminal(std::string_view symbol) const {
  return std::find(terminals.begin(), terminals.end(), symbol) != terminals.end();
}

bool Blocking::well_formed(std::size_t arity) const {
  if (blocks.size() != arity) return false;
  std::vector<bool> seen(2 * arity + 1, false);
  std::size_t count = 0;
  for (const auto& block : blocks) {
    for (std::size_t slot : block) {
      if (slot == 0 || slot > 2 * arity || seen[slot]) return false;
      seen[slot] = true;
      ++count;
    }
  }
  return count == 2 * arity;
}

std::string schema_variable(std::size_t slot) { return "x" + std::to_string(slot); }

std::size_t Instance::length() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.size();
  return n;
}

TerminalString Instance::concatenation() const {
  TerminalString out;
  out.reserve(length());
  for (const auto& c : components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

namespace {

class Reporter {
 public:
  explicit Reporter(ValidationReport& report) : report_(report) {}

  void operator()(std::string code, std::string where, std::string message) {
    report_.violations.push_back({std::move(code), std::move(where), std::move(message)});
  }

 private:
  ValidationReport& report_;
};

std::string rule_label(std::size_t i, const Rule& r) {
  return "rule " + std::to_string(i) + " (" + r.lhs + ")";
}

}  // namespace

ValidationReport validate_grammar(const Grammar& g) {
  ValidationReport report;
  Reporter report_violation(report);

  std::set<std::string> terminal_set;
  for (const auto& t : g.terminals) {
    if (t.empty()) report_violation("empty-terminal", "terminals", "terminal symbol is empty");
    if (!terminal_set.insert(t).second)
      report_violation("duplicate-terminal", "terminal " + t, "terminal declared twice");
  }

  std::size_t bound = g.max_arity;
  std::set<std::string> nt_names;
  for (const auto& nt : g.nonterminals) {
    const std::string where = "nonterminal " + nt.name;
    if (!nt_names.insert(nt.name).second)
      report_violation("duplicate-nonterminal", where, "nonterminal declared twice");
    if (terminal_set.count(nt.name))
      report_violation("name-clash", where, "nonterminal shares its name with a terminal");
    if (nt.arity == 0) report_violation("zero-arity", where, "arity must be positive");
    if (bound != 0 && nt.arity > bound)
      report_violation("arity-exceeds-bound", where,
                       "arity " + std::to_string(nt.arity) + " exceeds declared bound " +
                           std::to_string(bound));
  }

  const Nonterminal* start = g.find_nonterminal(g.start);
  if (start == nullptr) {
    report_violation("start-undeclared", "start " + g.start, "start symbol is not declared");
  } else if (start->arity != 1) {
    report_violation("start-arity", "start " + g.start,
                     "start arity " + std::to_string(start->arity) + " != 1");
  }

  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const Rule& rule = g.rules[i];
    const std::string where = rule_label(i, rule);

    const Nonterminal* lhs = g.find_nonterminal(rule.lhs);
    if (lhs == nullptr) {
      report_violation("undeclared-nonterminal", where, "lhs " + rule.lhs + " is not declared");
    } else if (lhs->arity != rule.templates.size()) {
      report_violation("template-count", where,
                       std::to_string(rule.templates.size()) + " templates for arity " +
                           std::to_string(lhs->arity));
    }

    std::set<std::string> bound_vars;
    for (const auto& premise : rule.rhs) {
      const Nonterminal* nt = g.find_nonterminal(premise.nonterminal);
      if (nt == nullptr) {
        report_violation("undeclared-nonterminal", where,
                         "rhs " + premise.nonterminal + " is not declared");
      } else if (nt->arity != premise.vars.size()) {
        report_violation("premise-arity", where,
                         premise.nonterminal + " takes " + std::to_string(nt->arity) +
                             " variables, got " + std::to_string(premise.vars.size()));
      }
      for (const auto& v : premise.vars) {
        if (!bound_vars.insert(v).second)
          report_violation("variable-bound-twice", where, "variable " + v + " bound twice");
      }
    }

    std::set<std::string> used_vars;
    for (const auto& tmpl : rule.templates) {
      for (const auto& item : tmpl) {
        if (item.is_variable()) {
          if (!bound_vars.count(item.name))
            report_violation("unbound-variable", where, "variable " + item.name + " is unbound");
          if (!used_vars.insert(item.name).second)
            report_violation("variable-reused", where,
                             "variable " + item.name + " occurs more than once");
        } else if (!terminal_set.count(item.name)) {
          report_violation("unknown-terminal", where, "terminal " + item.name + " is undeclared");
        }
      }
    }
  }

  std::set<std::string> schema_nts;
  for (const auto& schema : g.schemas) {
    const std::string where = "schema " + schema.nonterminal;
    if (!schema_nts.insert(schema.nonterminal).second)
      report_violation("duplicate-schema", where, "schema declared twice for one nonterminal");
    const Nonterminal* nt = g.find_nonterminal(schema.nonterminal);
    if (nt == nullptr) {
      report_violation("undeclared-nonterminal", where, "schema nonterminal is not declared");
    } else if (nt->arity != schema.arity) {
      report_violation("schema-arity", where,
                       "schema arity " + std::to_string(schema.arity) +
                           " != nonterminal arity " + std::to_string(nt->arity));
    }
  }

  return report;
}

}  // namespace znmcfg::mcfg
