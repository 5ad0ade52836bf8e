#pragma once

// Reference implementations used as test oracles. They share no code with
// the library beyond its data types and are deliberately naive.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "znmcfg/mcfg.hpp"
#include "znmcfg/zn.hpp"

namespace oracle {

using znmcfg::mcfg::Grammar;
using znmcfg::mcfg::Instance;
using znmcfg::mcfg::Item;
using znmcfg::mcfg::TerminalString;

// Signed letter counts of a token sequence such as {"a1","A2"}.
inline std::vector<std::int64_t> count_letters(const TerminalString& tokens, std::size_t n) {
  std::vector<std::int64_t> v(n, 0);
  for (const auto& t : tokens) {
    const std::size_t axis = std::stoul(t.substr(1));
    v.at(axis - 1) += t[0] == 'a' ? 1 : -1;
  }
  return v;
}

inline bool balanced(const TerminalString& tokens, std::size_t n) {
  for (auto c : count_letters(tokens, n))
    if (c != 0) return false;
  return true;
}

inline TerminalString split_tokens(const std::string& text) {
  TerminalString out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline TerminalString chars(const std::string& text) {
  TerminalString out;
  for (char c : text) out.push_back(std::string(1, c));
  return out;
}

// Doubled coordinates of the point at half-unit parameter p of the path that
// starts at the origin and follows `tokens`, computed by walking.
inline std::vector<std::int64_t> walk(const TerminalString& tokens, std::size_t n, std::size_t p) {
  std::vector<std::int64_t> pt(n, 0);
  for (std::size_t step = 0; step < p; ++step) {
    const auto& t = tokens.at(step / 2);
    const std::size_t axis = std::stoul(t.substr(1));
    pt.at(axis - 1) += t[0] == 'a' ? 1 : -1;
  }
  return pt;
}

// The grammar with I(eps,eps), I(axb,cyd) <- I(x,y) and S(xy) <- I(x,y).
inline Grammar anbncndn_grammar() {
  Grammar g;
  g.terminals = {"a", "b", "c", "d"};
  g.nonterminals = {{"S", 1}, {"I", 2}};
  g.start = "S";
  g.max_arity = 2;
  auto v = Item::variable;
  auto t = Item::terminal;
  g.rules.push_back({"I", {{}, {}}, {}});
  g.rules.push_back({"I", {{t("a"), v("x"), t("b")}, {t("c"), v("y"), t("d")}}, {{"I", {"x", "y"}}}});
  g.rules.push_back({"S", {{v("x"), v("y")}}, {{"I", {"x", "y"}}}});
  return g;
}

// Every instance derivable in a concrete grammar with total length <= bound,
// by naive fixpoint iteration over all rules and all premise combinations.
// Only rules with at most two premises are supported.
inline std::set<Instance> derivable(const Grammar& g, std::size_t bound) {
  std::set<Instance> known;
  bool grew = true;
  auto fire = [&](const znmcfg::mcfg::Rule& r, const std::vector<const Instance*>& prem,
                  std::set<Instance>& out) {
    std::map<std::string, TerminalString> bind;
    for (std::size_t i = 0; i < prem.size(); ++i) {
      if (prem[i]->nonterminal != r.rhs[i].nonterminal) return;
      for (std::size_t j = 0; j < r.rhs[i].vars.size(); ++j)
        bind[r.rhs[i].vars[j]] = prem[i]->components[j];
    }
    Instance inst{r.lhs, {}};
    std::size_t len = 0;
    for (const auto& tmpl : r.templates) {
      TerminalString comp;
      for (const auto& item : tmpl) {
        if (item.is_variable()) {
          const auto& val = bind.at(item.name);
          comp.insert(comp.end(), val.begin(), val.end());
        } else {
          comp.push_back(item.name);
        }
      }
      len += comp.size();
      inst.components.push_back(std::move(comp));
    }
    if (len <= bound) out.insert(std::move(inst));
  };
  while (grew) {
    std::set<Instance> next = known;
    std::vector<const Instance*> all;
    for (const auto& i : known) all.push_back(&i);
    for (const auto& r : g.rules) {
      if (r.rhs.empty()) {
        fire(r, {}, next);
      } else if (r.rhs.size() == 1) {
        for (auto* a : all) fire(r, {a}, next);
      } else if (r.rhs.size() == 2) {
        for (auto* a : all)
          for (auto* b : all) fire(r, {a, b}, next);
      }
    }
    grew = next.size() != known.size();
    known = std::move(next);
  }
  return known;
}

// Strings of the start symbol derivable with length <= bound.
inline std::set<TerminalString> language(const Grammar& g, std::size_t bound) {
  std::set<TerminalString> out;
  for (const auto& inst : derivable(g, bound))
    if (inst.nonterminal == g.start) out.insert(inst.components.at(0));
  return out;
}

inline bool is_anbncndn(const TerminalString& s) {
  if (s.size() % 4 != 0) return false;
  const std::size_t q = s.size() / 4;
  const char* letters = "abcd";
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != std::string(1, letters[i / q])) return false;
  return true;
}

// Every half-unit parameter pair [t, s] with 2 * (point(s) - point(t)) equal
// to the total doubled displacement, by walking the path for each pair.
inline std::vector<std::pair<std::size_t, std::size_t>> balanced_intervals(
    const TerminalString& tokens, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t end = 2 * tokens.size();
  const auto total = walk(tokens, n, end);
  for (std::size_t t = 0; t <= end; ++t)
    for (std::size_t s = t; s <= end; ++s) {
      const auto a = walk(tokens, n, t);
      const auto b = walk(tokens, n, s);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i)
        if (2 * (b[i] - a[i]) != total[i]) ok = false;
      if (ok) out.emplace_back(t, s);
    }
  return out;
}

// Independent structural audit of a derivation over make_grammar(n): every
// conclusion of I has zero displacement and its arity is m.
inline bool all_tuples_balanced(const znmcfg::mcfg::Derivation& d, std::size_t n, std::size_t m) {
  for (const auto& step : d.steps) {
    const auto& c = step.conclusion;
    if (c.nonterminal != "I") continue;
    if (c.components.size() != m) return false;
    if (!balanced(c.concatenation(), n)) return false;
  }
  return true;
}

}  // namespace oracle
