#include "znmcfg/zn.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "znmcfg/errors.hpp"

namespace znmcfg::zn {

GrammarParams grammar_params(std::size_t n) {
  if (n == 0) throw PreconditionError("dimension n must be at least 1");
  const std::size_t k = (n + 1) / 2;
  return {n, k, 8 * k - 2};
}

mcfg::Grammar make_grammar(std::size_t n) {
  const GrammarParams params = grammar_params(n);
  const std::size_t m = params.m;

  mcfg::Grammar g;
  for (std::size_t axis = 1; axis <= n; ++axis) {
    g.terminals.push_back(token_name({axis, 1}));
    g.terminals.push_back(token_name({axis, -1}));
  }
  g.nonterminals = {{kStartNonterminal, 1}, {kTupleNonterminal, m}};
  g.start = kStartNonterminal;
  g.max_arity = m;

  mcfg::Rule start_rule;
  start_rule.lhs = kStartNonterminal;
  mcfg::Template joined;
  mcfg::Premise tuple{kTupleNonterminal, {}};
  for (std::size_t i = 1; i <= m; ++i) {
    joined.push_back(mcfg::Item::variable(mcfg::schema_variable(i)));
    tuple.vars.push_back(mcfg::schema_variable(i));
  }
  start_rule.templates.push_back(std::move(joined));
  start_rule.rhs.push_back(std::move(tuple));
  g.rules.push_back(std::move(start_rule));

  g.rules.push_back({kTupleNonterminal, std::vector<mcfg::Template>(m), {}});

  for (std::size_t axis = 1; axis <= n; ++axis) {
    std::vector<mcfg::Template> templates(m);
    templates[0] = {mcfg::Item::terminal(token_name({axis, 1}))};
    templates[1] = {mcfg::Item::terminal(token_name({axis, -1}))};
    g.rules.push_back({kTupleNonterminal, std::move(templates), {}});
  }

  g.schemas.push_back({kTupleNonterminal, m});
  return g;
}

std::string token_name(Generator g) {
  return (g.sign > 0 ? "a" : "A") + std::to_string(g.axis);
}

Generator parse_token(std::string_view token, std::size_t n) {
  if (token.size() < 2 || (token[0] != 'a' && token[0] != 'A'))
    throw PreconditionError("bad generator token '" + std::string(token) + "'");
  std::size_t axis = 0;
  auto digits = token.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), axis);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits[0] == '0')
    throw PreconditionError("bad generator token '" + std::string(token) + "'");
  if (axis < 1 || axis > n)
    throw PreconditionError("generator '" + std::string(token) + "' has axis outside 1.." +
                            std::to_string(n));
  return {axis, token[0] == 'a' ? 1 : -1};
}

GroupWord parse_word(std::string_view text, std::size_t n) {
  GroupWord w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) w.push_back(parse_token(token, n));
  return w;
}

std::string format_word(const GroupWord& w) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += ' ';
    out += token_name(g);
  }
  return out;
}

mcfg::TerminalString to_terminals(const GroupWord& w) {
  mcfg::TerminalString out;
  out.reserve(w.size());
  for (const auto& g : w) out.push_back(token_name(g));
  return out;
}

GroupWord from_terminals(const mcfg::TerminalString& s, std::size_t n) {
  GroupWord w;
  w.reserve(s.size());
  for (const auto& sym : s) w.push_back(parse_token(sym, n));
  return w;
}

Vec displacement(const GroupWord& w, std::size_t n) {
  Vec d(n, 0);
  for (const auto& g : w) {
    if (g.axis < 1 || g.axis > n)
      throw PreconditionError("generator axis " + std::to_string(g.axis) + " outside 1.." +
                              std::to_string(n));
    d[g.axis - 1] += g.sign;
  }
  return d;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
}

bool is_identity(const GroupWord& w, std::size_t n) { return is_zero(displacement(w, n)); }

Vec& operator+=(Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }

LatticePath::LatticePath(std::size_t n, GroupWord edges, Point start)
    : n_(n), edges_(std::move(edges)) {
  if (start.empty()) start.assign(n, 0);
  if (start.size() != n) throw PreconditionError("start point has the wrong dimension");
  for (auto c : start)
    if (c % 2 != 0) throw PreconditionError("start point must be a lattice point (even doubled)");
  vertices_.reserve(edges_.size() + 1);
  vertices_.push_back(std::move(start));
  for (const auto& g : edges_) {
    if (g.axis < 1 || g.axis > n) throw PreconditionError("edge axis outside 1..n");
    Point next = vertices_.back();
    next[g.axis - 1] += 2 * g.sign;
    vertices_.push_back(std::move(next));
  }
}

Point LatticePath::point(Param p) const {
  if (p > end_param()) throw PreconditionError("path parameter beyond the end");
  Point pt = vertices_[p / 2];
  if (p % 2 == 1) {
    const auto& g = edges_[p / 2];
    pt[g.axis - 1] += g.sign;
  }
  return pt;
}

Vec LatticePath::span(Param begin, Param end) const { return point(end) - point(begin); }

LatticePath word_to_path(const GroupWord& w, std::size_t n, Point start) {
  return LatticePath(n, w, std::move(start));
}

}  // namespace znmcfg::zn
