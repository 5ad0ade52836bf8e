#include <doctest.h>

#include <random>

#include "support.hpp"
#include "znmcfg/errors.hpp"
#include "znmcfg/sampling.hpp"

using namespace znmcfg;
using namespace znmcfg::zn;

TEST_CASE("grammar_params") {
  CHECK(grammar_params(2) == GrammarParams{2, 1, 6});
  CHECK(grammar_params(1) == GrammarParams{1, 1, 6});
  CHECK(grammar_params(3) == GrammarParams{3, 2, 14});
  CHECK(grammar_params(4) == GrammarParams{4, 2, 14});
  CHECK(grammar_params(5) == GrammarParams{5, 3, 22});
  CHECK_THROWS_AS(grammar_params(0), PreconditionError);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto p = grammar_params(n);
    CHECK(p.k == (n + 1) / 2);
    CHECK(p.m == 8 * p.k - 2);
    CHECK(p.m % 2 == 0);
  }
}

TEST_CASE("make_grammar shape") {
  SUBCASE("n = 1") {
    const auto g = make_grammar(1);
    CHECK(g.terminals.size() == 2);
    CHECK(g.rules.size() == 3);
    REQUIRE(g.schemas.size() == 1);
    CHECK(g.schemas[0].arity == 6);
  }
  SUBCASE("n = 2") {
    const auto g = make_grammar(2);
    CHECK(g.terminals.size() == 4);
    CHECK(g.rules.size() == 4);
    REQUIRE(g.schemas.size() == 1);
    CHECK(g.schemas[0].arity == 6);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto g = make_grammar(n);
    const auto m = grammar_params(n).m;
    CHECK(mcfg::validate_grammar(g).ok());
    CHECK(g.find_nonterminal("S")->arity == 1);
    CHECK(g.find_nonterminal("I")->arity == m);
    CHECK(g.rules[kStartRule].templates[0].size() == m);
    CHECK(g.rules[kEmptyAxiom].templates == std::vector<mcfg::Template>(m));
    for (std::size_t axis = 1; axis <= n; ++axis) {
      const auto& r = g.rules[generator_axiom(axis)];
      CHECK(r.rhs.empty());
      CHECK(r.templates[0] == mcfg::Template{mcfg::Item::terminal("a" + std::to_string(axis))});
      CHECK(r.templates[1] == mcfg::Template{mcfg::Item::terminal("A" + std::to_string(axis))});
    }
  }
}

TEST_CASE("every axiom of make_grammar is balanced") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto g = make_grammar(n);
    for (const auto& r : g.rules) {
      if (!r.rhs.empty()) continue;
      mcfg::TerminalString all;
      for (const auto& t : r.templates)
        for (const auto& item : t) all.push_back(item.name);
      CHECK(oracle::balanced(all, n));
    }
  }
}

TEST_CASE("displacement") {
  CHECK(displacement(parse_word("a1 A1", 1), 1) == Vec{0});
  CHECK(displacement(parse_word("a1 a2 A1 A2", 2), 2) == Vec{0, 0});
  CHECK(displacement(parse_word("a1 a1 a2", 2), 2) == Vec{2, 1});
  CHECK(displacement({}, 3) == Vec{0, 0, 0});
  CHECK_THROWS_AS(parse_word("a3", 2), PreconditionError);
  CHECK_THROWS_AS(parse_word("b1", 2), PreconditionError);
  CHECK_THROWS_AS(displacement({Generator{3, 1}}, 2), PreconditionError);
  CHECK(is_identity(parse_word("a1 a2 A1 A2", 2), 2));
  CHECK_FALSE(is_identity(parse_word("a1 a1", 1), 1));
}

TEST_CASE("displacement matches letter counting") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int i = 0; i < 200; ++i) {
      const auto w = random_word(n, i % 25, rng);
      const auto expect = oracle::count_letters(to_terminals(w), n);
      CHECK(displacement(w, n) == Vec(expect.begin(), expect.end()));
    }
}

TEST_CASE("token formatting round trip") {
  const auto w = parse_word("a1 A3 a2  A1", 3);
  CHECK(format_word(w) == "a1 A3 a2 A1");
  CHECK(to_terminals(w) == mcfg::TerminalString{"a1", "A3", "a2", "A1"});
  CHECK(from_terminals(to_terminals(w), 3) == w);
}

TEST_CASE("word_to_path examples") {
  const auto straight = word_to_path(parse_word("a1 a1", 1), 1);
  CHECK(straight.point(0) == Point{0});
  CHECK(straight.point(1) == Point{1});
  CHECK(straight.point(2) == Point{2});
  CHECK(straight.point(4) == Point{4});

  const auto empty = word_to_path({}, 2, Point{2, -4});
  CHECK(empty.end_param() == 0);
  CHECK(empty.point(0) == Point{2, -4});

  const auto square = word_to_path(parse_word("a1 a2 A1 A2", 2), 2);
  CHECK(square.point(8) == square.point(0));
  CHECK(square.point(3) == Point{2, 1});
}

TEST_CASE("paths: endpoints, parity and walking agree") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int i = 0; i < 100; ++i) {
      const auto w = random_word(n, 1 + i % 20, rng);
      const auto path = word_to_path(w, n);
      const auto tokens = to_terminals(w);
      auto twice = displacement(w, n);
      for (auto& c : twice) c *= 2;
      CHECK(path.point(path.end_param()) - path.point(0) == twice);
      for (Param p = 0; p <= path.end_param(); ++p) {
        const auto pt = path.point(p);
        const auto ref = oracle::walk(tokens, n, p);
        CHECK(pt == Vec(ref.begin(), ref.end()));
        std::size_t odd = 0;
        for (auto c : pt) odd += (c % 2 != 0);
        CHECK(odd == (p % 2 == 0 ? 0u : 1u));
      }
    }
}

TEST_CASE("for_each_word enumerates every word once") {
  std::size_t count = 0;
  std::set<mcfg::TerminalString> seen;
  for_each_word(2, 4, [&](const GroupWord& w) {
    ++count;
    seen.insert(to_terminals(w));
  });
  CHECK(count == 1 + 4 + 16 + 64 + 256);
  CHECK(seen.size() == count);
}

TEST_CASE("random_identity_word stays within bounds") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_identity_word(3, 14, rng);
    CHECK(w.size() <= 14);
    CHECK(oracle::balanced(to_terminals(w), 3));
  }
}
