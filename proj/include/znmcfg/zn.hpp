#pragma once

// Words over the standard generators of Z^n, the grammar family for their
// word problem, and lattice paths in doubled coordinates.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "znmcfg/mcfg.hpp"

namespace znmcfg::zn {

// a_axis when sign == +1, A_axis when sign == -1. Axes are 1-based.
struct Generator {
  std::size_t axis = 1;
  int sign = 1;

  Generator inverse() const { return {axis, -sign}; }
  bool operator==(const Generator&) const = default;
};

using GroupWord = std::vector<Generator>;
using Vec = std::vector<std::int64_t>;

struct GrammarParams {
  std::size_t n = 0;
  std::size_t k = 0;  // number of intervals in a balanced partition
  std::size_t m = 0;  // arity of I
  std::size_t half() const { return m / 2; }
  bool operator==(const GrammarParams&) const = default;
};

GrammarParams grammar_params(std::size_t n);

// Rule layout of make_grammar(n).
inline constexpr std::size_t kStartRule = 0;
inline constexpr std::size_t kEmptyAxiom = 1;
inline constexpr std::size_t generator_axiom(std::size_t axis) { return 1 + axis; }
inline constexpr const char* kTupleNonterminal = "I";
inline constexpr const char* kStartNonterminal = "S";

// S(x1 ... xm) <- I(x1, ..., xm);  I(eps, ..., eps) <-;  I(a_i, A_i, eps, ...) <-
// for every axis; one combine schema over I.
mcfg::Grammar make_grammar(std::size_t n);

std::string token_name(Generator g);
Generator parse_token(std::string_view token, std::size_t n);

// Space-separated tokens "a1" .. "an", "A1" .. "An".
GroupWord parse_word(std::string_view text, std::size_t n);
std::string format_word(const GroupWord& w);

mcfg::TerminalString to_terminals(const GroupWord& w);
GroupWord from_terminals(const mcfg::TerminalString& s, std::size_t n);

Vec displacement(const GroupWord& w, std::size_t n);
bool is_identity(const GroupWord& w, std::size_t n);
bool is_zero(const Vec& v);

// Half-unit parameter along a path: 0 .. 2 * length.
using Param = std::size_t;
// Point in doubled coordinates: lattice points have all-even coordinates.
using Point = Vec;

class LatticePath {
 public:
  LatticePath() = default;
  // `start` is in doubled coordinates and must be all-even; empty means origin.
  LatticePath(std::size_t n, GroupWord edges, Point start = {});

  std::size_t dimension() const { return n_; }
  std::size_t length() const { return edges_.size(); }
  Param end_param() const { return 2 * edges_.size(); }
  const GroupWord& edges() const { return edges_; }

  Point point(Param p) const;
  // The edge whose interior contains odd parameter p, or which starts at even p.
  const Generator& edge_at(Param p) const { return edges_.at(p / 2); }
  static bool is_lattice_param(Param p) { return p % 2 == 0; }

  // point(end) - point(begin), doubled.
  Vec span(Param begin, Param end) const;

 private:
  std::size_t n_ = 0;
  GroupWord edges_;
  std::vector<Point> vertices_;
};

LatticePath word_to_path(const GroupWord& w, std::size_t n, Point start = {});

Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);

}  // namespace znmcfg::zn
