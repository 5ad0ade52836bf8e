#pragma once

// Explicit derivations for zero-displacement words over the grammar built by
// zn::make_grammar. The recursion splits an m-tuple into two shorter
// zero-displacement m-tuples using balanced interval partitions of each half,
// repaired onto lattice points.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "znmcfg/mcfg.hpp"
#include "znmcfg/zn.hpp"

namespace znmcfg::synth {

using zn::GrammarParams;
using zn::GroupWord;
using zn::LatticePath;
using zn::Param;

// An m-tuple of words, the components of an I instance.
using Tuple = std::vector<GroupWord>;

// Breakpoints t_1 <= s_1 <= ... <= t_k <= s_k, as half-unit parameters.
struct SegmentPartition {
  std::vector<Param> breakpoints;

  std::size_t k() const { return breakpoints.size() / 2; }
  Param begin(std::size_t i) const { return breakpoints[2 * i]; }
  Param end(std::size_t i) const { return breakpoints[2 * i + 1]; }

  nlohmann::ordered_json to_json() const;
  bool operator==(const SegmentPartition&) const = default;
};

// True iff the breakpoints are ordered, lie on the path and
// 2 * sum_i (point(s_i) - point(t_i)) == point(end) - point(0).
bool is_balanced(const LatticePath& path, const SegmentPartition& partition);

// The lexicographically smallest breakpoint tuple (t_1, s_1, ..., t_k, s_k)
// over half-unit parameters that satisfies is_balanced. Throws
// InvariantFailure if none exists.
SegmentPartition burago_partition(const LatticePath& path, std::size_t k);

// A piece of one half of the tuple. `selected` marks membership in S (left
// half) or T (right half); unselected pieces form the complements.
struct Part {
  std::size_t component = 0;  // 0-based index into the full m-tuple
  Param begin = 0;
  Param end = 0;
  bool selected = false;

  std::size_t half_units() const { return end - begin; }
  bool operator==(const Part&) const = default;
};

struct HalfRefinement {
  LatticePath path;                     // concatenation of this half's components
  std::vector<Param> component_bounds;  // h + 1 parameters, first 0, last 2 * length
  std::size_t first_component = 0;
  std::vector<Part> parts;              // contiguous, in path order

  std::size_t selected_count() const;
  std::size_t unselected_count() const { return parts.size() - selected_count(); }
};

struct RefinedSplit {
  HalfRefinement left;
  HalfRefinement right;

  // |S|, |S-bar|, |T|, |T-bar|.
  std::size_t s() const { return left.selected_count(); }
  std::size_t s_bar() const { return left.unselected_count(); }
  std::size_t t() const { return right.selected_count(); }
  std::size_t t_bar() const { return right.unselected_count(); }
};

// Doubled displacement of the selected (or unselected) pieces of both halves.
zn::Vec side_sum(const RefinedSplit& split, bool selected);
// Number of half-units on the selected (or unselected) side.
std::size_t side_length(const RefinedSplit& split, bool selected);

// Structural problems of a split: contiguity, coverage, refinement of the
// component boundaries, cardinality bounds and the zero-sum condition on both
// sides. Empty when the split is admissible.
std::vector<std::string> split_violations(const RefinedSplit& split, const GrammarParams& params);

// Balanced partitions of both halves merged with the component boundaries;
// S and T are the pieces inside the intervals, normalized so that
// |S| >= |S-bar| and |T| <= |T-bar|. Both halves must have nonzero
// displacement and the whole tuple zero displacement.
RefinedSplit refine_and_split(const Tuple& x, const GrammarParams& params);

// Moves every mid-lattice piece boundary onto a lattice parameter while
// keeping both sides at zero displacement and nonempty. The tuple must be
// longer than m; shorter ones can have no such split at all.
RefinedSplit lift_to_lattice(RefinedSplit split);

struct YZSplit {
  Tuple y;
  Tuple z;
  mcfg::Blocking blocking;  // reassembles x from slots y_1..y_m, z_1..z_m
};

// Requires every piece boundary to be a lattice parameter.
YZSplit make_yz(const RefinedSplit& split, const GrammarParams& params);

mcfg::Instance tuple_instance(const Tuple& x);

// Derivation ending in I(x) for a zero-displacement tuple of total length <= m.
mcfg::Derivation base_derivation(const Tuple& x, const GrammarParams& params);

// Derivation ending in I(x) for any zero-displacement m-tuple.
mcfg::Derivation synthesize(const Tuple& x, const GrammarParams& params);

// Derivation ending in S(w) when w has zero displacement, nullopt otherwise.
std::optional<mcfg::Derivation> synthesize_word(const GroupWord& w, std::size_t n);

}  // namespace znmcfg::synth
