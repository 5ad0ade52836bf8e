#include <algorithm>
#include <sstream>

#include "znmcfg/errors.hpp"
#include "znmcfg/synthesis.hpp"

namespace znmcfg::synth {

using zn::Vec;
using zn::operator+;
using zn::operator-;
using zn::operator+=;
using zn::operator-=;

std::size_t HalfRefinement::selected_count() const {
  return static_cast<std::size_t>(
      std::count_if(parts.begin(), parts.end(), [](const Part& p) { return p.selected; }));
}

Vec side_sum(const RefinedSplit& split, bool selected) {
  Vec sum(split.left.path.dimension(), 0);
  for (const HalfRefinement* half : {&split.left, &split.right})
    for (const auto& part : half->parts)
      if (part.selected == selected) sum += half->path.span(part.begin, part.end);
  return sum;
}

std::size_t side_length(const RefinedSplit& split, bool selected) {
  std::size_t total = 0;
  for (const HalfRefinement* half : {&split.left, &split.right})
    for (const auto& part : half->parts)
      if (part.selected == selected) total += part.half_units();
  return total;
}

namespace {

std::string dump(const RefinedSplit& split) {
  std::ostringstream out;
  for (const auto* half : {&split.left, &split.right}) {
    out << (half == &split.left ? "left" : "right") << " \"" << zn::format_word(half->path.edges())
        << "\":";
    for (const auto& p : half->parts)
      out << " [" << p.begin << "," << p.end << ")c" << p.component << (p.selected ? "*" : "");
    out << ";";
  }
  return out.str();
}

void check_half(const HalfRefinement& half, std::size_t h, const char* name,
                std::vector<std::string>& out) {
  const std::string tag = std::string(name) + " half: ";
  if (half.component_bounds.size() != h + 1) {
    out.push_back(tag + "expected " + std::to_string(h + 1) + " component bounds");
    return;
  }
  if (half.parts.empty()) {
    out.push_back(tag + "no parts");
    return;
  }
  if (half.parts.front().begin != 0 || half.parts.back().end != half.path.end_param())
    out.push_back(tag + "parts do not cover the path");
  std::size_t prev_component = half.first_component;
  for (std::size_t i = 0; i < half.parts.size(); ++i) {
    const Part& p = half.parts[i];
    if (p.begin > p.end) out.push_back(tag + "part " + std::to_string(i) + " is reversed");
    if (i + 1 < half.parts.size() && p.end != half.parts[i + 1].begin)
      out.push_back(tag + "parts " + std::to_string(i) + " and " + std::to_string(i + 1) +
                    " are not contiguous");
    if (p.component < half.first_component || p.component >= half.first_component + h) {
      out.push_back(tag + "part " + std::to_string(i) + " names a foreign component");
      continue;
    }
    if (p.component < prev_component)
      out.push_back(tag + "components out of order at part " + std::to_string(i));
    prev_component = p.component;
    const std::size_t local = p.component - half.first_component;
    if (p.begin < half.component_bounds[local] || p.end > half.component_bounds[local + 1])
      out.push_back(tag + "part " + std::to_string(i) + " crosses a component boundary");
  }
}

}  // namespace

std::vector<std::string> split_violations(const RefinedSplit& split, const GrammarParams& params) {
  std::vector<std::string> out;
  const std::size_t h = params.half(), k = params.k, m = params.m;
  check_half(split.left, h, "left", out);
  check_half(split.right, h, "right", out);

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
  };
  need(split.s() >= k && split.s_bar() >= k && split.t() >= k && split.t_bar() >= k,
       "every index set needs at least k parts");
  need(split.s() >= split.s_bar(), "|S| < |S-bar| after normalization");
  need(split.t() <= split.t_bar(), "|T| > |T-bar| after normalization");
  need(split.s() + split.t() <= m, "|S| + |T| exceeds m");
  need(split.s_bar() + split.t_bar() <= m, "|S-bar| + |T-bar| exceeds m");
  need(zn::is_zero(side_sum(split, true)), "selected side has nonzero displacement");
  need(zn::is_zero(side_sum(split, false)), "unselected side has nonzero displacement");
  need(side_length(split, true) > 0, "selected side is empty");
  need(side_length(split, false) > 0, "unselected side is empty");
  return out;
}

namespace {

HalfRefinement refine_half(const Tuple& x, std::size_t first, const GrammarParams& params) {
  const std::size_t h = params.half();
  HalfRefinement half;
  half.first_component = first;
  GroupWord joined;
  half.component_bounds.push_back(0);
  for (std::size_t i = first; i < first + h; ++i) {
    joined.insert(joined.end(), x[i].begin(), x[i].end());
    half.component_bounds.push_back(2 * joined.size());
  }
  half.path = LatticePath(params.n, std::move(joined));

  const SegmentPartition partition = burago_partition(half.path, params.k);

  // Interior cuts in parameter order; at equal parameters component
  // boundaries come before breakpoints.
  struct Cut {
    Param at;
    bool breakpoint;
  };
  std::vector<Cut> cuts;
  for (std::size_t i = 1; i < h; ++i) cuts.push_back({half.component_bounds[i], false});
  for (Param p : partition.breakpoints) cuts.push_back({p, true});
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    return a.at < b.at || (a.at == b.at && !a.breakpoint && b.breakpoint);
  });

  std::size_t component = first;
  std::size_t crossed = 0;
  Param from = 0;
  for (const Cut& cut : cuts) {
    half.parts.push_back({component, from, cut.at, crossed % 2 == 1});
    from = cut.at;
    if (cut.breakpoint)
      ++crossed;
    else
      ++component;
  }
  half.parts.push_back({component, from, half.path.end_param(), crossed % 2 == 1});
  return half;
}

void flip(HalfRefinement& half) {
  for (auto& p : half.parts) p.selected = !p.selected;
}

}  // namespace

RefinedSplit refine_and_split(const Tuple& x, const GrammarParams& params) {
  const std::size_t m = params.m, h = params.half();
  if (x.size() != m) throw PreconditionError("tuple must have m components");
  Vec left(params.n, 0), right(params.n, 0);
  for (std::size_t i = 0; i < m; ++i) (i < h ? left : right) += zn::displacement(x[i], params.n);
  if (!zn::is_zero(left + right)) throw PreconditionError("tuple has nonzero total displacement");
  if (zn::is_zero(left))
    throw PreconditionError("both halves must have nonzero displacement to be split");

  RefinedSplit split{refine_half(x, 0, params), refine_half(x, h, params)};
  if (split.s() < split.s_bar()) flip(split.left);
  if (split.t() > split.t_bar()) flip(split.right);
  return split;
}

namespace {

// A run of coinciding piece boundaries at an odd parameter, i.e. cuts in the
// middle of one edge.
struct MidCut {
  HalfRefinement* half;
  Param at;
  bool before_selected;  // side of the half-edge [at - 1, at]
  bool after_selected;   // side of the half-edge [at, at + 1]
  std::size_t axis;

  bool split_edge() const { return before_selected != after_selected; }
};

std::vector<MidCut> mid_cuts(RefinedSplit& split) {
  std::vector<MidCut> out;
  for (HalfRefinement* half : {&split.left, &split.right}) {
    const auto& parts = half->parts;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const Param at = parts[i].end;
      if (LatticePath::is_lattice_param(at) || parts[i].begin == at) continue;
      std::size_t j = i + 1;
      while (parts[j].end == at) ++j;  // skip empty parts sharing the cut
      out.push_back({half, at, parts[i].selected, parts[j].selected, half->path.edge_at(at).axis});
    }
  }
  return out;
}

void move_cut(HalfRefinement& half, Param from, Param to) {
  for (auto& p : half.parts) {
    if (p.begin == from) p.begin = to;
    if (p.end == from) p.end = to;
  }
}

bool balanced_and_nonempty(const RefinedSplit& split) {
  return zn::is_zero(side_sum(split, true)) && side_length(split, true) > 0 &&
         side_length(split, false) > 0;
}

}  // namespace

RefinedSplit lift_to_lattice(RefinedSplit split) {
  const std::size_t arity = 2 * (split.left.component_bounds.size() - 1);
  if (split.left.path.length() + split.right.path.length() <= arity)
    throw PreconditionError("lattice repair needs a tuple longer than its arity");
  const std::string before = dump(split);
  while (true) {
    std::vector<MidCut> cuts = mid_cuts(split);
    if (cuts.empty()) return split;

    const MidCut x = cuts.front();
    if (!x.split_edge()) {
      // Both sides of the edge lie in the same sum; snap to the earlier vertex.
      move_cut(*x.half, x.at, x.at - 1);
      continue;
    }

    auto partner = std::find_if(cuts.begin() + 1, cuts.end(), [&](const MidCut& c) {
      return c.split_edge() && c.axis == x.axis;
    });
    if (partner == cuts.end())
      throw InvariantFailure("lattice repair found no partner for the mid-lattice cut at " +
                             std::to_string(x.at) + " on axis " + std::to_string(x.axis) +
                             "; split was " + before + " now " + dump(split));
    const MidCut y = *partner;

    // Shift x forward by half a unit, and y in whichever direction restores
    // the zero sum; if that empties a side, shift x backward instead.
    bool done = false;
    for (int dx : {+1, -1}) {
      for (int dy : {+1, -1}) {
        RefinedSplit trial = split;
        HalfRefinement& hx = x.half == &split.left ? trial.left : trial.right;
        HalfRefinement& hy = y.half == &split.left ? trial.left : trial.right;
        move_cut(hx, x.at, x.at + dx);
        move_cut(hy, y.at, y.at + dy);
        if (balanced_and_nonempty(trial)) {
          split = std::move(trial);
          done = true;
          break;
        }
      }
      if (done) break;
    }
    if (!done)
      throw InvariantFailure("lattice repair cannot keep both sides nonempty; split was " + before +
                             " now " + dump(split));
  }
}

namespace {

GroupWord slice(const LatticePath& path, const Part& part) {
  const auto& e = path.edges();
  return GroupWord(e.begin() + static_cast<std::ptrdiff_t>(part.begin / 2),
                   e.begin() + static_cast<std::ptrdiff_t>(part.end / 2));
}

}  // namespace

YZSplit make_yz(const RefinedSplit& split, const GrammarParams& params) {
  const std::size_t m = params.m;
  YZSplit out;
  std::vector<std::vector<std::size_t>> blocks(m);
  for (const HalfRefinement* half : {&split.left, &split.right}) {
    for (const auto& part : half->parts) {
      if (!LatticePath::is_lattice_param(part.begin) || !LatticePath::is_lattice_param(part.end))
        throw PreconditionError("make_yz needs a split whose cuts are all lattice parameters");
      Tuple& side = part.selected ? out.y : out.z;
      side.push_back(slice(half->path, part));
      blocks.at(part.component).push_back(part.selected ? side.size() : m + side.size());
    }
  }
  if (out.y.size() > m || out.z.size() > m)
    throw InvariantFailure("split needs more than m slots on one side: " + dump(split));

  // Padding slots hold epsilon; park them at the end of the last block.
  for (std::size_t slot = out.y.size() + 1; slot <= m; ++slot) blocks.back().push_back(slot);
  for (std::size_t slot = out.z.size() + 1; slot <= m; ++slot) blocks.back().push_back(m + slot);
  out.y.resize(m);
  out.z.resize(m);
  out.blocking.blocks = std::move(blocks);
  return out;
}

}  // namespace znmcfg::synth
