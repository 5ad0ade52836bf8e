#include <unordered_map>

#include "znmcfg/errors.hpp"
#include "znmcfg/synthesis.hpp"

namespace znmcfg::synth {

using zn::Vec;
using zn::operator+;
using zn::operator-;
using zn::operator+=;
using zn::operator-=;

namespace {

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = v.size();
    for (auto c : v) h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Sum value -> largest admissible first breakpoint of the remaining intervals.
using Reachable = std::unordered_map<Vec, Param, VecHash>;

}  // namespace

nlohmann::ordered_json SegmentPartition::to_json() const {
  return {{"breakpoints", breakpoints}, {"doubled", true}};
}

bool is_balanced(const LatticePath& path, const SegmentPartition& partition) {
  const auto& bp = partition.breakpoints;
  if (bp.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (bp[i] > path.end_param()) return false;
    if (i > 0 && bp[i] < bp[i - 1]) return false;
  }
  Vec twice(path.dimension(), 0);
  for (std::size_t i = 0; i < partition.k(); ++i) twice += path.span(partition.begin(i), partition.end(i));
  for (auto& c : twice) c *= 2;
  return twice == path.span(0, path.end_param());
}

SegmentPartition burago_partition(const LatticePath& path, std::size_t k) {
  if (k == 0) throw PreconditionError("a balanced partition needs k >= 1 intervals");
  const Param last = path.end_param();

  std::vector<Vec> q;
  q.reserve(last + 1);
  for (Param p = 0; p <= last; ++p) q.push_back(path.point(p));

  Vec target = q[last] - q[0];
  for (auto& c : target) c /= 2;  // doubled total is even in every coordinate

  // reach[j]: sums achievable by intervals j..k-1 (0-based), keyed to the
  // largest t_j that still admits them.
  std::vector<Reachable> reach(k + 1);
  reach[k].emplace(Vec(path.dimension(), 0), last);
  for (std::size_t j = k; j-- > 1;) {
    for (Param t = 0; t <= last; ++t) {
      for (Param s = t; s <= last; ++s) {
        const Vec d = q[s] - q[t];
        for (const auto& [rest, latest] : reach[j + 1]) {
          if (latest < s) continue;
          auto [it, inserted] = reach[j].try_emplace(d + rest, t);
          if (!inserted && it->second < t) it->second = t;
        }
      }
    }
  }

  SegmentPartition out;
  Vec need = target;
  Param pos = 0;
  for (std::size_t j = 0; j < k; ++j) {
    bool placed = false;
    for (Param t = pos; t <= last && !placed; ++t) {
      for (Param s = t; s <= last; ++s) {
        Vec rest = need - (q[s] - q[t]);
        auto it = reach[j + 1].find(rest);
        if (it == reach[j + 1].end() || it->second < s) continue;
        out.breakpoints.push_back(t);
        out.breakpoints.push_back(s);
        need = std::move(rest);
        pos = s;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw InvariantFailure("no balanced partition with k=" + std::to_string(k) +
                             " at half-unit granularity for path \"" +
                             zn::format_word(path.edges()) + "\" (n=" +
                             std::to_string(path.dimension()) + ")");
  }
  return out;
}

}  // namespace znmcfg::synth
