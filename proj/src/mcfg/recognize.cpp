#include "znmcfg/mcfg.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <memory_resource>
#include <string_view>
#include <tuple>
#include <unordered_map>

namespace znmcfg::mcfg {

namespace {

// Charts up to this many entries are searched linearly.
constexpr std::size_t kLinearLimit = 32;

// Terminals are interned as char32_t codes starting at 1 so that substring
// tests on the target are plain find() calls.
struct CompiledItem {
  bool variable = false;
  char32_t terminal = 0;
  std::size_t premise = 0;
  std::size_t position = 0;
};

struct CompiledRule {
  std::size_t index = 0;
  std::size_t lhs = 0;
  std::vector<std::vector<CompiledItem>> templates;
  std::vector<std::size_t> rhs;
};

}  // namespace

struct BoundedRecognizer::Compiled {
  const Grammar* grammar = nullptr;
  std::unordered_map<std::string, char32_t> codes;
  std::array<char32_t, 256> single_char{};  // codes of one-character terminals
  std::size_t start = 0;
  std::vector<CompiledRule> rules;
  // rules_using[nt] lists (rule, rhs position) pairs that take nt as a premise.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rules_using;
};

namespace {

// Every component of a chart entry is a substring of the target, so it is
// stored as the position of its first occurrence and its length.
struct Span {
  std::uint32_t pos = 0;
  std::uint32_t len = 0;
  bool operator==(const Span&) const = default;
};

struct ChartEntry {
  std::size_t nonterminal = 0;
  std::size_t first_span = 0;  // components are spans_[first_span .. + arity)
  std::size_t rule = 0;
  std::size_t first_premise = 0;  // premises are premises_[first_premise .. + rhs size)
};

using Compiled = BoundedRecognizer::Compiled;

class Closure {
 public:
  Closure(const Compiled& c, std::u32string_view target, std::pmr::memory_resource* mem)
      : compiled_(c),
        grammar_(*c.grammar),
        target_(target),
        entries_(mem),
        spans_(mem),
        premises_(mem),
        index_(mem),
        by_nt_(c.grammar->nonterminals.size(), mem),
        combo_(mem),
        scratch_(mem),
        buffer_(mem) {
    entries_.reserve(kLinearLimit);
    spans_.reserve(4 * kLinearLimit);
    premises_.reserve(2 * kLinearLimit);
    buffer_.reserve(target_.size() + 1);
  }

  std::optional<std::size_t> run() {
    for (const auto& rule : compiled_.rules)
      if (rule.rhs.empty()) fire(rule, {});
    // Entries double as the agenda: they are visited in discovery order.
    for (std::size_t next = 0; next < entries_.size(); ++next) {
      const std::size_t nt = entries_[next].nonterminal;
      by_nt_[nt].push_back(next);
      for (const auto& [r, j] : compiled_.rules_using[nt]) expand(compiled_.rules[r], j, next);
    }
    const Span whole{0, static_cast<std::uint32_t>(target_.size())};
    return lookup(compiled_.start, &whole);
  }

  Derivation witness(std::size_t goal) const {
    Derivation d;
    std::unordered_map<std::size_t, std::size_t> emitted;
    std::function<std::size_t(std::size_t)> emit = [&](std::size_t id) -> std::size_t {
      if (auto it = emitted.find(id); it != emitted.end()) return it->second;
      const ChartEntry& e = entries_[id];
      const Rule& rule = grammar_.rules[e.rule];
      std::vector<std::size_t> premise_steps;
      for (std::size_t j = 0; j < rule.rhs.size(); ++j)
        premise_steps.push_back(emit(premises_[e.first_premise + j]));
      RuleInstance inst;
      inst.rule = ConcreteRef{e.rule};
      for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
        const ChartEntry& premise = entries_[premises_[e.first_premise + j]];
        for (std::size_t q = 0; q < rule.rhs[j].vars.size(); ++q)
          inst.substitution.emplace_back(rule.rhs[j].vars[q],
                                         decode(spans_[premise.first_span + q]));
      }
      inst.conclusion = to_instance(e);
      inst.premises = std::move(premise_steps);
      d.steps.push_back(std::move(inst));
      emitted.emplace(id, d.steps.size() - 1);
      return d.steps.size() - 1;
    };
    emit(goal);
    return d;
  }

 private:
  std::size_t arity(std::size_t nt) const { return grammar_.nonterminals[nt].arity; }

  void expand(const CompiledRule& rule, std::size_t pinned, std::size_t id) {
    combo_.assign(rule.rhs.size(), 0);
    combo_[pinned] = id;
    enumerate(rule, pinned, 0);
  }

  void enumerate(const CompiledRule& rule, std::size_t pinned, std::size_t pos) {
    if (pos == rule.rhs.size()) {
      fire(rule, combo_);
      return;
    }
    if (pos == pinned) {
      enumerate(rule, pinned, pos + 1);
      return;
    }
    // by_nt_ grows only between agenda steps, so iterating by index is safe.
    const auto& candidates = by_nt_[rule.rhs[pos]];
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      combo_[pos] = candidates[i];
      enumerate(rule, pinned, pos + 1);
    }
  }

  void fire(const CompiledRule& rule, const std::pmr::vector<std::size_t>& premises) {
    auto& spans = scratch_;
    spans.clear();
    std::size_t total = 0;
    for (const auto& tmpl : rule.templates) {
      buffer_.clear();
      for (const auto& item : tmpl) {
        if (item.variable) {
          const Span s = spans_[entries_[premises[item.premise]].first_span + item.position];
          buffer_.append(target_, s.pos, s.len);
        } else {
          buffer_.push_back(item.terminal);
        }
      }
      total += buffer_.size();
      if (total > target_.size()) return;
      const std::size_t at = target_.find(std::u32string_view(buffer_));
      if (at == std::u32string_view::npos) return;
      spans.push_back({static_cast<std::uint32_t>(at), static_cast<std::uint32_t>(buffer_.size())});
    }

    if (auto found = lookup(rule.lhs, spans.data())) {
      // Keep the smallest (rule, premises) witness among those whose premises
      // were discovered earlier, which keeps back-pointers acyclic.
      ChartEntry& e = entries_[*found];
      for (std::size_t p : premises)
        if (p >= *found) return;
      const auto old = premises_.begin() + static_cast<std::ptrdiff_t>(e.first_premise);
      const auto old_end = old + static_cast<std::ptrdiff_t>(grammar_.rules[e.rule].rhs.size());
      const bool smaller =
          rule.index < e.rule ||
          (rule.index == e.rule &&
           std::lexicographical_compare(premises.begin(), premises.end(), old, old_end));
      if (smaller) {
        e.rule = rule.index;
        e.first_premise = premises_.size();
        premises_.insert(premises_.end(), premises.begin(), premises.end());
      }
      return;
    }

    const std::size_t id = entries_.size();
    entries_.push_back({rule.lhs, spans_.size(), rule.index, premises_.size()});
    spans_.insert(spans_.end(), spans.begin(), spans.end());
    premises_.insert(premises_.end(), premises.begin(), premises.end());
    if (!index_.empty()) {
      index_.emplace(key(rule.lhs, spans.data()), id);
    } else if (entries_.size() > kLinearLimit) {
      for (std::size_t i = 0; i < entries_.size(); ++i)
        index_.emplace(key(entries_[i].nonterminal, &spans_[entries_[i].first_span]), i);
    }
  }

  // Small charts are searched linearly; larger ones through index_.

  std::optional<std::size_t> lookup(std::size_t nt, const Span* spans) const {
    if (!index_.empty()) {
      auto it = index_.find(key(nt, spans));
      if (it == index_.end()) return std::nullopt;
      return it->second;
    }
    const std::size_t a = arity(nt);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const ChartEntry& e = entries_[i];
      if (e.nonterminal == nt && std::equal(spans, spans + a, spans_.begin() + static_cast<std::ptrdiff_t>(e.first_span)))
        return i;
    }
    return std::nullopt;
  }

  std::pmr::u32string key(std::size_t nt, const Span* spans) const {
    std::pmr::u32string k(1, static_cast<char32_t>(nt), index_.get_allocator().resource());
    for (std::size_t i = 0; i < arity(nt); ++i) {
      k.push_back(spans[i].pos);
      k.push_back(spans[i].len);
    }
    return k;
  }

  TerminalString decode(Span s) const {
    TerminalString out;
    out.reserve(s.len);
    for (std::uint32_t i = 0; i < s.len; ++i) out.push_back(grammar_.terminals[target_[s.pos + i] - 1]);
    return out;
  }

  Instance to_instance(const ChartEntry& e) const {
    Instance inst{grammar_.nonterminals[e.nonterminal].name, {}};
    for (std::size_t i = 0; i < arity(e.nonterminal); ++i)
      inst.components.push_back(decode(spans_[e.first_span + i]));
    return inst;
  }

  const Compiled& compiled_;
  const Grammar& grammar_;
  std::u32string_view target_;
  std::pmr::vector<ChartEntry> entries_;
  std::pmr::vector<Span> spans_;
  std::pmr::vector<std::size_t> premises_;
  std::pmr::unordered_map<std::pmr::u32string, std::size_t> index_;
  std::pmr::vector<std::pmr::vector<std::size_t>> by_nt_;
  std::pmr::vector<std::size_t> combo_;
  std::pmr::vector<Span> scratch_;
  std::pmr::u32string buffer_;
};

}  // namespace

BoundedRecognizer::BoundedRecognizer(const Grammar& g) {
  if (!g.schemas.empty())
    throw UnsupportedGrammar(
        "bounded recognition needs concrete rules only; grammar declares a combine schema");
  auto compiled = std::make_shared<Compiled>();
  Compiled& c = *compiled;
  c.grammar = &g;
  std::unordered_map<std::string, std::size_t> nt_index;
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) nt_index.emplace(g.nonterminals[i].name, i);
  for (std::size_t i = 0; i < g.terminals.size(); ++i) {
    const auto code = static_cast<char32_t>(i + 1);
    c.codes.emplace(g.terminals[i], code);
    if (g.terminals[i].size() == 1) c.single_char[static_cast<unsigned char>(g.terminals[i][0])] = code;
  }
  c.start = nt_index.at(g.start);
  c.rules_using.resize(g.nonterminals.size());

  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    const Rule& rule = g.rules[r];
    CompiledRule cr;
    cr.index = r;
    cr.lhs = nt_index.at(rule.lhs);
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> where;
    for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
      cr.rhs.push_back(nt_index.at(rule.rhs[j].nonterminal));
      c.rules_using[cr.rhs.back()].emplace_back(r, j);
      for (std::size_t q = 0; q < rule.rhs[j].vars.size(); ++q)
        where.emplace(rule.rhs[j].vars[q], std::pair{j, q});
    }
    for (const auto& tmpl : rule.templates) {
      std::vector<CompiledItem> items;
      for (const auto& item : tmpl) {
        CompiledItem ci;
        if (item.is_variable()) {
          ci.variable = true;
          std::tie(ci.premise, ci.position) = where.at(item.name);
        } else {
          ci.terminal = c.codes.at(item.name);
        }
        items.push_back(ci);
      }
      cr.templates.push_back(std::move(items));
    }
    c.rules.push_back(std::move(cr));
  }
  compiled_ = std::move(compiled);
}

Recognition BoundedRecognizer::operator()(const TerminalString& s) const {
  // Chart storage for typical queries fits in this buffer.
  std::array<std::byte, 16384> arena;
  std::pmr::monotonic_buffer_resource mem(arena.data(), arena.size());

  std::pmr::u32string target(&mem);
  target.reserve(s.size());
  for (const auto& sym : s) {
    char32_t code = 0;
    if (sym.size() == 1)
      code = compiled_->single_char[static_cast<unsigned char>(sym[0])];
    else if (auto it = compiled_->codes.find(sym); it != compiled_->codes.end())
      code = it->second;
    if (code == 0) return {};
    target.push_back(code);
  }

  Closure closure(*compiled_, target, &mem);
  auto goal = closure.run();
  if (!goal) return {};
  return {true, closure.witness(*goal)};
}

Recognition recognize_bounded(const Grammar& g, const TerminalString& s) {
  return BoundedRecognizer(g)(s);
}

}  // namespace znmcfg::mcfg
