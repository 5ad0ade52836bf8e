// Acceptance run: one PASS/FAIL line per criterion. Pass criterion ids
// (e.g. "AC-3") to run a subset.

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "znmcfg/cli.hpp"
#include "znmcfg/errors.hpp"
#include "znmcfg/json_io.hpp"
#include "znmcfg/sampling.hpp"
#include "znmcfg/synthesis.hpp"

using namespace znmcfg;

namespace {

// Empty on success, otherwise a description of the first failure.
struct Outcome {
  std::string failure;
  std::string detail;
};

Outcome fail(std::string why) { return {std::move(why), {}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Outcome ac1() {
  std::size_t words = 0, members = 0;
  for (const auto& [n, max_len] : {std::pair<std::size_t, std::size_t>{1, 10}, {2, 6}}) {
    const auto g = zn::make_grammar(n);
    const auto m = zn::grammar_params(n).m;
    std::string bad;
    zn::for_each_word(n, max_len, [&](const zn::GroupWord& w) {
      if (!bad.empty()) return;
      ++words;
      const auto tokens = zn::to_terminals(w);
      const auto d = synth::synthesize_word(w, n);
      if (d.has_value() != oracle::balanced(tokens, n)) {
        bad = "membership disagrees on '" + zn::format_word(w) + "'";
        return;
      }
      if (!d) return;
      ++members;
      try {
        if (mcfg::check_derivation(g, *d) != mcfg::Instance{"S", {tokens}})
          bad = "wrong conclusion for '" + zn::format_word(w) + "'";
        else if (!oracle::all_tuples_balanced(*d, n, m))
          bad = "unbalanced I instance for '" + zn::format_word(w) + "'";
      } catch (const mcfg::DerivationError& e) {
        bad = "checker rejects '" + zn::format_word(w) + "': " + e.what();
      }
    });
    if (!bad.empty()) return fail("n=" + std::to_string(n) + ": " + bad);
  }
  if (words != 2047 + 5461) return fail("enumerated " + std::to_string(words) + " words");
  return {{}, std::to_string(words) + " words, " + std::to_string(members) + " derived"};
}

Outcome ac2() {
  std::mt19937_64 rng(20261016);
  std::size_t steps = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto g = zn::make_grammar(n);
    const auto m = zn::grammar_params(n).m;
    const std::size_t max_len = n <= 2 ? 20 : 14;
    for (int i = 0; i < 1000; ++i) {
      const auto w = zn::random_identity_word(n, max_len, rng);
      const auto label = "n=" + std::to_string(n) + " '" + zn::format_word(w) + "'";
      if (!oracle::balanced(zn::to_terminals(w), n)) return fail("sampler gave " + label);
      const auto d = synth::synthesize_word(w, n);
      if (!d) return fail("no derivation for " + label);
      try {
        if (mcfg::check_derivation(g, *d) != mcfg::Instance{"S", {zn::to_terminals(w)}})
          return fail("wrong conclusion for " + label);
      } catch (const mcfg::DerivationError& e) {
        return fail("checker rejects " + label + ": " + e.what());
      }
      if (!oracle::all_tuples_balanced(*d, n, m)) return fail("unbalanced I instance for " + label);
      steps += d->steps.size();
    }
  }
  return {{}, "3000 words, " + std::to_string(steps) + " steps checked"};
}

Outcome ac3() {
  const auto g = mcfg::load_grammar(ZNMCFG_DATA_DIR "/example1.json");
  const std::size_t bound = 16;

  // The naive fixpoint enumerates the language directly from the rules.
  std::set<mcfg::TerminalString> expected;
  for (std::size_t q = 0; 4 * q <= bound; ++q) {
    mcfg::TerminalString s;
    for (const char* letter : {"a", "b", "c", "d"}) s.insert(s.end(), q, letter);
    expected.insert(s);
  }
  if (oracle::language(g, bound) != expected)
    return fail("fixpoint enumeration is not {a^n b^n c^n d^n}");

  const mcfg::BoundedRecognizer recognize(g);
  const std::array<std::string, 4> letters{"a", "b", "c", "d"};
  std::size_t strings = 0, accepted = 0;
  for (std::size_t len = 0; len <= bound; ++len) {
    std::vector<std::size_t> digits(len, 0);
    mcfg::TerminalString s(len, letters[0]);
    while (true) {
      ++strings;
      const auto r = recognize(s);
      if (r.accepted != oracle::is_anbncndn(s)) {
        std::string text;
        for (const auto& c : s) text += c;
        return fail("disagreement on '" + text + "'");
      }
      if (r.accepted) {
        ++accepted;
        if (mcfg::check_derivation(g, *r.witness) != mcfg::Instance{"S", {s}})
          return fail("witness does not derive an accepted string");
      }
      std::size_t i = len;
      while (i > 0 && digits[i - 1] == 3) {
        digits[i - 1] = 0;
        s[i - 1] = letters[0];
        --i;
      }
      if (i == 0) break;
      s[i - 1] = letters[++digits[i - 1]];
    }
  }
  if (accepted != expected.size()) return fail("accepted " + std::to_string(accepted) + " strings");
  return {{}, std::to_string(strings) + " strings, " + std::to_string(accepted) + " accepted"};
}

// Identity check by walking the path, plus the ordering chain.
bool balanced_by_walking(const mcfg::TerminalString& tokens, std::size_t n,
                         const std::vector<std::size_t>& breakpoints) {
  const std::size_t end = 2 * tokens.size();
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i] > end) return false;
    if (i > 0 && breakpoints[i - 1] > breakpoints[i]) return false;
  }
  std::vector<std::int64_t> sum(n, 0);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); i += 2) {
    const auto a = oracle::walk(tokens, n, breakpoints[i]);
    const auto b = oracle::walk(tokens, n, breakpoints[i + 1]);
    for (std::size_t j = 0; j < n; ++j) sum[j] += 2 * (b[j] - a[j]);
  }
  return sum == oracle::walk(tokens, n, end);
}

Outcome ac4() {
  std::mt19937_64 rng(44);
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t k = (n + 1) / 2;
    std::uniform_int_distribution<std::size_t> length(0, 20);
    for (int i = 0; i < 200; ++i) {
      const auto w = zn::random_word(n, length(rng), rng);
      const auto path = zn::word_to_path(w, n);
      const auto label = "n=" + std::to_string(n) + " '" + zn::format_word(w) + "'";
      synth::SegmentPartition p;
      try {
        p = synth::burago_partition(path, k);
      } catch (const std::exception& e) {
        return fail("no partition for " + label + ": " + e.what());
      }
      if (p.k() != k) return fail("wrong interval count for " + label);
      if (!synth::is_balanced(path, p)) return fail("is_balanced rejects " + label);
      if (!balanced_by_walking(zn::to_terminals(w), n, p.breakpoints))
        return fail("walking oracle rejects " + label);
    }
  }
  return {{}, "800 paths"};
}

// The edge path a1 a2 a3 runs from one corner of the unit cube to the
// opposite one. Half its displacement is (1/2, 1/2, 1/2), which no
// sub-interval can reach since only one coordinate moves at a time.
Outcome ac5() {
  const std::size_t n = 3;
  const auto tokens = oracle::split_tokens("a1 a2 a3");
  // Quadrupled coordinates at quarter-unit parameter q.
  auto at = [&](std::size_t q) {
    std::vector<std::int64_t> pt(n, 0);
    for (std::size_t step = 0; step < q; ++step) {
      const auto& t = tokens[step / 4];
      pt[std::stoul(t.substr(1)) - 1] += t[0] == 'a' ? 1 : -1;
    }
    return pt;
  };
  const std::size_t end = 4 * tokens.size();
  const auto total = at(end);
  std::size_t candidates = 0, hits = 0;
  for (std::size_t t = 0; t <= end; ++t)
    for (std::size_t s = t; s <= end; ++s) {
      ++candidates;
      const auto a = at(t), b = at(s);
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) ok = ok && 2 * (b[j] - a[j]) == total[j];
      if (ok) ++hits;
    }
  if (hits != 0) return fail(std::to_string(hits) + " single intervals balance the path");

  const auto path = zn::word_to_path(zn::from_terminals(tokens, n), n);
  try {
    synth::burago_partition(path, 1);
    return fail("the library found a single balanced interval");
  } catch (const InvariantFailure&) {
  }
  const auto p = synth::burago_partition(path, 2);
  if (!synth::is_balanced(path, p) || !balanced_by_walking(tokens, n, p.breakpoints))
    return fail("two-interval partition is not balanced");
  std::string bp;
  for (auto b : p.breakpoints) bp += (bp.empty() ? "" : ",") + std::to_string(b);
  return {{}, std::to_string(candidates) + " single intervals refuted; k=2 breakpoints " + bp};
}

Outcome ac6() {
  const auto p = zn::grammar_params(2);
  if (p.k != 1 || p.m != 6) return fail("grammar_params(2) = (" + std::to_string(p.k) + "," +
                                        std::to_string(p.m) + ")");
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto report = mcfg::validate_grammar(zn::make_grammar(n));
    if (!report.ok())
      return fail("n=" + std::to_string(n) + ": " + report.violations.front().code);
  }
  return {{}, "grammar_params(2) = (1,6); n=1..6 valid"};
}

Outcome ac7() {
  const auto dir = std::filesystem::temp_directory_path() / "znmcfg_acceptance";
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(77);
  std::size_t files = 0;
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto grammar = (dir / ("grammar" + std::to_string(n) + ".json")).string();
    if (run_cli({"emit-grammar", "--n", std::to_string(n), "--out", grammar}) != cli::kOk)
      return fail("emit-grammar failed");
    const auto grammar_text = read_file(grammar);
    if (mcfg::dump_grammar(mcfg::parse_grammar(grammar_text)) != grammar_text)
      return fail("grammar file does not re-serialize identically");
    for (int i = 0; i < 100; ++i) {
      const auto w = zn::random_identity_word(n, 20, rng);
      const auto label = "n=" + std::to_string(n) + " '" + zn::format_word(w) + "'";
      const auto derivation = (dir / "derivation.json").string();
      if (run_cli({"derive", "--n", std::to_string(n), "--word", zn::format_word(w), "--out",
                   derivation}) != cli::kOk)
        return fail("derive failed for " + label);
      if (run_cli({"verify", "--grammar", grammar, "--derivation", derivation}) != cli::kOk)
        return fail("verify failed for " + label);
      const auto text = read_file(derivation);
      const auto d = mcfg::parse_derivation(text);
      if (mcfg::dump_derivation(d) != text)
        return fail("derivation file does not re-serialize identically for " + label);
      if (mcfg::check_derivation(mcfg::load_grammar(grammar), d) !=
          mcfg::Instance{"S", {zn::to_terminals(w)}})
        return fail("loaded derivation has the wrong conclusion for " + label);
      ++files;
    }
  }
  std::filesystem::remove_all(dir);
  return {{}, std::to_string(files) + " derivation files"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4},
      {"AC-5", ac5}, {"AC-6", ac6}, {"AC-7", ac7}};
  std::set<std::string> only(argv + 1, argv + argc);

  int failures = 0;
  for (const auto& [id, check] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", took.count());
    if (r.failure.empty()) {
      std::cout << id << " PASS (" << r.detail << ", " << secs << ")\n";
    } else {
      ++failures;
      std::cout << id << " FAIL (" << r.failure << ", " << secs << ")\n";
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
