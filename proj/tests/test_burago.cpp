#include <doctest.h>

#include <random>

#include "support.hpp"
#include "znmcfg/errors.hpp"
#include "znmcfg/sampling.hpp"
#include "znmcfg/synthesis.hpp"

using namespace znmcfg;
using namespace znmcfg::synth;

namespace {

std::vector<Param> partition_of(const std::string& word, std::size_t n, std::size_t k) {
  return burago_partition(zn::word_to_path(zn::parse_word(word, n), n), k).breakpoints;
}

// Lexicographically first (t1, s1, t2, s2) found by nested loops.
std::optional<std::vector<Param>> first_pair_of_intervals(const mcfg::TerminalString& tokens,
                                                          std::size_t n) {
  const std::size_t end = 2 * tokens.size();
  std::vector<std::vector<std::int64_t>> pts;
  for (std::size_t p = 0; p <= end; ++p) pts.push_back(oracle::walk(tokens, n, p));
  for (std::size_t t1 = 0; t1 <= end; ++t1)
    for (std::size_t s1 = t1; s1 <= end; ++s1)
      for (std::size_t t2 = s1; t2 <= end; ++t2)
        for (std::size_t s2 = t2; s2 <= end; ++s2) {
          bool ok = true;
          for (std::size_t i = 0; i < n; ++i)
            if (2 * (pts[s1][i] - pts[t1][i] + pts[s2][i] - pts[t2][i]) != pts[end][i]) ok = false;
          if (ok) return std::vector<Param>{t1, s1, t2, s2};
        }
  return std::nullopt;
}

}  // namespace

TEST_CASE("burago_partition examples") {
  CHECK(partition_of("a1 a1", 1, 1) == std::vector<Param>{0, 2});
  CHECK(partition_of("a1 a2 A1 A2", 2, 1) == std::vector<Param>{0, 0});
  CHECK(partition_of("a1 a1 a2 A1 A1", 2, 1) == std::vector<Param>{4, 5});
}

TEST_CASE("burago_partition examples agree with exhaustive interval search") {
  const auto tokens = oracle::split_tokens("a1 a1 a2 A1 A1");
  const auto all = oracle::balanced_intervals(tokens, 2);
  REQUIRE_FALSE(all.empty());
  CHECK(std::find(all.begin(), all.end(), std::pair<std::size_t, std::size_t>{4, 5}) != all.end());
  CHECK(all.front() == std::pair<std::size_t, std::size_t>{4, 5});
}

TEST_CASE("k = 1 result is the first balanced interval") {
  std::mt19937_64 rng(101);
  for (std::size_t n = 1; n <= 2; ++n)
    for (int i = 0; i < 150; ++i) {
      const auto w = zn::random_word(n, i % 13, rng);
      const auto tokens = zn::to_terminals(w);
      const auto all = oracle::balanced_intervals(tokens, n);
      const auto path = zn::word_to_path(w, n);
      CAPTURE(zn::format_word(w));
      if (all.empty()) {
        CHECK_THROWS_AS(burago_partition(path, 1), InvariantFailure);
        continue;
      }
      const auto got = burago_partition(path, 1);
      CHECK(got.breakpoints == std::vector<Param>{all.front().first, all.front().second});
      CHECK(is_balanced(path, got));
    }
}

TEST_CASE("k = 2 result is the first balanced pair of intervals") {
  std::mt19937_64 rng(202);
  for (std::size_t n = 3; n <= 4; ++n)
    for (int i = 0; i < 60; ++i) {
      const auto w = zn::random_word(n, i % 9, rng);
      const auto tokens = zn::to_terminals(w);
      const auto expect = first_pair_of_intervals(tokens, n);
      const auto path = zn::word_to_path(w, n);
      CAPTURE(zn::format_word(w));
      if (!expect) {
        CHECK_THROWS_AS(burago_partition(path, 2), InvariantFailure);
        continue;
      }
      CHECK(burago_partition(path, 2).breakpoints == *expect);
    }
}

TEST_CASE("balanced partitions exist for every short path with k = ceil(n/2)") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t k = (n + 1) / 2;
    const std::size_t max_len = n <= 2 ? 8 : 5;
    zn::for_each_word(n, max_len, [&](const zn::GroupWord& w) {
      const auto path = zn::word_to_path(w, n);
      const auto p = burago_partition(path, k);
      if (!is_balanced(path, p)) FAIL("unbalanced partition for " << zn::format_word(w));
    });
  }
}

TEST_CASE("is_balanced rejects bad partitions") {
  const auto path = zn::word_to_path(zn::parse_word("a1 a1", 1), 1);
  CHECK(is_balanced(path, {{0, 2}}));
  CHECK(is_balanced(path, {{1, 3}}));
  CHECK_FALSE(is_balanced(path, {{0, 1}}));
  CHECK_FALSE(is_balanced(path, {{2, 0}}));
  CHECK_FALSE(is_balanced(path, {{2, 6}}));
  CHECK_FALSE(is_balanced(path, {{0, 1, 1}}));
}

TEST_CASE("partition JSON dump") {
  const SegmentPartition p{{4, 5}};
  CHECK(p.to_json().dump() == R"({"breakpoints":[4,5],"doubled":true})");
}
