#include "znmcfg/sampling.hpp"

namespace znmcfg::zn {

namespace {

Generator letter(std::size_t code) {
  return {code / 2 + 1, code % 2 == 0 ? 1 : -1};
}

}  // namespace

GroupWord random_word(std::size_t n, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * n - 1);
  GroupWord w;
  w.reserve(length);
  for (std::size_t i = 0; i < length; ++i) w.push_back(letter(pick(rng)));
  return w;
}

GroupWord random_identity_word(std::size_t n, std::size_t max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> half(0, max_length / 2);
  const std::size_t length = 2 * half(rng);
  while (true) {
    GroupWord w = random_word(n, length, rng);
    if (is_identity(w, n)) return w;
  }
}

void for_each_word(std::size_t n, std::size_t max_length,
                   const std::function<void(const GroupWord&)>& visit) {
  const std::size_t alphabet = 2 * n;
  for (std::size_t length = 0; length <= max_length; ++length) {
    std::vector<std::size_t> code(length, 0);
    GroupWord w(length, letter(0));
    while (true) {
      visit(w);
      std::size_t i = length;
      while (i > 0 && code[i - 1] + 1 == alphabet) {
        code[i - 1] = 0;
        w[i - 1] = letter(0);
        --i;
      }
      if (i == 0) break;
      ++code[i - 1];
      w[i - 1] = letter(code[i - 1]);
    }
  }
}

}  // namespace znmcfg::zn
