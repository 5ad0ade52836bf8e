#pragma once

#include <cstddef>
#include <functional>
#include <random>

#include "znmcfg/zn.hpp"

namespace znmcfg::zn {

// Uniform word of exactly `length` letters over the 2n generators.
GroupWord random_word(std::size_t n, std::size_t length, std::mt19937_64& rng);

// Even length drawn uniformly from 0..max_length, then a word drawn
// uniformly among the zero-displacement words of that length.
GroupWord random_identity_word(std::size_t n, std::size_t max_length, std::mt19937_64& rng);

// Calls `visit` on every word of length <= max_length, shorter words first,
// each length in lexicographic order of (axis, sign) with a_i before A_i.
void for_each_word(std::size_t n, std::size_t max_length,
                   const std::function<void(const GroupWord&)>& visit);

}  // namespace znmcfg::zn
