#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace znmcfg::cli {

// Exit codes: a positive answer, a valid negative answer (non-membership,
// rejected derivation), and usage errors or broken invariants.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kError = 2;

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace znmcfg::cli
