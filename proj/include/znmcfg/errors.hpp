#pragma once

#include <stdexcept>
#include <string>

namespace znmcfg {

// A caller handed in something outside an operation's documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search or repair step failed where existence is guaranteed by the
// underlying combinatorics. The message carries a dump of the instance.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace znmcfg
