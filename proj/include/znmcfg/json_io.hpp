#pragma once

// JSON interchange for grammars and derivations.
//
// Grammar:
//   {"terminals":[...], "nonterminals":[{"name":"I","arity":6}], "start":"S",
//    "rules":[{"lhs":{"nt":"S","templates":[[{"var":"x1"},{"t":"a"}]]},
//              "rhs":[{"nt":"I","vars":["x1"]}]}],
//    "schemas":[{"nt":"I","arity":6}]}
//   with an optional "max_arity". Template items are {"var":name} or {"t":terminal}.
//
// Derivation:
//   {"steps":[{"rule":{"index":0} | {"schema":"I","blocking":[[1,7],[2],...]},
//              "subst":{"x1":["a1"]},
//              "conclusion":{"nt":"I","components":[["a1"],["A1"],[],...]},
//              "premises":[0,1]}]}

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "znmcfg/mcfg.hpp"

namespace znmcfg::mcfg {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json grammar_to_json(const Grammar& g);
Grammar grammar_from_json(const Json& j);

Json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

// Canonical text form: two-space indentation and a trailing newline.
// Parsing and re-serializing a file written this way reproduces it byte for byte.
std::string dump_grammar(const Grammar& g);
std::string dump_derivation(const Derivation& d);
Grammar parse_grammar(std::string_view text);
Derivation parse_derivation(std::string_view text);

Grammar load_grammar(const std::string& path);
Derivation load_derivation(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace znmcfg::mcfg
