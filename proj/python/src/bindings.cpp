#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "znmcfg/errors.hpp"
#include "znmcfg/json_io.hpp"
#include "znmcfg/synthesis.hpp"

namespace py = pybind11;
using namespace znmcfg;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grammar construction, derivation synthesis and checking for the word problem of Z^n";

  py::register_exception<mcfg::DerivationError>(m, "DerivationError", PyExc_ValueError);
  py::register_exception<mcfg::UnsupportedGrammar>(m, "UnsupportedGrammar", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantFailure>(m, "InvariantFailure", PyExc_RuntimeError);
  py::register_exception<mcfg::FormatError>(m, "FormatError", PyExc_ValueError);

  m.def(
      "grammar_params",
      [](std::size_t n) {
        const auto p = zn::grammar_params(n);
        return std::make_tuple(p.k, p.m);
      },
      py::arg("n"), "(k, m) for dimension n");

  m.def(
      "make_grammar", [](std::size_t n) { return mcfg::dump_grammar(zn::make_grammar(n)); },
      py::arg("n"), "grammar for the word problem of Z^n, as JSON text");

  m.def(
      "displacement",
      [](const std::string& word, std::size_t n) {
        return zn::displacement(zn::parse_word(word, n), n);
      },
      py::arg("word"), py::arg("n"));

  m.def(
      "is_identity",
      [](const std::string& word, std::size_t n) {
        return zn::is_identity(zn::parse_word(word, n), n);
      },
      py::arg("word"), py::arg("n"));

  m.def(
      "synthesize_word",
      [](const std::string& word, std::size_t n) -> std::optional<std::string> {
        auto d = synth::synthesize_word(zn::parse_word(word, n), n);
        if (!d) return std::nullopt;
        return mcfg::dump_derivation(*d);
      },
      py::arg("word"), py::arg("n"),
      "derivation JSON ending in S(word), or None when the word is not the identity");

  m.def(
      "check_derivation",
      [](const std::string& grammar, const std::string& derivation) {
        const auto end =
            mcfg::check_derivation(mcfg::parse_grammar(grammar), mcfg::parse_derivation(derivation));
        return std::make_tuple(end.nonterminal, end.components);
      },
      py::arg("grammar"), py::arg("derivation"),
      "(nonterminal, components) the derivation ends in; raises DerivationError");

  m.def(
      "validate_grammar",
      [](const std::string& grammar) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& v : mcfg::validate_grammar(mcfg::parse_grammar(grammar)).violations)
          out.emplace_back(v.code, v.where, v.message);
        return out;
      },
      py::arg("grammar"));

  m.def(
      "recognize",
      [](const std::string& grammar, const std::vector<std::string>& tokens)
          -> std::tuple<bool, std::optional<std::string>> {
        const auto r = mcfg::recognize_bounded(mcfg::parse_grammar(grammar), tokens);
        if (!r.witness) return {r.accepted, std::nullopt};
        return {r.accepted, mcfg::dump_derivation(*r.witness)};
      },
      py::arg("grammar"), py::arg("tokens"));

  m.def(
      "burago_partition",
      [](const std::string& word, std::size_t n, std::optional<std::size_t> k) {
        const auto path = zn::word_to_path(zn::parse_word(word, n), n);
        return synth::burago_partition(path, k.value_or(zn::grammar_params(n).k)).breakpoints;
      },
      py::arg("word"), py::arg("n"), py::arg("k") = py::none(),
      "breakpoints t1, s1, ..., tk, sk in half-unit parameters");
}
