#include "znmcfg/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "znmcfg/errors.hpp"
#include "znmcfg/json_io.hpp"
#include "znmcfg/sampling.hpp"
#include "znmcfg/synthesis.hpp"

namespace znmcfg::cli {

namespace {

using mcfg::Json;

std::string show(const mcfg::TerminalString& s) {
  if (s.empty()) return "eps";
  std::string out;
  for (const auto& sym : s) {
    if (!out.empty()) out += ' ';
    out += sym;
  }
  return out;
}

std::string show(const mcfg::Instance& inst) {
  std::string out = inst.nonterminal + "(";
  for (std::size_t i = 0; i < inst.components.size(); ++i) {
    if (i) out += ", ";
    out += show(inst.components[i]);
  }
  return out + ")";
}

void print_derivation(const mcfg::Derivation& d, std::ostream& out) {
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& step = d.steps[i];
    out << '#' << i << "  " << show(step.conclusion) << " <-";
    for (std::size_t p : step.premises) out << " #" << p;
    if (const auto* c = std::get_if<mcfg::ConcreteRef>(&step.rule)) {
      out << "  [rule " << c->index << "]\n";
    } else {
      out << "  [combine";
      for (const auto& block : std::get<mcfg::SchemaRef>(step.rule).blocking.blocks) {
        out << " {";
        for (std::size_t j = 0; j < block.size(); ++j) out << (j ? "," : "") << block[j];
        out << '}';
      }
      out << "]\n";
    }
  }
}

Json vec_json(const zn::Vec& v) { return Json(v); }

std::string vec_text(const zn::Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

// Whitespace-separated tokens; a single unknown token made of terminal
// characters is read one character per terminal, so "aabb" works for
// grammars over single-letter terminals.
mcfg::TerminalString tokenize(const std::string& text, const mcfg::Grammar& g) {
  mcfg::TerminalString tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  if (tokens.size() == 1 && !g.is_terminal(tokens[0])) {
    mcfg::TerminalString chars;
    for (char c : tokens[0]) chars.emplace_back(1, c);
    if (std::all_of(chars.begin(), chars.end(), [&](const auto& s) { return g.is_terminal(s); }))
      return chars;
  }
  return tokens;
}

struct Options {
  std::size_t n = 1;
  std::string word;
  std::string grammar_path;
  std::string derivation_path;
  std::string out_path;
  std::size_t k = 0;
  std::size_t max_len = 0;
  std::size_t samples = 0;
  std::size_t sample_len = 20;
  std::uint64_t seed = 20240601;
  bool json = false;
};

void emit(std::ostream& out, const Options& o, const std::string& text) {
  if (o.out_path.empty())
    out << text;
  else
    mcfg::save_text(o.out_path, text);
}

int cmd_emit_grammar(const Options& o, std::ostream& out) {
  emit(out, o, mcfg::dump_grammar(zn::make_grammar(o.n)));
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const zn::GroupWord w = zn::parse_word(o.word, o.n);
  const zn::Vec d = zn::displacement(w, o.n);
  const bool member = zn::is_zero(d);
  if (o.json)
    out << Json{{"word", zn::format_word(w)}, {"displacement", vec_json(d)}, {"member", member}}
               .dump()
        << '\n';
  else
    out << (member ? "identity" : "not identity") << ", displacement " << vec_text(d) << '\n';
  return member ? kOk : kNegative;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const zn::GroupWord w = zn::parse_word(o.word, o.n);
  const auto d = synth::synthesize_word(w, o.n);
  if (!d) {
    if (o.json)
      out << Json{{"word", zn::format_word(w)}, {"member", false}}.dump() << '\n';
    else
      out << "not in the word problem: displacement " << vec_text(zn::displacement(w, o.n)) << '\n';
    return kNegative;
  }
  const std::string text = mcfg::dump_derivation(*d);
  if (!o.out_path.empty()) {
    mcfg::save_text(o.out_path, text);
    out << "wrote " << d->steps.size() << " steps to " << o.out_path << '\n';
  } else if (o.json) {
    out << text;
  } else {
    print_derivation(*d, out);
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const mcfg::Grammar g = mcfg::load_grammar(o.grammar_path);
  const mcfg::Derivation d = mcfg::load_derivation(o.derivation_path);
  const auto report = mcfg::validate_grammar(g);
  if (!report.ok()) {
    out << "invalid grammar: " << report.violations.front().where << ": "
        << report.violations.front().message << '\n';
    return kError;
  }
  try {
    const mcfg::Instance end = mcfg::check_derivation(g, d);
    if (o.json)
      out << Json{{"valid", true}, {"steps", d.steps.size()},
                  {"conclusion", mcfg::instance_to_json(end)}}
                 .dump()
          << '\n';
    else
      out << "valid, " << d.steps.size() << " steps, ends in " << show(end) << '\n';
    return kOk;
  } catch (const mcfg::DerivationError& e) {
    if (o.json)
      out << Json{{"valid", false}, {"step", e.step()}, {"error", std::string(to_string(e.kind()))},
                  {"message", e.what()}}
                 .dump()
          << '\n';
    else
      out << "invalid: " << e.what() << '\n';
    return kNegative;
  }
}

int cmd_recognize(const Options& o, std::ostream& out) {
  const mcfg::Grammar g = mcfg::load_grammar(o.grammar_path);
  const auto report = mcfg::validate_grammar(g);
  if (!report.ok()) {
    out << "invalid grammar: " << report.violations.front().where << ": "
        << report.violations.front().message << '\n';
    return kError;
  }
  const mcfg::TerminalString s = tokenize(o.word, g);
  const mcfg::Recognition r = mcfg::recognize_bounded(g, s);
  if (r.accepted && !o.out_path.empty()) mcfg::save_text(o.out_path, mcfg::dump_derivation(*r.witness));
  if (o.json) {
    Json j{{"accepted", r.accepted}};
    if (r.witness) j["witness"] = mcfg::derivation_to_json(*r.witness);
    out << j.dump() << '\n';
  } else {
    out << (r.accepted ? "accepted" : "rejected") << ": " << show(s) << '\n';
    if (r.witness) print_derivation(*r.witness, out);
  }
  return r.accepted ? kOk : kNegative;
}

int cmd_burago(const Options& o, std::ostream& out) {
  const zn::GroupWord w = zn::parse_word(o.word, o.n);
  const std::size_t k = o.k ? o.k : zn::grammar_params(o.n).k;
  const zn::LatticePath path = zn::word_to_path(w, o.n);
  const synth::SegmentPartition p = synth::burago_partition(path, k);
  if (o.json) {
    out << p.to_json().dump() << '\n';
  } else {
    out << "k=" << k << ", total displacement (doubled) " << vec_text(path.span(0, path.end_param()))
        << '\n';
    for (std::size_t i = 0; i < p.k(); ++i)
      out << "  [" << p.begin(i) << ", " << p.end(i) << "]  "
          << vec_text(path.span(p.begin(i), p.end(i))) << '\n';
  }
  return kOk;
}

struct SweepStats {
  std::size_t words = 0;
  std::size_t members = 0;
  std::size_t derived = 0;
  std::vector<std::string> failures;
};

void sweep_one(const zn::GroupWord& w, std::size_t n, const mcfg::Grammar& g, SweepStats& stats) {
  ++stats.words;
  const bool member = zn::is_identity(w, n);
  if (member) ++stats.members;
  try {
    const auto d = synth::synthesize_word(w, n);
    if (d.has_value() != member) {
      stats.failures.push_back("\"" + zn::format_word(w) + "\": derive/check disagree");
      return;
    }
    if (!d) return;
    const mcfg::Instance end = mcfg::check_derivation(g, *d);
    const mcfg::Instance want{zn::kStartNonterminal, {zn::to_terminals(w)}};
    if (end != want) {
      stats.failures.push_back("\"" + zn::format_word(w) + "\": derivation ends in " + show(end));
      return;
    }
    ++stats.derived;
  } catch (const std::exception& e) {
    stats.failures.push_back("\"" + zn::format_word(w) + "\": " + e.what());
  }
}

int cmd_xcheck(const Options& o, std::ostream& out) {
  const mcfg::Grammar g = zn::make_grammar(o.n);
  SweepStats stats;
  zn::for_each_word(o.n, o.max_len, [&](const zn::GroupWord& w) { sweep_one(w, o.n, g, stats); });
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.samples; ++i)
    sweep_one(zn::random_identity_word(o.n, o.sample_len, rng), o.n, g, stats);

  const bool ok = stats.failures.empty();
  if (o.json) {
    out << Json{{"n", o.n},          {"max_len", o.max_len}, {"samples", o.samples},
                {"seed", o.seed},    {"words", stats.words}, {"members", stats.members},
                {"derived", stats.derived}, {"failures", stats.failures}, {"ok", ok}}
               .dump()
        << '\n';
  } else {
    out << "n=" << o.n << " max-len=" << o.max_len << ": " << stats.words << " words, "
        << stats.members << " zero-displacement, " << stats.derived << " verified derivations, "
        << stats.failures.size() << " failures\n";
    for (const auto& f : stats.failures) out << "  " << f << '\n';
  }
  return ok ? kOk : kError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple context-free grammars for the word problem of Z^n", "znmcfg"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "dimension of Z^n")->required()->check(CLI::PositiveNumber);
  };
  auto add_word = [&](CLI::App* sub) {
    sub->add_option("--word", o.word, "space-separated tokens a1..an, A1..An")->required();
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "structured output"); };

  auto* emit_grammar = app.add_subcommand("emit-grammar", "write the grammar for Z^n as JSON");
  add_n(emit_grammar);
  emit_grammar->add_option("--out", o.out_path, "output file (default: stdout)");

  auto* check = app.add_subcommand("check", "decide membership by displacement");
  add_n(check);
  add_word(check);
  add_json(check);

  auto* derive = app.add_subcommand("derive", "synthesize a derivation of S(word)");
  add_n(derive);
  add_word(derive);
  add_json(derive);
  derive->add_option("--out", o.out_path, "write the derivation file here");

  auto* verify = app.add_subcommand("verify", "check a derivation file against a grammar file");
  verify->add_option("--grammar", o.grammar_path, "grammar JSON file")->required();
  verify->add_option("--derivation", o.derivation_path, "derivation JSON file")->required();
  add_json(verify);

  auto* recognize = app.add_subcommand("recognize", "bounded recognition for concrete grammars");
  recognize->add_option("--grammar", o.grammar_path, "grammar JSON file")->required();
  recognize->add_option("--word", o.word, "terminal tokens")->required();
  recognize->add_option("--out", o.out_path, "write the witness derivation here");
  add_json(recognize);

  auto* burago = app.add_subcommand("burago", "balanced interval partition of a word's path");
  add_n(burago);
  add_word(burago);
  burago->add_option("--k", o.k, "number of intervals (default floor((n+1)/2))")
      ->check(CLI::PositiveNumber);
  add_json(burago);

  auto* xcheck = app.add_subcommand("xcheck", "sweep all words up to a length");
  add_n(xcheck);
  xcheck->add_option("--max-len", o.max_len, "exhaustive sweep bound")->required();
  xcheck->add_option("--samples", o.samples, "extra random zero-displacement words");
  xcheck->add_option("--sample-len", o.sample_len, "maximum length of random words");
  xcheck->add_option("--seed", o.seed, "seed for random words");
  add_json(xcheck);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kError;
  }

  try {
    if (*emit_grammar) return cmd_emit_grammar(o, out);
    if (*check) return cmd_check(o, out);
    if (*derive) return cmd_derive(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*recognize) return cmd_recognize(o, out);
    if (*burago) return cmd_burago(o, out);
    if (*xcheck) return cmd_xcheck(o, out);
  } catch (const InvariantFailure& e) {
    err << "internal invariant failure: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace znmcfg::cli
