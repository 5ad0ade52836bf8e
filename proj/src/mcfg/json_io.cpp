#include "znmcfg/json_io.hpp"

#include <fstream>
#include <sstream>

namespace znmcfg::mcfg {

namespace {

Json strings_to_json(const TerminalString& s) {
  Json arr = Json::array();
  for (const auto& sym : s) arr.push_back(sym);
  return arr;
}

TerminalString strings_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of terminal symbols");
  TerminalString out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json comps = Json::array();
  for (const auto& c : inst.components) comps.push_back(strings_to_json(c));
  return Json{{"nt", inst.nonterminal}, {"components", std::move(comps)}};
}

Instance instance_from_json(const Json& j) {
  Instance inst{j.at("nt").get<std::string>(), {}};
  for (const auto& c : j.at("components")) inst.components.push_back(strings_from_json(c));
  return inst;
}

Json grammar_to_json(const Grammar& g) {
  Json j;
  j["terminals"] = g.terminals;
  Json nts = Json::array();
  for (const auto& nt : g.nonterminals) nts.push_back({{"name", nt.name}, {"arity", nt.arity}});
  j["nonterminals"] = std::move(nts);
  j["start"] = g.start;
  if (g.max_arity != 0) j["max_arity"] = g.max_arity;

  Json rules = Json::array();
  for (const auto& r : g.rules) {
    Json templates = Json::array();
    for (const auto& tmpl : r.templates) {
      Json items = Json::array();
      for (const auto& item : tmpl)
        items.push_back(item.is_variable() ? Json{{"var", item.name}} : Json{{"t", item.name}});
      templates.push_back(std::move(items));
    }
    Json rhs = Json::array();
    for (const auto& p : r.rhs) rhs.push_back({{"nt", p.nonterminal}, {"vars", p.vars}});
    rules.push_back({{"lhs", {{"nt", r.lhs}, {"templates", std::move(templates)}}},
                     {"rhs", std::move(rhs)}});
  }
  j["rules"] = std::move(rules);

  Json schemas = Json::array();
  for (const auto& s : g.schemas) schemas.push_back({{"nt", s.nonterminal}, {"arity", s.arity}});
  j["schemas"] = std::move(schemas);
  return j;
}

Grammar grammar_from_json(const Json& j) {
  return guarded("grammar", [&] {
    Grammar g;
    g.terminals = j.at("terminals").get<std::vector<std::string>>();
    for (const auto& nt : j.at("nonterminals"))
      g.nonterminals.push_back({nt.at("name").get<std::string>(), nt.at("arity").get<std::size_t>()});
    g.start = j.at("start").get<std::string>();
    if (j.contains("max_arity")) g.max_arity = j.at("max_arity").get<std::size_t>();

    for (const auto& r : j.value("rules", Json::array())) {
      Rule rule;
      rule.lhs = r.at("lhs").at("nt").get<std::string>();
      for (const auto& tmpl : r.at("lhs").at("templates")) {
        Template t;
        for (const auto& item : tmpl) {
          if (item.contains("var"))
            t.push_back(Item::variable(item.at("var").get<std::string>()));
          else if (item.contains("t"))
            t.push_back(Item::terminal(item.at("t").get<std::string>()));
          else
            throw FormatError("template item needs a \"var\" or \"t\" key");
        }
        rule.templates.push_back(std::move(t));
      }
      for (const auto& p : r.value("rhs", Json::array()))
        rule.rhs.push_back(
            {p.at("nt").get<std::string>(), p.at("vars").get<std::vector<std::string>>()});
      g.rules.push_back(std::move(rule));
    }

    for (const auto& s : j.value("schemas", Json::array()))
      g.schemas.push_back({s.at("nt").get<std::string>(), s.at("arity").get<std::size_t>()});
    return g;
  });
}

Json derivation_to_json(const Derivation& d) {
  Json steps = Json::array();
  for (const auto& step : d.steps) {
    Json rule;
    if (const auto* c = std::get_if<ConcreteRef>(&step.rule)) {
      rule = {{"index", c->index}};
    } else {
      const auto& s = std::get<SchemaRef>(step.rule);
      rule = {{"schema", s.nonterminal}, {"blocking", s.blocking.blocks}};
    }
    Json subst = Json::object();
    for (const auto& [var, value] : step.substitution) subst[var] = strings_to_json(value);
    steps.push_back({{"rule", std::move(rule)},
                     {"subst", std::move(subst)},
                     {"conclusion", instance_to_json(step.conclusion)},
                     {"premises", step.premises}});
  }
  return Json{{"steps", std::move(steps)}};
}

Derivation derivation_from_json(const Json& j) {
  return guarded("derivation", [&] {
    Derivation d;
    for (const auto& s : j.at("steps")) {
      RuleInstance step;
      const Json& rule = s.at("rule");
      if (rule.contains("index")) {
        step.rule = ConcreteRef{rule.at("index").get<std::size_t>()};
      } else if (rule.contains("schema")) {
        step.rule = SchemaRef{rule.at("schema").get<std::string>(),
                              {rule.at("blocking").get<std::vector<std::vector<std::size_t>>>()}};
      } else {
        throw FormatError("step rule needs an \"index\" or a \"schema\" key");
      }
      for (const auto& [var, value] : s.at("subst").items())
        step.substitution.emplace_back(var, strings_from_json(value));
      step.conclusion = instance_from_json(s.at("conclusion"));
      step.premises = s.at("premises").get<std::vector<std::size_t>>();
      d.steps.push_back(std::move(step));
    }
    return d;
  });
}

std::string dump_grammar(const Grammar& g) { return grammar_to_json(g).dump(2) + "\n"; }

std::string dump_derivation(const Derivation& d) { return derivation_to_json(d).dump(2) + "\n"; }

Grammar parse_grammar(std::string_view text) {
  return grammar_from_json(guarded("grammar", [&] { return Json::parse(text); }));
}

Derivation parse_derivation(std::string_view text) {
  return derivation_from_json(guarded("derivation", [&] { return Json::parse(text); }));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Grammar load_grammar(const std::string& path) { return parse_grammar(read_file(path)); }

Derivation load_derivation(const std::string& path) { return parse_derivation(read_file(path)); }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace znmcfg::mcfg
