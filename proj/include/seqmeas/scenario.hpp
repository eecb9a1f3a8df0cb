// Copyright 2026 The seqmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "seqmeas/effects.hpp"
#include "seqmeas/errors.hpp"
#include "seqmeas/instruments.hpp"
#include "seqmeas/observables.hpp"
#include "seqmeas/operations.hpp"
#include "seqmeas/serialize.hpp"

namespace seqmeas {

/// Parse or validation failure in a scenario file. `line` is 1-based, 0 if unknown.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line),
        message_(message) {}

  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

namespace detail {

/// Maps JSON pointers ("/objects/a", "/queries/3") to the line their value starts on.
/// Only meaningful for text that already parsed as JSON.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

  std::size_t line_of(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
      if (auto it = lines_.find(p); it != lines_.end()) return it->second;
      if (p.empty()) return 0;
      p.erase(p.rfind('/'));
    }
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r')) {
      advance();
    }
  }

  std::string string() {
    std::string out;
    advance();
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') advance();
      if (pos_ < text_.size()) out += text_[pos_];
      advance();
    }
    if (pos_ < text_.size()) advance();
    return out;
  }

  void value(const std::string& path) {
    lines_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      advance();
      std::size_t index = 0;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) return;
        if (text_[pos_] == close) {
          advance();
          return;
        }
        std::string key = std::to_string(index++);
        if (c == '{') {
          key = string();
          skip_ws();
          if (pos_ < text_.size()) advance();
          skip_ws();
        }
        value(path + "/" + escape(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') advance();
      }
    }
    if (c == '"') {
      string();
      return;
    }
    while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) {
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

/// Fills in "dim" on every bare matrix ({"re": ...}) so objects may omit it.
inline void default_dims(json& j, std::size_t dim) {
  if (j.is_object()) {
    if (j.contains("re") && !j.contains("dim")) j["dim"] = dim;
    for (auto& [k, v] : j.items()) default_dims(v, dim);
  } else if (j.is_array()) {
    for (auto& v : j) default_dims(v, dim);
  }
}

}  // namespace detail

using ScenarioObject = std::variant<Effect, State, Operation, Observable, Instrument>;

inline std::string_view object_type_name(const ScenarioObject& o) {
  switch (o.index()) {
    case 0: return "effect";
    case 1: return "state";
    case 2: return "operation";
    case 3: return "observable";
    default: return "instrument";
  }
}

inline std::size_t object_dim(const ScenarioObject& o) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Observable>) return x.effects().front().dim();
        else if constexpr (std::is_same_v<T, Instrument>) return x.ops().front().dim();
        else return x.dim();
      },
      o);
}

/// A validated scenario: named objects of a single dimension plus a list of queries.
///
///   {"dim": 2,
///    "objects": {"a": {"type": "effect", "re": [[1,0],[0,0]]}, ...},
///    "queries": [{"query": "hat", "of": "luders_a"}, ...]}
struct Scenario {
  std::size_t dim = 0;
  std::map<std::string, ScenarioObject> objects;
  std::vector<json> queries;
  std::vector<std::size_t> query_lines;
};

namespace detail {

inline const std::vector<std::string_view>& query_names() {
  static const std::vector<std::string_view> names = {
      "hat",       "seq_product", "conditioned",         "cond_prob", "prob", "distribution",
      "apply",     "complement",  "perp",                "is_sharp",  "is_atomic",
      "is_channel", "equiv",      "measured_observable", "bar",       "part", "coexist-witness"};
  return names;
}

inline const std::vector<std::string_view>& query_args(std::string_view query) {
  static const std::map<std::string_view, std::vector<std::string_view>> args = {
      {"hat", {"of"}},
      {"seq_product", {"first", "second"}},
      {"conditioned", {"of", "given"}},
      {"cond_prob", {"state", "of", "given"}},
      {"prob", {"state", "of"}},
      {"distribution", {"state", "of"}},
      {"apply", {"op", "state"}},
      {"complement", {"of"}},
      {"perp", {"a", "b"}},
      {"is_sharp", {"of"}},
      {"is_atomic", {"of"}},
      {"is_channel", {"of"}},
      {"equiv", {"a", "b"}},
      {"measured_observable", {"of"}},
      {"bar", {"of"}},
      {"part", {"of"}},
      {"coexist-witness", {"b", "c", "witness"}},
  };
  return args.at(query);
}

inline ScenarioObject parse_object(const json& spec, const NameLookup& lookup) {
  const json& type = field(spec, "type");
  if (!type.is_string()) bad_json("'type' must be a string");
  const std::string t = type.get<std::string>();
  if (t == "effect") return effect_from_json(spec, lookup);
  if (t == "state") return state_from_json(spec, lookup);
  if (t == "operation") return operation_from_json(spec, lookup);
  if (t == "observable") return observable_from_json(spec, lookup);
  if (t == "instrument") return instrument_from_json(spec, lookup);
  bad_json("unknown object type '" + t + "'");
}

}  // namespace detail

/// Parses and validates scenario text. Throws ScenarioError on any problem.
inline Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t line = detail::line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ScenarioError(line, what);
  }
  const detail::LineIndex index(text);
  auto at = [&](const std::string& pointer, const std::string& message) -> ScenarioError {
    return ScenarioError(index.line_of(pointer), message);
  };

  if (!root.is_object()) throw at("", "scenario must be a JSON object");
  Scenario out;
  if (!root.contains("dim") || !root["dim"].is_number_unsigned() || root["dim"].get<std::size_t>() < kMinDim ||
      root["dim"].get<std::size_t>() > kMaxDim) {
    throw at("/dim", "'dim' must be an integer in 2..8");
  }
  out.dim = root["dim"].get<std::size_t>();
  if (!root.contains("objects") || !root["objects"].is_object()) throw at("/objects", "'objects' must be an object");
  if (!root.contains("queries") || !root["queries"].is_array()) throw at("/queries", "'queries' must be an array");

  json objects = root["objects"];
  detail::default_dims(objects, out.dim);
  const NameLookup lookup = [&objects](const std::string& name) -> const json* {
    auto it = objects.find(name);
    return it == objects.end() ? nullptr : &*it;
  };
  for (const auto& [name, spec] : objects.items()) {
    const std::string pointer = "/objects/" + detail::LineIndex::escape(name);
    try {
      ScenarioObject obj = detail::parse_object(spec, lookup);
      if (object_dim(obj) != out.dim) {
        throw at(pointer, "object '" + name + "' has dimension " + std::to_string(object_dim(obj)) +
                              ", scenario dimension is " + std::to_string(out.dim));
      }
      out.objects.emplace(name, std::move(obj));
    } catch (const Error& e) {
      throw at(pointer, "object '" + name + "': " + e.what());
    } catch (const json::exception& e) {
      throw at(pointer, "object '" + name + "': " + e.what());
    }
  }

  const json& queries = root["queries"];
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const std::string pointer = "/queries/" + std::to_string(i);
    const json& q = queries[i];
    if (!q.is_object() || !q.contains("query") || !q["query"].is_string()) {
      throw at(pointer, "query " + std::to_string(i) + " needs a string 'query' field");
    }
    const std::string name = q["query"].get<std::string>();
    const auto& names = detail::query_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw at(pointer + "/query", "unknown query '" + name + "'");
    }
    for (std::string_view arg : detail::query_args(name)) {
      const std::string key(arg);
      if (!q.contains(key) || !q[key].is_string()) {
        throw at(pointer, "query '" + name + "' needs a string argument '" + key + "'");
      }
      const std::string ref = q[key].get<std::string>();
      if (!out.objects.count(ref)) throw at(pointer + "/" + key, "unknown object '" + ref + "'");
    }
    if (name == "part") {
      if (!q.contains("map")) throw at(pointer, "query 'part' needs an outcome 'map'");
      try {
        outcome_map_from_json(q["map"]);
      } catch (const Error& e) {
        throw at(pointer + "/map", e.what());
      }
    }
    if (name == "coexist-witness") {
      for (const char* key : {"f", "g"}) {
        if (!q.contains(key)) throw at(pointer, std::string("query 'coexist-witness' needs an outcome map '") + key + "'");
        try {
          outcome_map_from_json(q[key]);
        } catch (const Error& e) {
          throw at(pointer + "/" + key, e.what());
        }
      }
    }
    out.queries.push_back(q);
    out.query_lines.push_back(index.line_of(pointer));
  }
  return out;
}

namespace detail {

struct QueryContext {
  const Scenario& scenario;
  const json& query;

  const ScenarioObject& arg(std::string_view key) const {
    return scenario.objects.at(query.at(std::string(key)).get<std::string>());
  }

  [[noreturn]] void unsupported(std::string_view what) const {
    fail(ErrorKind::kInvalidArgument, "query '" + query.at("query").get<std::string>() + "' does not accept " +
                                          std::string(what));
  }

  std::string types(std::initializer_list<std::string_view> keys) const {
    std::string out;
    for (auto key : keys) {
      if (!out.empty()) out += ", ";
      out += object_type_name(arg(key));
    }
    return out;
  }

  /// States are accepted wherever an effect is.
  Effect effect_like(std::string_view key) const {
    const ScenarioObject& o = arg(key);
    if (const auto* e = std::get_if<Effect>(&o)) return *e;
    if (const auto* s = std::get_if<State>(&o)) return Effect(s->op());
    unsupported(std::string(object_type_name(o)) + " as '" + std::string(key) + "'");
  }

  /// Effects of unit trace are accepted as states.
  State state(std::string_view key) const {
    const ScenarioObject& o = arg(key);
    if (const auto* s = std::get_if<State>(&o)) return *s;
    if (const auto* e = std::get_if<Effect>(&o)) return State(e->op());
    unsupported(std::string(object_type_name(o)) + " as '" + std::string(key) + "'");
  }

  template <class T>
  const T* get(std::string_view key) const {
    return std::get_if<T>(&arg(key));
  }

  bool is_effect_like(std::string_view key) const {
    return get<Effect>(key) != nullptr || get<State>(key) != nullptr;
  }
};

inline json eval_query(const QueryContext& c) {
  const std::string name = c.query.at("query").get<std::string>();

  if (name == "hat") {
    if (const auto* op = c.get<Operation>("of")) return to_json(hat(*op));
    if (const auto* inst = c.get<Instrument>("of")) return to_json(measured_observable(*inst));
    c.unsupported(c.types({"of"}));
  }
  if (name == "seq_product") {
    const bool a_eff = c.is_effect_like("first");
    const bool b_eff = c.is_effect_like("second");
    const auto* a_op = c.get<Operation>("first");
    const auto* b_op = c.get<Operation>("second");
    if (a_eff && b_eff) return to_json(seq_product(c.effect_like("first"), c.effect_like("second")));
    if (a_op && b_op) return to_json(compose(*a_op, *b_op));
    if (a_eff && b_op) return to_json(effect_then_op(c.effect_like("first"), *b_op));
    if (a_op && b_eff) return to_json(op_then_effect(*a_op, c.effect_like("second")));
    const auto* a_obs = c.get<Observable>("first");
    const auto* b_obs = c.get<Observable>("second");
    const auto* a_inst = c.get<Instrument>("first");
    const auto* b_inst = c.get<Instrument>("second");
    if (a_obs && b_obs) return to_json(obs_seq_product(*a_obs, *b_obs));
    if (a_inst && b_inst) return to_json(inst_seq_product(*a_inst, *b_inst));
    if (a_obs && b_inst) return to_json(obs_then_inst(*a_obs, *b_inst));
    if (a_inst && b_obs) return to_json(inst_then_obs(*a_inst, *b_obs));
    c.unsupported(c.types({"first", "second"}));
  }
  if (name == "conditioned") {
    const auto* of_obs = c.get<Observable>("of");
    const auto* of_inst = c.get<Instrument>("of");
    const auto* given_obs = c.get<Observable>("given");
    const auto* given_inst = c.get<Instrument>("given");
    if (of_obs && given_obs) return to_json(obs_conditioned(*of_obs, *given_obs));
    if (of_inst && given_inst) return to_json(inst_conditioned(*of_inst, *given_inst));
    if (of_inst && given_obs) return to_json(inst_conditioned_on_obs(*of_inst, *given_obs));
    if (of_obs && given_inst) return to_json(obs_conditioned_on_inst(*of_obs, *given_inst));
    c.unsupported(c.types({"of", "given"}));
  }
  if (name == "cond_prob") {
    const State rho = c.state("state");
    if (c.is_effect_like("of") && c.is_effect_like("given")) {
      return cond_prob(rho, c.effect_like("of"), c.effect_like("given"));
    }
    const auto* of = c.get<Operation>("of");
    const auto* given = c.get<Operation>("given");
    if (of && given) return op_cond_prob(rho, *of, *given);
    c.unsupported(c.types({"of", "given"}));
  }
  if (name == "prob") {
    const State rho = c.state("state");
    if (c.is_effect_like("of")) return prob(rho, c.effect_like("of"));
    if (const auto* op = c.get<Operation>("of")) return op_prob(rho, *op);
    c.unsupported(c.types({"of"}));
  }
  if (name == "distribution") {
    const State rho = c.state("state");
    if (const auto* a = c.get<Observable>("of")) return to_json(distribution(*a, rho));
    if (const auto* inst = c.get<Instrument>("of")) return to_json(distribution(*inst, rho));
    c.unsupported(c.types({"of"}));
  }
  if (name == "apply") {
    const State rho = c.state("state");
    if (const auto* op = c.get<Operation>("op")) return to_json(apply(*op, rho));
    c.unsupported(c.types({"op"}));
  }
  if (name == "complement") {
    if (c.is_effect_like("of")) return to_json(complement(c.effect_like("of")));
    if (const auto* op = c.get<Operation>("of")) return to_json(complement_luders(*op));
    c.unsupported(c.types({"of"}));
  }
  if (name == "perp") {
    if (c.is_effect_like("a") && c.is_effect_like("b")) return perp(c.effect_like("a"), c.effect_like("b"));
    const auto* a = c.get<Operation>("a");
    const auto* b = c.get<Operation>("b");
    if (a && b) return perp(hat(*a), hat(*b));
    c.unsupported(c.types({"a", "b"}));
  }
  if (name == "is_sharp") return is_sharp(c.effect_like("of"));
  if (name == "is_atomic") return is_atomic(c.effect_like("of"));
  if (name == "is_channel") {
    if (const auto* op = c.get<Operation>("of")) return is_channel(*op);
    c.unsupported(c.types({"of"}));
  }
  if (name == "equiv") {
    const auto* a = c.get<Operation>("a");
    const auto* b = c.get<Operation>("b");
    if (a && b) return equiv(*a, *b);
    c.unsupported(c.types({"a", "b"}));
  }
  if (name == "measured_observable") {
    if (const auto* inst = c.get<Instrument>("of")) return to_json(measured_observable(*inst));
    c.unsupported(c.types({"of"}));
  }
  if (name == "bar") {
    if (const auto* inst = c.get<Instrument>("of")) return to_json(bar(*inst));
    c.unsupported(c.types({"of"}));
  }
  if (name == "part") {
    const OutcomeMap f = outcome_map_from_json(c.query.at("map"));
    std::optional<std::vector<std::string>> codomain;
    if (c.query.contains("codomain")) codomain = detail::labels_from_json({{"outcomes", c.query["codomain"]}});
    if (const auto* a = c.get<Observable>("of")) return to_json(obs_part(*a, f, codomain));
    if (const auto* inst = c.get<Instrument>("of")) return to_json(inst_part(*inst, f, codomain));
    c.unsupported(c.types({"of"}));
  }
  if (name == "coexist-witness") {
    const OutcomeMap f = outcome_map_from_json(c.query.at("f"));
    const OutcomeMap g = outcome_map_from_json(c.query.at("g"));
    const auto* b = c.get<Observable>("b");
    const auto* cc = c.get<Observable>("c");
    const auto* w = c.get<Observable>("witness");
    if (b && cc && w) return verify_coexistence_witness(*b, *cc, *w, f, g);
    const auto* j = c.get<Instrument>("b");
    const auto* k = c.get<Instrument>("c");
    const auto* i = c.get<Instrument>("witness");
    if (j && k && i) return verify_inst_coexistence_witness(*j, *k, *i, f, g);
    c.unsupported(c.types({"b", "c", "witness"}));
  }
  fail(ErrorKind::kInvalidArgument, "unknown query '" + name + "'");
}

}  // namespace detail

/// Evaluates query `index`. Library errors become {"error": {"kind", "message"}}.
inline json evaluate_query(const Scenario& s, std::size_t index) {
  const json& q = s.queries.at(index);
  json out = {{"index", index}, {"query", q.at("query")}};
  try {
    out["result"] = detail::eval_query({s, q});
  } catch (const Error& e) {
    out["error"] = {{"kind", std::string(e.kind_name())}, {"message", e.what()}};
  }
  return out;
}

/// Writes one JSON line per query.
inline void run_scenario(const Scenario& s, std::ostream& out) {
  for (std::size_t i = 0; i < s.queries.size(); ++i) out << evaluate_query(s, i).dump() << '\n';
}

}  // namespace seqmeas
