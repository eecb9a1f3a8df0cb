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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seqmeas/instruments.hpp"

namespace seqmeas {

using json = nlohmann::json;

/// Looks up a named object (scenario files may refer to objects by name).
/// Returns nullptr for unknown names.
using NameLookup = std::function<const json*(const std::string&)>;

namespace detail {

inline constexpr int kMaxReferenceDepth = 32;

[[noreturn]] inline void bad_json(const std::string& what) { fail(ErrorKind::kInvalidArgument, what); }

inline const json& field(const json& j, std::string_view key) {
  if (!j.is_object()) bad_json("expected an object with field '" + std::string(key) + "'");
  const auto it = j.find(key);
  if (it == j.end()) bad_json("missing field '" + std::string(key) + "'");
  return *it;
}

/// Follows string references through `lookup`.
inline const json& deref(const json& j, const NameLookup& lookup, int depth) {
  if (!j.is_string()) return j;
  if (!lookup) bad_json("named reference '" + j.get<std::string>() + "' cannot be resolved here");
  if (depth > kMaxReferenceDepth) bad_json("reference chain too deep at '" + j.get<std::string>() + "'");
  const json* target = lookup(j.get<std::string>());
  if (target == nullptr) bad_json("unknown name '" + j.get<std::string>() + "'");
  return deref(*target, lookup, depth + 1);
}

inline std::vector<std::vector<double>> rows_of(const json& j, std::string_view key, std::size_t dim) {
  const json& rows = field(j, key);
  if (!rows.is_array() || rows.size() != dim) bad_json("'" + std::string(key) + "' must have dim rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != dim) bad_json("'" + std::string(key) + "' rows must have dim entries");
    auto& r = out.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number()) bad_json("matrix entries must be numbers");
      r.push_back(x.get<double>());
    }
  }
  return out;
}

}  // namespace detail

inline json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json rr = json::array();
    json ri = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real matrices.
inline ComplexMatrix matrix_from_json(const json& j, const NameLookup& lookup = {}) {
  const json& m = detail::deref(j, lookup, 0);
  const json& d = detail::field(m, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0 || d.get<std::size_t>() > kMaxDim) {
    fail(ErrorKind::kDimension, "'dim' must be an integer in 1..8");
  }
  const std::size_t dim = d.get<std::size_t>();
  const auto re = detail::rows_of(m, "re", dim);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (m.contains("im")) im = detail::rows_of(m, "im", dim);
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = Complex(re[r][c], im[r][c]);
  return out;
}

inline json to_json(const Effect& a) { return matrix_to_json(a.matrix()); }
inline json to_json(const State& rho) { return matrix_to_json(rho.matrix()); }
inline json to_json(const HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

inline Effect effect_from_json(const json& j, const NameLookup& lookup = {}) {
  return Effect(matrix_from_json(j, lookup));
}
inline State state_from_json(const json& j, const NameLookup& lookup = {}) {
  return State(matrix_from_json(j, lookup));
}

/// Operations always serialize as their Kraus list.
inline json to_json(const Operation& op) {
  json kraus = json::array();
  for (const auto& k : op.kraus()) kraus.push_back(matrix_to_json(k));
  json out = {{"kind", "kraus"}, {"kraus", std::move(kraus)}};
  if (!op.label().empty()) out["label"] = op.label();
  return out;
}

/// Accepts kinds "kraus", "luders", "trivial", "semi_trivial" and "sharp".
inline Operation operation_from_json(const json& j, const NameLookup& lookup = {}) {
  const json& o = detail::deref(j, lookup, 0);
  const json& kind_field = detail::field(o, "kind");
  if (!kind_field.is_string()) detail::bad_json("'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "kraus") {
    const json& list = detail::field(o, "kraus");
    if (!list.is_array()) detail::bad_json("'kraus' must be an array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : list) kraus.push_back(matrix_from_json(k, lookup));
    return Operation(std::move(kraus), o.value("label", std::string{}));
  }
  if (kind == "luders") return luders(effect_from_json(detail::field(o, "effect"), lookup));
  if (kind == "trivial") {
    return trivial(effect_from_json(detail::field(o, "effect"), lookup),
                   state_from_json(detail::field(o, "state"), lookup));
  }
  if (kind == "semi_trivial") {
    const json& list = detail::field(o, "pairs");
    if (!list.is_array()) detail::bad_json("'pairs' must be an array");
    std::vector<EffectStatePair> pairs;
    for (const auto& p : list) {
      pairs.push_back({effect_from_json(detail::field(p, "effect"), lookup),
                       state_from_json(detail::field(p, "state"), lookup)});
    }
    return semi_trivial(pairs);
  }
  if (kind == "sharp") {
    const json& list = detail::field(o, "projections");
    if (!list.is_array()) detail::bad_json("'projections' must be an array");
    std::vector<Effect> projections;
    for (const auto& p : list) projections.push_back(effect_from_json(p, lookup));
    return sharp_operation(projections);
  }
  detail::bad_json("unknown operation kind '" + kind + "'");
}

namespace detail {

inline std::vector<std::string> labels_from_json(const json& o) {
  const json& list = field(o, "outcomes");
  if (!list.is_array()) bad_json("'outcomes' must be an array");
  std::vector<std::string> out;
  for (const auto& x : list) {
    if (!x.is_string()) bad_json("outcome labels must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline json to_json(const Observable& a) {
  json effects = json::array();
  for (const auto& e : a.effects()) effects.push_back(to_json(e));
  return {{"outcomes", a.outcomes()}, {"effects", std::move(effects)}};
}

inline Observable observable_from_json(const json& j, const NameLookup& lookup = {}) {
  const json& o = detail::deref(j, lookup, 0);
  const json& list = detail::field(o, "effects");
  if (!list.is_array()) detail::bad_json("'effects' must be an array");
  std::vector<Effect> effects;
  for (const auto& e : list) effects.push_back(effect_from_json(e, lookup));
  return Observable(detail::labels_from_json(o), std::move(effects));
}

inline json to_json(const Instrument& inst) {
  json ops = json::array();
  for (const auto& op : inst.ops()) ops.push_back(to_json(op));
  return {{"outcomes", inst.outcomes()}, {"ops", std::move(ops)}};
}

inline Instrument instrument_from_json(const json& j, const NameLookup& lookup = {}) {
  const json& o = detail::deref(j, lookup, 0);
  const json& list = detail::field(o, "ops");
  if (!list.is_array()) detail::bad_json("'ops' must be an array");
  std::vector<Operation> ops;
  for (const auto& op : list) ops.push_back(operation_from_json(op, lookup));
  return Instrument(detail::labels_from_json(o), std::move(ops));
}

inline json to_json(const Distribution& d) {
  json out = json::object();
  for (const auto& [x, p] : d) out[x] = p;
  return out;
}

inline OutcomeMap outcome_map_from_json(const json& j) {
  if (!j.is_object()) detail::bad_json("an outcome map must be an object of label -> label");
  OutcomeMap f;
  for (const auto& [x, y] : j.items()) {
    if (!y.is_string()) detail::bad_json("outcome map values must be strings");
    f[x] = y.get<std::string>();
  }
  return f;
}

inline json to_json(const OutcomeMap& f) {
  json out = json::object();
  for (const auto& [x, y] : f) out[x] = y;
  return out;
}

}  // namespace seqmeas
