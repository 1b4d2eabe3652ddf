// Copyright 2026 The ctx Authors
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

#include "ctx/document.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ctx/error.hpp"

namespace ctx {

namespace {

using Path = std::string;

[[noreturn]] void fail(const Path& path, const std::string& what) {
  throw DocumentError("field '" + path + "': " + what);
}

const Json& field(const Json& obj, const char* key, const Path& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const Path& path) {
  if (!obj.is_object()) fail(path.empty() ? "$" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      fail(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

std::size_t as_count(const Json& v, const Path& path, bool positive) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
    fail(path, "expected a nonnegative integer");
  }
  const auto n = v.get<std::size_t>();
  if (positive && n == 0) fail(path, "must be positive");
  return n;
}

double as_number(const Json& v, const Path& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

const Json& as_array(const Json& v, const Path& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::vector<double> as_vector(const Json& v, const Path& path, std::size_t expected) {
  as_array(v, path);
  if (v.size() != expected) {
    fail(path, "expected " + std::to_string(expected) + " entries, found " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) out.push_back(as_number(v[x], path + "[" + std::to_string(x) + "]"));
  return out;
}

Matrix as_matrix(const Json& v, const Path& path) {
  as_array(v, path);
  if (v.empty()) fail(path, "expected a nonempty matrix");
  Matrix m;
  const std::size_t cols = as_array(v[0], path + "[0]").size();
  for (std::size_t r = 0; r < v.size(); ++r) m.push_back(as_vector(v[r], path + "[" + std::to_string(r) + "]", cols));
  return m;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

Json complex_matrix_json(const Eigen::MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXcd as_complex_matrix(const Json& v, const Path& path, std::size_t dim) {
  as_array(v, path);
  if (v.size() != dim) fail(path, "expected " + std::to_string(dim) + " rows");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const Path pr = path + "[" + std::to_string(r) + "]";
    as_array(v[r], pr);
    if (v[r].size() != dim) fail(pr, "expected " + std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c) {
      const std::vector<double> z = as_vector(v[r][c], pr + "[" + std::to_string(c) + "]", 2);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {z[0], z[1]};
    }
  }
  return m;
}

std::vector<EquivalenceVector> as_equivs(const Json& v, const Path& path, std::size_t len) {
  as_array(v, path);
  std::vector<EquivalenceVector> out;
  for (std::size_t a = 0; a < v.size(); ++a) {
    const Path pa = path + "[" + std::to_string(a) + "]";
    require_keys(v[a], {"alpha", "beta"}, pa);
    out.push_back({as_vector(field(v[a], "alpha", pa), pa + ".alpha", len),
                   as_vector(field(v[a], "beta", pa), pa + ".beta", len)});
  }
  return out;
}

Scenario scenario_from_json(const Json& j) {
  require_keys(j, {"kind", "preps", "meas", "outcomes", "prep_equivs", "meas_equivs", "excluded_cells"}, "");
  Scenario s;
  s.n_preps = as_count(field(j, "preps", ""), "preps", true);
  s.n_meas = as_count(field(j, "meas", ""), "meas", true);
  s.n_outcomes = as_count(field(j, "outcomes", ""), "outcomes", true);
  s.prep_equivs = as_equivs(field(j, "prep_equivs", ""), "prep_equivs", s.n_preps);
  s.meas_equivs = as_equivs(field(j, "meas_equivs", ""), "meas_equivs", s.n_events());
  if (const auto it = j.find("excluded_cells"); it != j.end()) {
    as_array(*it, "excluded_cells");
    for (std::size_t c = 0; c < it->size(); ++c) {
      const Path pc = "excluded_cells[" + std::to_string(c) + "]";
      as_array((*it)[c], pc);
      if ((*it)[c].size() != 2) fail(pc, "expected [meas, prep]");
      s.excluded.push_back({as_count((*it)[c][0], pc + "[0]", false), as_count((*it)[c][1], pc + "[1]", false)});
    }
  }
  return s;
}

Behavior behavior_from_json(const Json& j) {
  require_keys(j, {"kind", "probs"}, "");
  const Json& p = as_array(field(j, "probs", ""), "probs");
  if (p.empty()) fail("probs", "expected at least one measurement");
  const std::size_t J = as_array(p[0], "probs[0]").size();
  if (J == 0) fail("probs[0]", "expected at least one preparation");
  const std::size_t K = as_array(p[0][0], "probs[0][0]").size();
  if (K == 0) fail("probs[0][0]", "expected at least one outcome");
  Behavior b(p.size(), J, K);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Path pi = "probs[" + std::to_string(i) + "]";
    as_array(p[i], pi);
    if (p[i].size() != J) fail(pi, "expected " + std::to_string(J) + " preparations");
    for (std::size_t jj = 0; jj < J; ++jj) {
      const std::vector<double> row = as_vector(p[i][jj], pi + "[" + std::to_string(jj) + "]", K);
      for (std::size_t k = 0; k < K; ++k) b(i, jj, k) = row[k];
    }
  }
  return b;
}

FreeOperation free_operation_from_json(const Json& j) {
  require_keys(j, {"kind", "q_P", "q_M", "q_O"}, "");
  FreeOperation t;
  t.q_P = as_matrix(field(j, "q_P", ""), "q_P");
  t.q_M = as_matrix(field(j, "q_M", ""), "q_M");
  const Json& qo = as_array(field(j, "q_O", ""), "q_O");
  if (qo.size() != t.q_M.size()) fail("q_O", "expected one matrix per row of q_M");
  for (std::size_t i = 0; i < qo.size(); ++i) {
    const Path pi = "q_O[" + std::to_string(i) + "]";
    t.q_O.push_back(as_matrix(qo[i], pi));
    if (t.q_O[i].size() != t.q_O[0].size() || t.q_O[i][0].size() != t.q_O[0][0].size()) {
      fail(pi, "all post-processings must share one shape");
    }
  }
  return t;
}

QuantumRealization quantum_from_json(const Json& j) {
  require_keys(j, {"kind", "dim", "states", "povms"}, "");
  QuantumRealization q;
  q.dim = as_count(field(j, "dim", ""), "dim", true);
  const Json& st = as_array(field(j, "states", ""), "states");
  for (std::size_t s = 0; s < st.size(); ++s) q.states.push_back(as_complex_matrix(st[s], "states[" + std::to_string(s) + "]", q.dim));
  const Json& pv = as_array(field(j, "povms", ""), "povms");
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const Path pi = "povms[" + std::to_string(i) + "]";
    as_array(pv[i], pi);
    std::vector<Eigen::MatrixXcd> effects;
    for (std::size_t k = 0; k < pv[i].size(); ++k) effects.push_back(as_complex_matrix(pv[i][k], pi + "[" + std::to_string(k) + "]", q.dim));
    q.povms.push_back(std::move(effects));
  }
  return q;
}

Json equivs_json(const std::vector<EquivalenceVector>& es) {
  Json out = Json::array();
  for (const auto& e : es) {
    Json o;
    o["alpha"] = e.alpha;
    o["beta"] = e.beta;
    out.push_back(std::move(o));
  }
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
    throw DocumentError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

template <class T>
T expect(const Document& d, const char* kind) {
  if (!std::holds_alternative<T>(d)) {
    throw DocumentError(std::string("expected kind '") + kind + "', found '" + document_kind(d) + "'");
  }
  return std::get<T>(d);
}

}  // namespace

const char* document_kind(const Document& d) {
  switch (d.index()) {
    case 0: return "scenario";
    case 1: return "behavior";
    case 2: return "free_operation";
    default: return "quantum";
  }
}

Document document_from_json(const Json& j) {
  if (!j.is_object()) throw DocumentError("field '$': expected an object");
  const Json& kind = field(j, "kind", "");
  if (!kind.is_string()) fail("kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "scenario") return scenario_from_json(j);
  if (k == "behavior") return behavior_from_json(j);
  if (k == "free_operation") return free_operation_from_json(j);
  if (k == "quantum") return quantum_from_json(j);
  fail("kind", "unknown document kind '" + k + "'");
}

Document load_document(std::string_view text) { return document_from_json(parse(text)); }

Scenario load_scenario(std::string_view text) { return expect<Scenario>(load_document(text), "scenario"); }
Behavior load_behavior(std::string_view text) { return expect<Behavior>(load_document(text), "behavior"); }
FreeOperation load_free_operation(std::string_view text) {
  return expect<FreeOperation>(load_document(text), "free_operation");
}
QuantumRealization load_quantum(std::string_view text) {
  return expect<QuantumRealization>(load_document(text), "quantum");
}

Json to_json(const Scenario& s) {
  Json j;
  j["kind"] = "scenario";
  j["preps"] = s.n_preps;
  j["meas"] = s.n_meas;
  j["outcomes"] = s.n_outcomes;
  j["prep_equivs"] = equivs_json(s.prep_equivs);
  j["meas_equivs"] = equivs_json(s.meas_equivs);
  if (!s.excluded.empty()) {
    Json cells = Json::array();
    for (const Cell& c : s.excluded) cells.push_back(Json::array({c.meas, c.prep}));
    j["excluded_cells"] = std::move(cells);
  }
  return j;
}

Json to_json(const Behavior& b) {
  Json j;
  j["kind"] = "behavior";
  j["probs"] = b.to_nested();
  return j;
}

Json to_json(const FreeOperation& t) {
  Json j;
  j["kind"] = "free_operation";
  j["q_P"] = matrix_json(t.q_P);
  j["q_M"] = matrix_json(t.q_M);
  Json qo = Json::array();
  for (const auto& m : t.q_O) qo.push_back(matrix_json(m));
  j["q_O"] = std::move(qo);
  return j;
}

Json to_json(const QuantumRealization& q) {
  Json j;
  j["kind"] = "quantum";
  j["dim"] = q.dim;
  Json st = Json::array();
  for (const auto& s : q.states) st.push_back(complex_matrix_json(s));
  j["states"] = std::move(st);
  Json pv = Json::array();
  for (const auto& p : q.povms) {
    Json effects = Json::array();
    for (const auto& e : p) effects.push_back(complex_matrix_json(e));
    pv.push_back(std::move(effects));
  }
  j["povms"] = std::move(pv);
  return j;
}

Json to_json(const Document& d) {
  return std::visit([](const auto& v) { return to_json(v); }, d);
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json o;
    o["constraint"] = v.constraint;
    o["magnitude"] = v.magnitude;
    o["location"] = v.location;
    vs.push_back(std::move(o));
  }
  j["violations"] = std::move(vs);
  return j;
}

Json to_json(const Decomposition& d) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json o;
    o["prep_offset"] = b.prep_offset;
    o["n_preps"] = b.n_preps;
    o["meas_offset"] = b.meas_offset;
    o["n_meas"] = b.n_meas;
    blocks.push_back(std::move(o));
  }
  j["blocks"] = std::move(blocks);
  Json preps = Json::array();
  for (std::size_t x = 0; x < d.prep_map.size(); ++x) preps.push_back(Json::array({x, d.prep_labels[d.prep_map[x]]}));
  j["prep_bijection"] = std::move(preps);
  Json meas = Json::array();
  for (std::size_t x = 0; x < d.meas_map.size(); ++x) meas.push_back(Json::array({x, d.meas_labels[d.meas_map[x]]}));
  j["meas_identification"] = std::move(meas);
  j["equivalence_map"] = d.equivalence_map;
  return j;
}

std::string save_document(const Document& d) { return to_json(d).dump(); }

}  // namespace ctx
