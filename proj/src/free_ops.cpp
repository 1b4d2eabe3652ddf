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

#include "ctx/free_ops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>

#include "ctx/error.hpp"
#include "ctx/lp.hpp"
#include "ctx/nc_model.hpp"

namespace ctx {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x) m[x][x] = 1.0;
  return m;
}

FreeOperation FreeOperation::identity(const Scenario& s) {
  FreeOperation t;
  t.q_P = identity_matrix(s.n_preps);
  t.q_M = identity_matrix(s.n_meas);
  t.q_O.assign(s.n_meas, identity_matrix(s.n_outcomes));
  return t;
}

namespace {

void check_stochastic(const Matrix& m, const std::string& name, double tol, ValidationReport& rep) {
  if (m.empty()) {
    rep.violations.push_back({"empty-matrix", 0.0, name});
    return;
  }
  const std::size_t cols = m.front().size();
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != cols) {
      rep.violations.push_back({"ragged-matrix", 0.0, name + "(row=" + std::to_string(r) + ")"});
      return;
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.size(); ++r) {
      const double v = m[r][c];
      if (!(v >= -tol && v <= 1.0 + tol)) {
        rep.violations.push_back({"entry-out-of-range", v, name + "(" + std::to_string(r) + "," + std::to_string(c) + ")"});
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      rep.violations.push_back({"column-not-normalized", std::abs(sum - 1.0), name + "(col=" + std::to_string(c) + ")"});
    }
  }
}

}  // namespace

ValidationReport validate_free_operation(const FreeOperation& t, double tol) {
  ValidationReport rep;
  check_stochastic(t.q_P, "q_P", tol, rep);
  check_stochastic(t.q_M, "q_M", tol, rep);
  if (t.q_O.size() != t.old_meas()) {
    rep.violations.push_back({"q_O-count", 0.0, "expected one post-processing per old measurement"});
  }
  for (std::size_t i = 0; i < t.q_O.size(); ++i) {
    check_stochastic(t.q_O[i], "q_O[" + std::to_string(i) + "]", tol, rep);
    if (!t.q_O[i].empty() && (t.q_O[i].size() != t.new_outcomes() || t.q_O[i].front().size() != t.old_outcomes())) {
      rep.violations.push_back({"q_O-shape", 0.0, "q_O[" + std::to_string(i) + "]"});
    }
  }
  return rep;
}

void require_compatible(const FreeOperation& t, const Scenario& s) {
  const ValidationReport rep = validate_free_operation(t, 1e-6);
  for (const auto& v : rep.violations) {
    if (v.constraint != "entry-out-of-range" && v.constraint != "column-not-normalized") {
      throw ShapeMismatch("free operation malformed: " + v.constraint + " " + v.location);
    }
  }
  if (t.old_preps() != s.n_preps) throw ShapeMismatch("q_P has " + std::to_string(t.old_preps()) + " rows, scenario has " + std::to_string(s.n_preps) + " preparations");
  if (t.old_meas() != s.n_meas) throw ShapeMismatch("q_M has " + std::to_string(t.old_meas()) + " rows, scenario has " + std::to_string(s.n_meas) + " measurements");
  if (t.old_outcomes() != s.n_outcomes) throw ShapeMismatch("q_O has " + std::to_string(t.old_outcomes()) + " columns, scenario has " + std::to_string(s.n_outcomes) + " outcomes");
}

const char* to_string(TransportStatus s) {
  return s == TransportStatus::transported ? "transported" : "not-representable";
}

namespace {

/// If every column of g is a unit vector and distinct columns hit distinct
/// rows, returns the row of each column.
std::optional<std::vector<std::size_t>> partial_permutation(const Matrix& g) {
  const std::size_t rows = g.size();
  const std::size_t cols = rows == 0 ? 0 : g.front().size();
  std::vector<std::size_t> row_of(cols);
  std::vector<char> hit(rows, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t found = rows;
    for (std::size_t r = 0; r < rows; ++r) {
      if (g[r][c] == 0.0) continue;
      if (g[r][c] != 1.0 || found != rows) return std::nullopt;
      found = r;
    }
    if (found == rows || hit[found]) return std::nullopt;
    hit[found] = 1;
    row_of[c] = found;
  }
  return row_of;
}

/// Convex x with g x = target, minimum l2 norm.
std::optional<std::vector<double>> pull_back(const Matrix& g, const std::vector<double>& target) {
  const std::size_t cols = g.empty() ? 0 : g.front().size();
  if (auto perm = partial_permutation(g)) {
    std::vector<double> x(cols, 0.0);
    std::vector<char> covered(g.size(), 0);
    for (std::size_t c = 0; c < cols; ++c) {
      x[c] = target[(*perm)[c]];
      covered[(*perm)[c]] = 1;
    }
    for (std::size_t r = 0; r < g.size(); ++r)
      if (!covered[r] && target[r] != 0.0) return std::nullopt;
    return x;
  }
  Matrix a = g;
  a.emplace_back(cols, 1.0);
  std::vector<double> b = target;
  b.push_back(1.0);
  auto x = min_norm_nonnegative(a, b);
  if (!x) return std::nullopt;
  // Reject solutions that only meet the rows to within solver noise.
  for (std::size_t r = 0; r < a.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += a[r][c] * (*x)[c];
    if (std::abs(acc - b[r]) > kLpTolerance) return std::nullopt;
  }
  return x;
}

TransportedEquivalence transport_one(const Matrix& g, const EquivalenceVector& e, std::size_t source) {
  TransportedEquivalence out;
  out.source = source;
  auto a = pull_back(g, e.alpha);
  auto b = pull_back(g, e.beta);
  if (a && b) {
    out.vector = {std::move(*a), std::move(*b)};
    if (out.vector.nontrivial()) out.status = TransportStatus::transported;
  }
  return out;
}

/// G[(i,k)][(it,kt)] = q_M(i|it) q_O^i(kt|k).
Matrix event_map(const FreeOperation& t) {
  const std::size_t I = t.old_meas(), K = t.old_outcomes(), It = t.new_meas(), Kt = t.new_outcomes();
  Matrix g(I * K, std::vector<double>(It * Kt, 0.0));
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t it = 0; it < It; ++it)
        for (std::size_t kt = 0; kt < Kt; ++kt) g[i * K + k][it * Kt + kt] = t.q_M[i][it] * t.q_O[i][kt][k];
  return g;
}

}  // namespace

TransportReport transport_equivalences(const FreeOperation& t, const Scenario& s) {
  require_compatible(t, s);
  TransportReport rep;
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) rep.prep.push_back(transport_one(t.q_P, s.prep_equivs[a], a));
  if (!s.meas_equivs.empty()) {
    const Matrix g = event_map(t);
    for (std::size_t b = 0; b < s.meas_equivs.size(); ++b) rep.meas.push_back(transport_one(g, s.meas_equivs[b], b));
  }
  return rep;
}

Scenario transform_scenario(const FreeOperation& t, const Scenario& s) {
  const TransportReport rep = transport_equivalences(t, s);
  Scenario out;
  out.n_preps = t.new_preps();
  out.n_meas = t.new_meas();
  out.n_outcomes = t.new_outcomes();
  for (const auto& e : rep.prep)
    if (e.status == TransportStatus::transported) out.prep_equivs.push_back(e.vector);
  for (const auto& e : rep.meas)
    if (e.status == TransportStatus::transported) out.meas_equivs.push_back(e.vector);
  if (!s.excluded.empty()) {
    const std::vector<char> active = s.active_mask();
    for (std::size_t it = 0; it < out.n_meas; ++it)
      for (std::size_t jt = 0; jt < out.n_preps; ++jt) {
        bool hits_excluded = false;
        for (std::size_t i = 0; i < s.n_meas && !hits_excluded; ++i) {
          if (t.q_M[i][it] == 0.0) continue;
          for (std::size_t j = 0; j < s.n_preps; ++j) {
            if (t.q_P[j][jt] != 0.0 && !active[i * s.n_preps + j]) {
              hits_excluded = true;
              break;
            }
          }
        }
        if (hits_excluded) out.excluded.push_back({it, jt});
      }
  }
  return out;
}

Transformed apply_free_operation(const FreeOperation& t, const Scenario& s, const Behavior& b) {
  b.require_shape(s);
  Transformed out;
  out.scenario = transform_scenario(t, s);
  const Scenario& ns = out.scenario;
  out.behavior = Behavior::uniform(ns);
  const std::vector<char> active = ns.active_mask();
  for (std::size_t it = 0; it < ns.n_meas; ++it)
    for (std::size_t jt = 0; jt < ns.n_preps; ++jt) {
      if (!active[it * ns.n_preps + jt]) continue;
      for (std::size_t kt = 0; kt < ns.n_outcomes; ++kt) {
        double acc = 0.0;
        for (std::size_t i = 0; i < s.n_meas; ++i) {
          const double qm = t.q_M[i][it];
          if (qm == 0.0) continue;
          for (std::size_t j = 0; j < s.n_preps; ++j) {
            const double qp = t.q_P[j][jt];
            if (qp == 0.0) continue;
            double inner = 0.0;
            for (std::size_t k = 0; k < s.n_outcomes; ++k) inner += t.q_O[i][kt][k] * b(i, j, k);
            acc += qm * qp * inner;
          }
        }
        out.behavior(it, jt, kt) = acc;
      }
    }
  return out;
}

FreeOperation erasure_operation(const Scenario& s, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw InvalidArgument("erase_measurements: keep set is empty");
  std::vector<char> seen(s.n_meas, 0);
  FreeOperation t = FreeOperation::identity(s);
  t.q_M.assign(s.n_meas, std::vector<double>(keep.size(), 0.0));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    if (keep[c] >= s.n_meas) throw InvalidArgument("erase_measurements: measurement " + std::to_string(keep[c]) + " out of range");
    if (seen[keep[c]]) throw InvalidArgument("erase_measurements: measurement " + std::to_string(keep[c]) + " listed twice");
    seen[keep[c]] = 1;
    t.q_M[keep[c]][c] = 1.0;
  }
  return t;
}

Transformed erase_measurements(const Scenario& s, const Behavior& b, const std::vector<std::size_t>& keep) {
  return apply_free_operation(erasure_operation(s, keep), s, b);
}

const char* to_string(Generator g) {
  switch (g) {
    case Generator::alpha: return "alpha";
    case Generator::beta: return "beta";
    case Generator::gamma: return "gamma";
    case Generator::delta: return "delta";
  }
  return "unknown";
}

FreeOperation simplest_permutation(Generator g) {
  FreeOperation t = FreeOperation::identity(make_simplest_scenario());
  auto permute = [](Matrix& m, const std::vector<std::size_t>& pi) {
    // q(pi[c] | c) = 1
    for (auto& row : m) std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t c = 0; c < pi.size(); ++c) m[pi[c]][c] = 1.0;
  };
  switch (g) {
    case Generator::alpha: permute(t.q_P, {1, 0, 2, 3}); break;
    case Generator::beta: permute(t.q_P, {0, 1, 3, 2}); break;
    case Generator::gamma: permute(t.q_M, {1, 0}); break;
    case Generator::delta: permute(t.q_P, {2, 3, 0, 1}); break;
  }
  return t;
}

std::array<FreeOperation, 4> simplest_permutations() {
  return {simplest_permutation(Generator::alpha), simplest_permutation(Generator::beta),
          simplest_permutation(Generator::gamma), simplest_permutation(Generator::delta)};
}

Behavior apply_word(const std::vector<Generator>& word, const Behavior& b) {
  const Scenario si = make_simplest_scenario();
  Behavior cur = b;
  for (Generator g : word) cur = apply_free_operation(simplest_permutation(g), si, cur).behavior;
  return cur;
}

namespace {

struct ContextualGraph {
  std::vector<Behavior> vertices;
  std::vector<char> contextual;
  /// next[v][g] = index of the image of vertex v under generator g.
  std::vector<std::array<std::size_t, 4>> next;
};

const ContextualGraph& contextual_graph() {
  static const ContextualGraph graph = [] {
    ContextualGraph gr;
    const Scenario si = make_simplest_scenario();
    gr.vertices = enumerate_behavior_vertices(si);
    for (const auto& v : gr.vertices) gr.contextual.push_back(is_noncontextual(si, v).contextual ? 1 : 0);
    const auto perms = simplest_permutations();
    gr.next.resize(gr.vertices.size());
    for (std::size_t v = 0; v < gr.vertices.size(); ++v) {
      for (std::size_t g = 0; g < 4; ++g) {
        const Behavior img = apply_free_operation(perms[g], si, gr.vertices[v]).behavior;
        const auto it = std::find(gr.vertices.begin(), gr.vertices.end(), img);
        if (it == gr.vertices.end()) throw NumericalFailure("permutation image is not a vertex");
        gr.next[v][g] = static_cast<std::size_t>(it - gr.vertices.begin());
      }
    }
    return gr;
  }();
  return graph;
}

}  // namespace

std::vector<Generator> contextual_vertex_path(std::size_t v, std::size_t w) {
  const ContextualGraph& gr = contextual_graph();
  for (std::size_t x : {v, w}) {
    if (x >= gr.vertices.size() || !gr.contextual[x]) {
      throw InvalidArgument("vertex " + std::to_string(x) + " is not a contextual vertex of B_si");
    }
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(gr.vertices.size(), none);
  std::vector<int> via(gr.vertices.size(), -1);
  std::deque<std::size_t> queue{v};
  parent[v] = v;
  while (!queue.empty() && parent[w] == none) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < 4; ++g) {
      const std::size_t y = gr.next[x][g];
      if (parent[y] != none) continue;
      parent[y] = x;
      via[y] = static_cast<int>(g);
      queue.push_back(y);
    }
  }
  if (parent[w] == none) throw InvalidArgument("no generator word connects the two vertices");
  std::vector<Generator> word;
  for (std::size_t x = w; x != v; x = parent[x]) word.push_back(kGenerators[static_cast<std::size_t>(via[x])]);
  std::reverse(word.begin(), word.end());
  return word;
}

namespace {

/// Total-variation distance per active cell, maximized.
double max_tv(const Scenario& s, const Behavior& a, const Behavior& b) {
  const std::vector<char> active = s.active_mask();
  double worst = 0.0;
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (!active[i * s.n_preps + j]) continue;
      double tv = 0.0;
      for (std::size_t k = 0; k < s.n_outcomes; ++k) tv += std::abs(a(i, j, k) - b(i, j, k));
      worst = std::max(worst, 0.5 * tv);
    }
  return worst;
}

}  // namespace

SecondaryResult secondary_procedures(const Scenario& s, const Behavior& b, double tol) {
  b.require_shape(s);
  SecondaryResult res;
  res.operation = FreeOperation::identity(s);
  if (validate_behavior(s, b, tol).ok()) {
    res.behavior = b;
    return res;
  }
  const std::size_t J = s.n_preps, I = s.n_meas, K = s.n_outcomes;
  const std::vector<char> active = s.active_mask();
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j)
      if (active[i * J + j]) cells.push_back({i, j});

  // Layout: w (J*J, index j*J + jt) | u (cells*K) | tau.
  const std::size_t n_w = J * J;
  const std::size_t tau = n_w + cells.size() * K;
  const std::size_t n = tau + 1;
  LinearProgram lp(n);
  auto w = [J](std::size_t j, std::size_t jt) { return j * J + jt; };
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t jt = 0; jt < J; ++jt) {
      // A mixture may only use preparations measured by the same measurements.
      for (std::size_t i = 0; i < I; ++i) {
        if (active[i * J + j] != active[i * J + jt]) {
          lp.upper[w(j, jt)] = 0.0;
          break;
        }
      }
    }
  for (std::size_t jt = 0; jt < J; ++jt) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < J; ++j) row[w(j, jt)] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }
  // Row of p'(k|i,jt) = sum_j w(j|jt) p(k|i,j) over the w block.
  auto induced = [&](std::size_t i, std::size_t jt, std::size_t k) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < J; ++j)
      if (active[i * J + j]) row[w(j, jt)] = b(i, j, k);
    return row;
  };
  for (const auto& e : s.prep_equivs) {
    const std::vector<double> d = e.difference();
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> row(n, 0.0);
        bool any = false;
        for (std::size_t jt = 0; jt < J; ++jt) {
          if (d[jt] == 0.0 || !active[i * J + jt]) continue;
          const std::vector<double> r = induced(i, jt, k);
          for (std::size_t v = 0; v < n_w; ++v) row[v] += d[jt] * r[v];
          any = true;
        }
        if (any) lp.add_eq(std::move(row), 0.0);
      }
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [i, jt] = cells[c];
    std::vector<double> sum_row(n, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t u = n_w + c * K + k;
      std::vector<double> up = induced(i, jt, k);
      std::vector<double> down(n, 0.0);
      for (std::size_t v = 0; v < n_w; ++v) down[v] = -up[v];
      up[u] = -1.0;
      down[u] = -1.0;
      lp.add_le(std::move(up), b(i, jt, k));
      lp.add_le(std::move(down), -b(i, jt, k));
      sum_row[u] = 0.5;
    }
    sum_row[tau] = -1.0;
    lp.add_le(std::move(sum_row), 0.0);
  }
  std::vector<double> c1(n, 0.0);
  c1[tau] = 1.0;
  lp.minimize(c1);
  const LpOutcome first = solve_lp(lp);
  if (first.status != LpStatus::optimal) {
    throw NumericalFailure(std::string("secondary-procedure LP returned ") + to_string(first.status));
  }
  // Stage two: among near-optimal mixings prefer the most diagonal one.
  LinearProgram lp2 = lp;
  lp2.upper[tau] = *first.objective_value + 1e-9;
  std::vector<double> c2(n, 0.0);
  for (std::size_t j = 0; j < J; ++j) c2[w(j, j)] = -1.0;
  lp2.minimize(std::move(c2));
  const LpOutcome second = solve_lp(lp2);
  const LpOutcome& use = second.status == LpStatus::optimal ? second : first;

  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t jt = 0; jt < J; ++jt) res.operation.q_P[j][jt] = std::clamp(use.x[w(j, jt)], 0.0, 1.0);
  for (std::size_t jt = 0; jt < J; ++jt) {
    double sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) sum += res.operation.q_P[j][jt];
    for (std::size_t j = 0; j < J; ++j) res.operation.q_P[j][jt] /= sum;
  }
  res.behavior = Behavior::uniform(s);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t jt = 0; jt < J; ++jt) {
      if (!active[i * J + jt]) continue;
      for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < J; ++j)
          if (active[i * J + j]) acc += res.operation.q_P[j][jt] * b(i, j, k);
        res.behavior(i, jt, k) = acc;
      }
    }
  res.objective = max_tv(s, res.behavior, b);
  return res;
}

}  // namespace ctx
