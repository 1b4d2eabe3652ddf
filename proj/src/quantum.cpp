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

#include "ctx/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ctx/composition.hpp"
#include "ctx/error.hpp"
#include "ctx/nc_model.hpp"

namespace ctx {

namespace {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

double min_eigenvalue(const MatrixXcd& m) {
  if (m.rows() == 2) {
    // Roots of the characteristic polynomial of a 2x2 Hermitian matrix.
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double off = std::norm(m(0, 1));
    return 0.5 * (a + d - std::sqrt((a - d) * (a - d) + 4.0 * off));
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_operator(const MatrixXcd& m, std::size_t dim, const std::string& where, ValidationReport& rep) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    rep.violations.push_back({"wrong-dimension", 0.0, where});
    return;
  }
  const double herm = (m - m.adjoint()).norm();
  if (herm > kQuantumTolerance) {
    rep.violations.push_back({"not-hermitian", herm, where});
    return;
  }
  const double lo = min_eigenvalue(0.5 * (m + m.adjoint()));
  if (lo < -kQuantumTolerance) rep.violations.push_back({"not-positive", -lo, where});
}

}  // namespace

ValidationReport validate_realization(const QuantumRealization& q) {
  ValidationReport rep;
  if (q.dim == 0) rep.violations.push_back({"zero-dimension", 0.0, "dim"});
  for (std::size_t j = 0; j < q.states.size(); ++j) {
    const std::string where = "state " + std::to_string(j);
    check_operator(q.states[j], q.dim, where, rep);
    if (static_cast<std::size_t>(q.states[j].rows()) == q.dim) {
      const double tr_err = std::abs(q.states[j].trace() - cd(1.0, 0.0));
      if (tr_err > kQuantumTolerance) rep.violations.push_back({"trace-not-one", tr_err, where});
    }
  }
  const std::size_t K = q.povms.empty() ? 0 : q.povms.front().size();
  for (std::size_t i = 0; i < q.povms.size(); ++i) {
    const std::string where = "povm " + std::to_string(i);
    if (q.povms[i].size() != K || K == 0) {
      rep.violations.push_back({"outcome-count", static_cast<double>(q.povms[i].size()), where});
      continue;
    }
    MatrixXcd sum = MatrixXcd::Zero(static_cast<Eigen::Index>(q.dim), static_cast<Eigen::Index>(q.dim));
    bool shaped = true;
    for (std::size_t k = 0; k < K; ++k) {
      check_operator(q.povms[i][k], q.dim, where + " effect " + std::to_string(k), rep);
      if (static_cast<std::size_t>(q.povms[i][k].rows()) != q.dim || static_cast<std::size_t>(q.povms[i][k].cols()) != q.dim) {
        shaped = false;
      } else {
        sum += q.povms[i][k];
      }
    }
    if (shaped) {
      const double err = (sum - MatrixXcd::Identity(sum.rows(), sum.cols())).norm();
      if (err > kQuantumTolerance) rep.violations.push_back({"not-complete", err, where});
    }
  }
  return rep;
}

Behavior behavior_from_quantum(const QuantumRealization& q) {
  const ValidationReport rep = validate_realization(q);
  if (!rep.ok()) {
    throw InvalidArgument("invalid quantum realization: " + rep.violations.front().constraint + " at " +
                          rep.violations.front().location);
  }
  const std::size_t I = q.povms.size(), J = q.states.size(), K = I == 0 ? 0 : q.povms.front().size();
  Behavior b(I, J, K);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t k = 0; k < K; ++k) b(i, j, k) = (q.povms[i][k] * q.states[j]).trace().real();
  return b;
}

ValidationReport verify_quantum_equivalences(const QuantumRealization& q, const Scenario& s) {
  if (q.states.size() != s.n_preps || q.povms.size() != s.n_meas) {
    throw ShapeMismatch("realization has " + std::to_string(q.states.size()) + " states and " +
                        std::to_string(q.povms.size()) + " measurements");
  }
  for (const auto& p : q.povms)
    if (p.size() != s.n_outcomes) throw ShapeMismatch("POVM outcome count differs from |K|");
  ValidationReport rep;
  const auto d = static_cast<Eigen::Index>(q.dim);
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) {
    const std::vector<double> diff = s.prep_equivs[a].difference();
    MatrixXcd acc = MatrixXcd::Zero(d, d);
    for (std::size_t j = 0; j < s.n_preps; ++j) acc += diff[j] * q.states[j];
    const double err = acc.norm();
    if (err > kQuantumTolerance) rep.violations.push_back({"prep-equivalence-" + std::to_string(a), err, "operator"});
  }
  for (std::size_t b = 0; b < s.meas_equivs.size(); ++b) {
    const std::vector<double> diff = s.meas_equivs[b].difference();
    MatrixXcd acc = MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < s.n_meas; ++i)
      for (std::size_t k = 0; k < s.n_outcomes; ++k) acc += diff[s.event_index(i, k)] * q.povms[i][k];
    const double err = acc.norm();
    if (err > kQuantumTolerance) rep.violations.push_back({"meas-equivalence-" + std::to_string(b), err, "operator"});
  }
  return rep;
}

std::vector<MatrixXcd> povm_from_observable(const MatrixXcd& a) {
  const MatrixXcd id = MatrixXcd::Identity(a.rows(), a.cols());
  return {0.5 * (id + a), 0.5 * (id - a)};
}

namespace {

MatrixXcd projector(cd x, cd y) {
  Eigen::Vector2cd v(x, y);
  return v * v.adjoint();
}

std::vector<std::vector<MatrixXcd>> canonical_povms() {
  MatrixXcd sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  const double r = 1.0 / std::sqrt(2.0);
  return {povm_from_observable(r * (sx + sz)), povm_from_observable(r * (sx - sz))};
}

}  // namespace

QuantumRealization canonical_simplest_realization() {
  QuantumRealization q;
  q.dim = 2;
  const double r = 1.0 / std::sqrt(2.0);
  q.states = {projector(1, 0), projector(0, 1), projector(r, r), projector(r, -r)};
  q.povms = canonical_povms();
  return q;
}

QuantumRealization maximally_mixed_realization(std::size_t n_preps) {
  QuantumRealization q;
  q.dim = 2;
  q.states.assign(n_preps, 0.5 * MatrixXcd::Identity(2, 2));
  q.povms = canonical_povms();
  return q;
}

QuantumRealization apply_generator(Generator g, const QuantumRealization& q) {
  if (q.states.size() != 4 || q.povms.size() != 2) throw ShapeMismatch("generators act on B_si realizations");
  QuantumRealization out = q;
  switch (g) {
    case Generator::alpha: std::swap(out.states[0], out.states[1]); break;
    case Generator::beta: std::swap(out.states[2], out.states[3]); break;
    case Generator::gamma: std::swap(out.povms[0], out.povms[1]); break;
    case Generator::delta:
      std::swap(out.states[0], out.states[2]);
      std::swap(out.states[1], out.states[3]);
      break;
  }
  return out;
}

std::vector<FacetWitness> witness_all_facets(std::size_t n, std::size_t cap) {
  if (n == 0) throw InvalidArgument("witness_all_facets: n must be at least 1");
  if (n > cap) throw CapExceeded("witness_all_facets block count", static_cast<double>(n), static_cast<double>(cap));
  const Scenario si = make_simplest_scenario();
  const InequalitySet h = simplest_scenario_inequalities();
  const std::vector<Behavior> vertices = enumerate_behavior_vertices(si);

  // Vertex violating each facet, and the one violating h7.
  std::vector<std::size_t> vertex_of(h.n_nontrivial, vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const std::vector<double> vals = evaluate_inequalities(h, vertices[v]);
    for (std::size_t f = 0; f < h.n_nontrivial; ++f)
      if (vals[f] > kDefaultTolerance) vertex_of[f] = v;
  }
  constexpr std::size_t kCanonicalFacet = 6;  // h7
  const QuantumRealization canonical = canonical_simplest_realization();
  const Behavior mixed = behavior_from_quantum(maximally_mixed_realization(4));

  std::vector<FacetWitness> out;
  for (std::size_t blk = 0; blk < n; ++blk) {
    for (std::size_t f = 0; f < h.n_nontrivial; ++f) {
      FacetWitness w;
      w.block = blk;
      w.facet = f;
      w.facet_id = "b" + std::to_string(blk + 1) + ".h" + std::to_string(f + 1);
      w.word = contextual_vertex_path(vertex_of[kCanonicalFacet], vertex_of[f]);
      QuantumRealization q = canonical;
      for (Generator g : w.word) q = apply_generator(g, q);
      const Behavior block = behavior_from_quantum(q);
      w.violation = evaluate_inequalities(h, block)[f];
      Behavior full = blk == 0 ? block : mixed;
      for (std::size_t r = 1; r < n; ++r) full = compose_behaviors(full, r == blk ? block : mixed);
      w.behavior = std::move(full);
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace ctx
