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

#include "ctx/composition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctx/error.hpp"

namespace ctx {

namespace {

EquivalenceVector pad(const EquivalenceVector& e, std::size_t before, std::size_t after) {
  EquivalenceVector out;
  out.alpha.assign(before, 0.0);
  out.alpha.insert(out.alpha.end(), e.alpha.begin(), e.alpha.end());
  out.alpha.resize(before + e.size() + after, 0.0);
  out.beta.assign(before, 0.0);
  out.beta.insert(out.beta.end(), e.beta.begin(), e.beta.end());
  out.beta.resize(before + e.size() + after, 0.0);
  return out;
}

/// Re-indexes an event vector of a block with |K_b| outcomes into the
/// composite layout with |K| outcomes and `meas_offset`, total `n_events`.
std::vector<double> pad_events(const std::vector<double>& v, std::size_t n_meas_b, std::size_t k_b,
                               std::size_t meas_offset, std::size_t k, std::size_t n_events) {
  std::vector<double> out(n_events, 0.0);
  for (std::size_t i = 0; i < n_meas_b; ++i)
    for (std::size_t kk = 0; kk < k_b; ++kk) out[(meas_offset + i) * k + kk] = v[i * k_b + kk];
  return out;
}

}  // namespace

Scenario compose_scenarios(const Scenario& s1, const Scenario& s2) {
  Scenario s;
  s.n_preps = s1.n_preps + s2.n_preps;
  s.n_meas = s1.n_meas + s2.n_meas;
  s.n_outcomes = std::max(s1.n_outcomes, s2.n_outcomes);
  for (const auto& e : s1.prep_equivs) s.prep_equivs.push_back(pad(e, 0, s2.n_preps));
  for (const auto& e : s2.prep_equivs) s.prep_equivs.push_back(pad(e, s1.n_preps, 0));
  for (const auto& e : s1.meas_equivs) {
    s.meas_equivs.push_back({pad_events(e.alpha, s1.n_meas, s1.n_outcomes, 0, s.n_outcomes, s.n_events()),
                             pad_events(e.beta, s1.n_meas, s1.n_outcomes, 0, s.n_outcomes, s.n_events())});
  }
  for (const auto& e : s2.meas_equivs) {
    s.meas_equivs.push_back(
        {pad_events(e.alpha, s2.n_meas, s2.n_outcomes, s1.n_meas, s.n_outcomes, s.n_events()),
         pad_events(e.beta, s2.n_meas, s2.n_outcomes, s1.n_meas, s.n_outcomes, s.n_events())});
  }
  for (const Cell& c : s1.excluded) s.excluded.push_back(c);
  for (const Cell& c : s2.excluded) s.excluded.push_back({c.meas + s1.n_meas, c.prep + s1.n_preps});
  for (std::size_t i = 0; i < s1.n_meas; ++i)
    for (std::size_t j = 0; j < s2.n_preps; ++j) s.excluded.push_back({i, s1.n_preps + j});
  for (std::size_t i = 0; i < s2.n_meas; ++i)
    for (std::size_t j = 0; j < s1.n_preps; ++j) s.excluded.push_back({s1.n_meas + i, j});
  s.normalize_excluded();
  return s;
}

Behavior compose_behaviors(const Behavior& b1, const Behavior& b2) {
  const std::size_t I = b1.n_meas() + b2.n_meas();
  const std::size_t J = b1.n_preps() + b2.n_preps();
  const std::size_t K = std::max(b1.n_outcomes(), b2.n_outcomes());
  Behavior out(I, J, K, 1.0 / static_cast<double>(K));
  auto place = [&](const Behavior& b, std::size_t mo, std::size_t po) {
    for (std::size_t i = 0; i < b.n_meas(); ++i)
      for (std::size_t j = 0; j < b.n_preps(); ++j)
        for (std::size_t k = 0; k < K; ++k) out(mo + i, po + j, k) = k < b.n_outcomes() ? b(i, j, k) : 0.0;
  };
  place(b1, 0, 0);
  place(b2, b1.n_meas(), b1.n_preps());
  return out;
}

Scenario power_scenario(const Scenario& s, std::size_t n) {
  if (n == 0) throw InvalidArgument("power_scenario: n must be at least 1");
  Scenario out = s;
  for (std::size_t r = 1; r < n; ++r) out = compose_scenarios(out, s);
  return out;
}

Behavior power_behavior(const Behavior& b, std::size_t n) {
  if (n == 0) throw InvalidArgument("power_behavior: n must be at least 1");
  Behavior out = b;
  for (std::size_t r = 1; r < n; ++r) out = compose_behaviors(out, b);
  return out;
}

std::vector<BlockLayout> power_layout(const Scenario& s, std::size_t n) {
  std::vector<BlockLayout> out;
  for (std::size_t r = 0; r < n; ++r) out.push_back({r * s.n_preps, s.n_preps, r * s.n_meas, s.n_meas});
  return out;
}

Behavior extract_block(const Behavior& b, const BlockLayout& block, std::size_t n_outcomes) {
  if (block.meas_offset + block.n_meas > b.n_meas() || block.prep_offset + block.n_preps > b.n_preps() ||
      n_outcomes > b.n_outcomes()) {
    throw ShapeMismatch("block lies outside the behavior");
  }
  Behavior out(block.n_meas, block.n_preps, n_outcomes);
  for (std::size_t i = 0; i < block.n_meas; ++i)
    for (std::size_t j = 0; j < block.n_preps; ++j)
      for (std::size_t k = 0; k < n_outcomes; ++k) out(i, j, k) = b(block.meas_offset + i, block.prep_offset + j, k);
  return out;
}

ProductCountsReport product_counts_check(const Scenario& s1, const Scenario& s2, std::size_t cap) {
  ProductCountsReport rep;
  const Scenario c = compose_scenarios(s1, s2);
  rep.vertices_lhs = static_cast<double>(enumerate_behavior_vertices(c, cap).size());
  rep.vertices_rhs = count_behavior_vertices(s1, cap) * count_behavior_vertices(s2, cap);
  rep.facets_note =
      "the composite membership LP splits into one independent block per factor, so its nontrivial facets "
      "are those of the factors lifted to their blocks";
  return rep;
}

Scenario identify_measurements(const Scenario& s, const std::vector<std::size_t>& merge_map) {
  if (merge_map.size() != s.n_meas) throw ShapeMismatch("merge map needs one label per measurement");
  const std::size_t n_new = merge_map.empty() ? 0 : *std::max_element(merge_map.begin(), merge_map.end()) + 1;
  std::vector<char> used(n_new, 0);
  for (std::size_t lbl : merge_map) used[lbl] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end()) throw InvalidArgument("merge map labels must be contiguous");
  Scenario out;
  out.n_preps = s.n_preps;
  out.n_meas = n_new;
  out.n_outcomes = s.n_outcomes;
  out.prep_equivs = s.prep_equivs;
  const std::size_t K = s.n_outcomes;
  for (const auto& e : s.meas_equivs) {
    EquivalenceVector ne{std::vector<double>(n_new * K, 0.0), std::vector<double>(n_new * K, 0.0)};
    for (std::size_t i = 0; i < s.n_meas; ++i)
      for (std::size_t k = 0; k < K; ++k) {
        ne.alpha[merge_map[i] * K + k] += e.alpha[i * K + k];
        ne.beta[merge_map[i] * K + k] += e.beta[i * K + k];
      }
    if (ne.nontrivial()) out.meas_equivs.push_back(std::move(ne));
  }
  const std::vector<char> active = s.active_mask();
  for (std::size_t it = 0; it < n_new; ++it)
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < s.n_meas; ++i) any = any || (merge_map[i] == it && active[i * s.n_preps + j]);
      if (!any) out.excluded.push_back({it, j});
    }
  return out;
}

Transformed identify_measurements(const Scenario& s, const Behavior& b, const std::vector<std::size_t>& merge_map) {
  b.require_shape(s);
  Transformed out;
  out.scenario = identify_measurements(s, merge_map);
  out.behavior = Behavior::uniform(out.scenario);
  const std::vector<char> active = s.active_mask();
  std::vector<char> filled(out.scenario.n_meas * s.n_preps, 0);
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (!active[i * s.n_preps + j]) continue;
      const std::size_t it = merge_map[i];
      char& f = filled[it * s.n_preps + j];
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        if (f && std::abs(out.behavior(it, j, k) - b(i, j, k)) > kDefaultTolerance) {
          throw InvalidArgument("identified measurements disagree at preparation " + std::to_string(j));
        }
        out.behavior(it, j, k) = b(i, j, k);
      }
      f = 1;
    }
  return out;
}

CloningScenario cloning_scenario() {
  CloningScenario c;
  const Scenario b6 = make_si_family_scenario(6);
  c.composite = power_scenario(b6, 3);
  Decomposition& d = c.decomposition;
  d.blocks = power_layout(b6, 3);
  d.prep_labels = {"a", "a_perp", "b", "b_perp", "alpha", "alpha_perp", "aa", "aa_perp",
                   "beta", "beta_perp", "bb", "bb_perp"};
  d.meas_labels = {"a", "b", "alpha", "beta", "aa", "bb"};
  for (std::size_t j = 0; j < c.composite.n_preps; ++j) d.prep_map.push_back(j);
  for (std::size_t i = 0; i < c.composite.n_meas; ++i) d.meas_map.push_back(i % b6.n_meas);
  for (std::size_t a = 0; a < c.composite.prep_equivs.size(); ++a) d.equivalence_map.push_back(a);

  Scenario& s = c.scenario;
  s.n_preps = 12;
  s.n_meas = 6;
  s.n_outcomes = 2;
  // 1/2 P_s + 1/2 P_s_perp ~ 1/2 P_t + 1/2 P_t_perp for (s,t) = (a,b), (alpha,aa), (beta,bb).
  for (std::size_t blk = 0; blk < 3; ++blk) {
    EquivalenceVector e{std::vector<double>(12, 0.0), std::vector<double>(12, 0.0)};
    e.alpha[4 * blk] = e.alpha[4 * blk + 1] = 0.5;
    e.beta[4 * blk + 2] = e.beta[4 * blk + 3] = 0.5;
    s.prep_equivs.push_back(std::move(e));
  }
  return c;
}

bool verify_decomposition(const CloningScenario& c) {
  const Decomposition& d = c.decomposition;
  if (d.prep_map.size() != c.composite.n_preps || d.meas_map.size() != c.composite.n_meas) return false;
  for (std::size_t j = 0; j < d.prep_map.size(); ++j)
    if (d.prep_map[j] != j) return false;
  Scenario merged = identify_measurements(c.composite, d.meas_map);
  if (d.equivalence_map.size() != merged.prep_equivs.size()) return false;
  std::vector<EquivalenceVector> reordered(merged.prep_equivs.size());
  for (std::size_t a = 0; a < d.equivalence_map.size(); ++a) {
    if (d.equivalence_map[a] >= reordered.size()) return false;
    reordered[d.equivalence_map[a]] = merged.prep_equivs[a];
  }
  merged.prep_equivs = std::move(reordered);
  return merged == c.scenario;
}

Behavior cloning_behavior(const CloningScenario& c, const std::vector<Behavior>& blocks) {
  if (blocks.size() != c.decomposition.blocks.size()) throw ShapeMismatch("one behavior per block is required");
  Behavior composite = blocks.front();
  for (std::size_t b = 1; b < blocks.size(); ++b) composite = compose_behaviors(composite, blocks[b]);
  return identify_measurements(c.composite, composite, c.decomposition.meas_map).behavior;
}

}  // namespace ctx
