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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ctx/error.hpp"
#include "ctx/nc_model.hpp"
#include "ctx/sampling.hpp"
#include "fixtures.hpp"

namespace ctx {
namespace {

/// Brute force over every 0/1 table of p(1|i,j) with the equivalence checked
/// exactly; independent of the library's vertex enumeration.
std::set<std::vector<int>> brute_force_vertices() {
  std::set<std::vector<int>> out;
  for (int mask = 0; mask < 256; ++mask) {
    std::vector<int> bits(8);
    for (int e = 0; e < 8; ++e) bits[e] = (mask >> e) & 1;
    bool ok = true;
    for (int i = 0; i < 2; ++i) ok = ok && bits[i * 4 + 0] + bits[i * 4 + 1] == bits[i * 4 + 2] + bits[i * 4 + 3];
    if (ok) out.insert(bits);
  }
  return out;
}

std::vector<int> bits_of(const Behavior& b) {
  std::vector<int> bits(8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) bits[i * 4 + j] = static_cast<int>(std::lround(b(i, j, 1)));
  return bits;
}

TEST(OnticStates, CountIsOutcomesToTheMeasurements) {
  EXPECT_EQ(enumerate_ontic_states(make_simplest_scenario()).size(), 4u);
  EXPECT_EQ(enumerate_ontic_states(make_si_family_scenario(6)).size(), 64u);
  Scenario s3 = make_simplest_scenario();
  s3.n_outcomes = 3;
  s3.n_meas = 3;
  EXPECT_EQ(enumerate_ontic_states(s3).size(), 27u);
}

TEST(OnticStates, CapIsEnforced) {
  EXPECT_THROW(enumerate_ontic_states(make_si_family_scenario(6), 63), CapExceeded);
}

TEST(OnticStates, MeasurementEquivalenceFilters) {
  // Outcome 0 of M0 mixed evenly with outcome 0 of M1 equals outcome 0 of M2.
  Scenario s;
  s.n_preps = 1;
  s.n_meas = 3;
  s.n_outcomes = 2;
  s.meas_equivs.push_back({{0.5, 0.0, 0.5, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0, 1.0, 0.0}});
  // Responses must satisfy [r0=0] + [r1=0] = 2[r2=0], so r0 = r1 = r2.
  const auto states = enumerate_ontic_states(s);
  ASSERT_EQ(states.size(), 2u);
  for (const auto& l : states) {
    EXPECT_EQ(l.responses[0], l.responses[1]);
    EXPECT_EQ(l.responses[1], l.responses[2]);
  }
}

TEST(NcMembership, UniformBehaviorHasHandBuiltModel) {
  const Scenario s = make_simplest_scenario();
  const Behavior u = Behavior::uniform(s);
  // Hand-built model: each preparation uniform over the four ontic states.
  NcModel m;
  m.ontic_states = enumerate_ontic_states(s);
  m.mus.assign(4, std::vector<double>(4, 0.25));
  EXPECT_TRUE(validate_model(s, m, u).ok());
  const LinearProgram lp = nc_membership_lp(s, u, m.ontic_states);
  std::vector<double> x;
  for (const auto& mu : m.mus) x.insert(x.end(), mu.begin(), mu.end());
  EXPECT_LE(max_violation(lp, x), 1e-12);
  const NcVerdict v = is_noncontextual(s, u);
  EXPECT_FALSE(v.contextual);
  ASSERT_TRUE(v.model);
  EXPECT_TRUE(validate_model(s, *v.model, u).ok());
}

TEST(NcMembership, TableBehaviorViolatesH7) {
  const NcVerdict v = is_noncontextual(make_simplest_scenario(), testing::table_behavior());
  EXPECT_TRUE(v.contextual);
  EXPECT_FALSE(v.model);
  EXPECT_EQ(v.violated_label(), "h7");
  EXPECT_NEAR(v.violation, std::sqrt(2.0) - 1.0, 1e-12);
  if (v.certificate) {
    const Scenario s = make_simplest_scenario();
    const LinearProgram lp = nc_membership_lp(s, testing::table_behavior(), enumerate_ontic_states(s));
    EXPECT_GT(farkas_gap(lp, *v.certificate), 0.0);
  }
}

TEST(NcMembership, ContextualOutsideSimplestReportsLp) {
  const Scenario s = make_si_family_scenario(3);
  Behavior b(3, 4, 2);
  const Behavior t = testing::table_behavior();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 2; ++k) b(i, j, k) = i < 2 ? t(i, j, k) : 0.5;
  const NcVerdict v = is_noncontextual(s, b);
  EXPECT_TRUE(v.contextual);
  EXPECT_EQ(v.violated_label(), "lp-infeasible");
}

TEST(NcMembership, ModelReconstructionIsNoncontextual) {
  const Scenario s = make_simplest_scenario();
  Rng rng(3);
  const auto states = enumerate_ontic_states(s);
  int built = 0;
  for (int trial = 0; trial < 2000 && built < 50; ++trial) {
    NcModel m;
    m.ontic_states = states;
    // Random mu_1, mu_2, mu_3; mu_4 solves the equivalence when nonnegative.
    for (int j = 0; j < 3; ++j) m.mus.push_back(random_simplex_point(4, rng));
    std::vector<double> mu4(4);
    bool ok = true;
    for (int l = 0; l < 4; ++l) {
      mu4[l] = m.mus[0][l] + m.mus[1][l] - m.mus[2][l];
      ok = ok && mu4[l] >= 0;
    }
    if (!ok) continue;
    m.mus.push_back(mu4);
    ++built;
    const Behavior b = behavior_from_model(s, m);
    EXPECT_TRUE(validate_behavior(s, b).ok());
    EXPECT_FALSE(is_noncontextual(s, b).contextual);
    for (double h : testing::facet_values(b)) EXPECT_LE(h, 1e-12);
  }
  EXPECT_EQ(built, 50);
}

TEST(NcMembership, GridAgreesWithFacetOracle) {
  const Scenario s = make_simplest_scenario();
  // p13, p23 chosen; p14 = p11 + p12 - p13 on the grid.
  const std::vector<double> g = {0.0, 0.25, 0.5, 0.75, 1.0};
  int checked = 0;
  for (double a1 : g)
    for (double a2 : g)
      for (double a3 : g)
        for (double b1 : g)
          for (double b2 : g)
            for (double b3 : g) {
              const double a4 = a1 + a2 - a3, b4 = b1 + b2 - b3;
              if (a4 < 0 || a4 > 1 || b4 < 0 || b4 > 1) continue;
              const Behavior b = testing::si_behavior({a1, a2, a3, a4, b1, b2, b3, b4});
              ++checked;
              EXPECT_EQ(is_noncontextual(s, b).contextual, !testing::in_nc_polytope(b, 1e-8));
            }
  EXPECT_GT(checked, 1000);
}

TEST(Inequalities, UniformGivesMinusOne) {
  const InequalitySet h = simplest_scenario_inequalities();
  ASSERT_EQ(h.n_nontrivial, 8u);
  const auto vals = evaluate_inequalities(h, Behavior::uniform(make_simplest_scenario()));
  for (std::size_t f = 0; f < 8; ++f) EXPECT_DOUBLE_EQ(vals[f], -1.0);
}

TEST(Inequalities, MatchIndependentFormulas) {
  Rng rng(5);
  const Scenario s = make_simplest_scenario();
  const InequalitySet h = simplest_scenario_inequalities();
  for (int trial = 0; trial < 50; ++trial) {
    const Behavior b = random_behavior(s, rng);
    const auto vals = evaluate_inequalities(h, b);
    const auto ref = testing::facet_values(b);
    for (std::size_t f = 0; f < 8; ++f) EXPECT_NEAR(vals[f], ref[f], 1e-12);
  }
}

TEST(Inequalities, TableViolatesExactlyH7) {
  const auto vals = evaluate_inequalities(simplest_scenario_inequalities(), testing::table_behavior());
  for (std::size_t f = 0; f < 8; ++f) {
    if (f == 6) EXPECT_GT(vals[f], 0.0);
    else EXPECT_LT(vals[f], 0.0);
  }
}

TEST(Inequalities, ShapeMismatchThrows) {
  EXPECT_THROW(evaluate_inequalities(simplest_scenario_inequalities(), Behavior(3, 4, 2)), ShapeMismatch);
}

TEST(Vertices, MatchBruteForce) {
  const auto vs = enumerate_behavior_vertices(make_simplest_scenario());
  std::set<std::vector<int>> got;
  for (const auto& v : vs) got.insert(bits_of(v));
  EXPECT_EQ(got, brute_force_vertices());
  EXPECT_EQ(vs.size(), 36u);
}

TEST(Vertices, EachContextualVertexPairsWithOneFacet) {
  const auto vs = enumerate_behavior_vertices(make_simplest_scenario());
  std::vector<int> hits(8, 0);
  int contextual = 0;
  for (const auto& v : vs) {
    const auto vals = testing::facet_values(v);
    const int n_pos = static_cast<int>(std::count_if(vals.begin(), vals.end(), [](double x) { return x > 1e-9; }));
    EXPECT_EQ(is_noncontextual(make_simplest_scenario(), v).contextual, n_pos > 0);
    if (n_pos == 0) continue;
    EXPECT_EQ(n_pos, 1);
    ++contextual;
    for (int f = 0; f < 8; ++f) hits[f] += vals[f] > 1e-9;
  }
  EXPECT_EQ(contextual, 8);
  EXPECT_EQ(hits, std::vector<int>(8, 1));
}

TEST(Vertices, CountWithoutListing) {
  EXPECT_EQ(count_behavior_vertices(make_simplest_scenario()), 36.0);
  EXPECT_EQ(count_behavior_vertices(make_si_family_scenario(3)), 216.0);
}

TEST(Vertices, UnsupportedScenarioThrows) {
  Scenario s = make_simplest_scenario();
  s.prep_equivs[0] = {{0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.25, 0.75}};
  std::string why;
  EXPECT_FALSE(vertex_enumeration_supported(s, &why));
  EXPECT_FALSE(why.empty());
  EXPECT_THROW(enumerate_behavior_vertices(s), UnsupportedScenario);
}

}  // namespace
}  // namespace ctx
