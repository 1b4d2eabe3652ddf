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

#include "ctx/free_ops.hpp"
#include "ctx/monotone.hpp"
#include "ctx/sampling.hpp"
#include "fixtures.hpp"

namespace ctx {
namespace {

/// Distance through the facet description: minimize t subject to the eight
/// facets, the bounds and the equivalence on p*, and 2|p - p*| <= t per cell.
/// Variables are the eight p*(1|i,j) followed by t.
double facet_route_distance(const Behavior& b) {
  LinearProgram lp(9);
  for (std::size_t v = 0; v < 8; ++v) lp.upper[v] = 1.0;
  auto at = [](int i, int j) { return static_cast<std::size_t>((i - 1) * 4 + (j - 1)); };
  auto row = [&](std::initializer_list<std::pair<std::pair<int, int>, double>> terms) {
    std::vector<double> r(9, 0.0);
    for (const auto& [cell, c] : terms) r[at(cell.first, cell.second)] += c;
    return r;
  };
  const std::vector<std::vector<std::pair<std::pair<int, int>, double>>> facets = {
      {{{1, 2}, 1}, {{2, 2}, 1}, {{1, 4}, -1}, {{2, 3}, -1}}, {{{1, 2}, 1}, {{2, 2}, 1}, {{1, 3}, -1}, {{2, 4}, -1}},
      {{{2, 2}, 1}, {{1, 3}, 1}, {{1, 2}, -1}, {{2, 4}, -1}}, {{{1, 2}, 1}, {{2, 3}, 1}, {{2, 2}, -1}, {{1, 4}, -1}},
      {{{2, 2}, 1}, {{1, 4}, 1}, {{1, 2}, -1}, {{2, 3}, -1}}, {{{2, 3}, 1}, {{1, 4}, 1}, {{1, 2}, -1}, {{2, 2}, -1}},
      {{{1, 2}, 1}, {{2, 4}, 1}, {{2, 2}, -1}, {{1, 3}, -1}}, {{{1, 3}, 1}, {{2, 4}, 1}, {{2, 2}, -1}, {{1, 2}, -1}},
  };
  for (const auto& f : facets) {
    std::vector<double> r(9, 0.0);
    for (const auto& [cell, c] : f) r[at(cell.first, cell.second)] += c;
    lp.add_le(r, 1.0);
  }
  for (int i = 1; i <= 2; ++i) lp.add_eq(row({{{i, 1}, 1}, {{i, 2}, 1}, {{i, 3}, -1}, {{i, 4}, -1}}), 0.0);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 4; ++j) {
      const double pij = testing::p(b, i, j);
      std::vector<double> r(9, 0.0);
      r[at(i, j)] = -2.0;
      r[8] = -1.0;
      lp.add_le(r, -2.0 * pij);  // 2(p - p*) <= t
      r[at(i, j)] = 2.0;
      lp.add_le(r, 2.0 * pij);  // 2(p* - p) <= t
    }
  std::vector<double> c(9, 0.0);
  c[8] = 1.0;
  lp.minimize(c);
  return *solve_lp(lp).objective_value;
}

TEST(L1Distance, UniformIsZero) {
  const Scenario s = make_simplest_scenario();
  EXPECT_NEAR(l1_distance(s, Behavior::uniform(s)), 0.0, 1e-12);
}

TEST(L1Distance, TableMatchesFrozenValueAndFacetRoute) {
  const Scenario s = make_simplest_scenario();
  const Behavior b = testing::table_behavior();
  const L1Projection p = l1_projection(s, b);
  EXPECT_NEAR(p.distance, testing::kTableDistance, 1e-9);
  EXPECT_NEAR(p.distance, facet_route_distance(b), 1e-9);
  EXPECT_FALSE(is_noncontextual(s, p.nearest, 1e-8).contextual);
  EXPECT_TRUE(validate_model(s, p.model, p.nearest, 1e-8).ok());
  // Upper bound from substituting the uniform model.
  double bound = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) bound = std::max(bound, std::abs(b(i, j, 0) - 0.5) + std::abs(b(i, j, 1) - 0.5));
  EXPECT_LE(p.distance, bound + 1e-12);
}

TEST(L1Distance, ContextualVertexIsFartherThanTable) {
  const Scenario s = make_simplest_scenario();
  // The vertex on the far side of h7: p12 = p24 = 1, p22 = p13 = 0.
  const Behavior v = testing::si_behavior({0, 1, 0, 1, 1, 0, 0, 1});
  ASSERT_GT(testing::facet_values(v)[6], 0.0);
  const double dv = l1_distance(s, v);
  EXPECT_GE(dv, testing::kTableDistance - 1e-9);
  EXPECT_NEAR(dv, facet_route_distance(v), 1e-9);
}

TEST(L1Distance, ZeroExactlyWhenNoncontextual) {
  const Scenario s = make_simplest_scenario();
  Rng rng(17);
  int ctx_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Behavior b = random_behavior(s, rng);
    const double d = l1_distance(s, b);
    const bool contextual = is_noncontextual(s, b).contextual;
    ctx_seen += contextual;
    if (contextual) EXPECT_GT(d, 0.0);
    else EXPECT_LE(d, kMonotoneTolerance);
    EXPECT_NEAR(d, facet_route_distance(b), 1e-7);
  }
  EXPECT_GT(ctx_seen, 0);
}

TEST(L1Distance, MonotoneUnderRandomFreeOperations) {
  const Scenario s = make_simplest_scenario();
  Rng rng(23);
  int carried = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Behavior b = random_behavior(s, rng);
    FreeOperation t = random_free_operation(s, 4, 2, 2, rng);
    // Half of the draws keep the preparations fixed, so the equivalence is
    // always carried and the bound is not vacuous.
    if (trial % 2 == 0) t.q_P = identity_matrix(4);
    const Transformed out = apply_free_operation(t, s, b);
    carried += !out.scenario.prep_equivs.empty();
    EXPECT_TRUE(validate_behavior(out.scenario, out.behavior, 1e-9).ok());
    EXPECT_LE(l1_distance(out.scenario, out.behavior), l1_distance(s, b) + kMonotoneTolerance) << trial;
  }
  EXPECT_GE(carried, 100);
}

TEST(L1Distance, InvariantUnderTablePermutations) {
  const Scenario s = make_simplest_scenario();
  Rng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const Behavior b = random_behavior(s, rng);
    const double d = l1_distance(s, b);
    for (Generator g : kGenerators) {
      const Transformed out = apply_free_operation(simplest_permutation(g), s, b);
      EXPECT_NEAR(l1_distance(out.scenario, out.behavior), d, kMonotoneTolerance);
    }
  }
}

}  // namespace
}  // namespace ctx
