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

#include "ctx/composition.hpp"
#include "ctx/error.hpp"
#include "ctx/monotone.hpp"
#include "ctx/sampling.hpp"
#include "fixtures.hpp"

namespace ctx {
namespace {

TEST(Compose, CountsEquivalencesAndHybridCells) {
  const Scenario si = make_simplest_scenario();
  const Scenario c = compose_scenarios(si, si);
  EXPECT_EQ(c.n_preps, 8u);
  EXPECT_EQ(c.n_meas, 4u);
  EXPECT_EQ(c.n_outcomes, 2u);
  ASSERT_EQ(c.prep_equivs.size(), 2u);
  EXPECT_EQ(c.prep_equivs[1].alpha, (std::vector<double>{0, 0, 0, 0, 0.5, 0.5, 0, 0}));
  EXPECT_EQ(c.excluded.size(), 16u);
  EXPECT_FALSE(c.is_active(0, 4));
  EXPECT_TRUE(c.is_active(3, 7));
  EXPECT_TRUE(validate_scenario(c).ok());
}

TEST(Compose, BehaviorBlocksAndPadding) {
  const Behavior t = testing::table_behavior();
  const Behavior u = Behavior::uniform(make_simplest_scenario());
  const Behavior c = compose_behaviors(t, u);
  EXPECT_DOUBLE_EQ(c(1, 2, 1), t(1, 2, 1));
  EXPECT_DOUBLE_EQ(c(0, 5, 1), 0.5);
  EXPECT_DOUBLE_EQ(c(3, 1, 0), 0.5);
  const Scenario s = compose_scenarios(make_simplest_scenario(), make_simplest_scenario());
  EXPECT_TRUE(validate_behavior(s, c).ok());
  const auto layout = power_layout(make_simplest_scenario(), 2);
  EXPECT_EQ(extract_block(c, layout[0], 2), t);
  EXPECT_EQ(extract_block(c, layout[1], 2), u);
}

TEST(Compose, OutcomeAxisIsZeroPadded) {
  Scenario s3;
  s3.n_preps = 1;
  s3.n_meas = 1;
  s3.n_outcomes = 3;
  Behavior b3(1, 1, 3);
  b3(0, 0, 0) = 0.2;
  b3(0, 0, 1) = 0.3;
  b3(0, 0, 2) = 0.5;
  const Scenario c = compose_scenarios(make_simplest_scenario(), s3);
  const Behavior cb = compose_behaviors(testing::table_behavior(), b3);
  EXPECT_EQ(c.n_outcomes, 3u);
  EXPECT_DOUBLE_EQ(cb(0, 0, 2), 0.0);
  EXPECT_TRUE(validate_behavior(c, cb).ok());
}

TEST(Compose, VerdictIsConjunctionOfBlocks) {
  const Scenario si = make_simplest_scenario();
  const Scenario c = compose_scenarios(si, si);
  Rng rng(61);
  int mixed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Behavior b1 = random_behavior(si, rng);
    const Behavior b2 = trial % 3 ? random_behavior(si, rng) : testing::table_behavior();
    const bool c1 = is_noncontextual(si, b1).contextual, c2 = is_noncontextual(si, b2).contextual;
    mixed += c1 != c2;
    EXPECT_EQ(is_noncontextual(c, compose_behaviors(b1, b2)).contextual, c1 || c2);
  }
  EXPECT_GT(mixed, 0);
}

TEST(Compose, QuantumBlockInheritance) {
  const Scenario si = make_simplest_scenario();
  const Scenario c = compose_scenarios(si, si);
  const Behavior u = Behavior::uniform(si);
  EXPECT_TRUE(is_noncontextual(c, compose_behaviors(testing::table_behavior(), u)).contextual);
  EXPECT_TRUE(is_noncontextual(c, compose_behaviors(u, testing::table_behavior())).contextual);
  EXPECT_FALSE(is_noncontextual(c, compose_behaviors(u, u)).contextual);
}

TEST(Compose, ProductVertexCount) {
  const ProductCountsReport r = product_counts_check(make_simplest_scenario(), make_simplest_scenario());
  EXPECT_EQ(r.vertices_lhs, 1296.0);
  EXPECT_TRUE(r.ok());
}

TEST(Compose, DistanceIsSubadditive) {
  const Scenario si = make_simplest_scenario();
  const Scenario c = compose_scenarios(si, si);
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const Behavior b1 = random_behavior(si, rng), b2 = random_behavior(si, rng);
    const double d1 = l1_distance(si, b1), d2 = l1_distance(si, b2);
    const double d = l1_distance(c, compose_behaviors(b1, b2));
    EXPECT_LE(d, std::max(d1, d2) + kMonotoneTolerance);
    EXPECT_LE(d, d1 + d2 + kMonotoneTolerance);
  }
}

TEST(Power, MatchesRepeatedComposition) {
  const Scenario si = make_simplest_scenario();
  EXPECT_EQ(power_scenario(si, 3), compose_scenarios(compose_scenarios(si, si), si));
  EXPECT_EQ(power_scenario(si, 1), si);
  EXPECT_THROW(power_scenario(si, 0), InvalidArgument);
}

TEST(Identify, MergesAgreeingMeasurements) {
  const Scenario s = make_si_family_scenario(3);
  Rng rng(71);
  Behavior b = random_behavior(s, rng);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 2; ++k) b(2, j, k) = b(0, j, k);
  const Transformed out = identify_measurements(s, b, {0, 1, 0});
  EXPECT_EQ(out.scenario.n_meas, 2u);
  EXPECT_DOUBLE_EQ(out.behavior(1, 3, 1), b(1, 3, 1));
  EXPECT_TRUE(validate_behavior(out.scenario, out.behavior).ok());
  b(2, 0, 1) += 0.1;
  b(2, 0, 0) -= 0.1;
  EXPECT_THROW(identify_measurements(s, b, {0, 1, 0}), InvalidArgument);
  EXPECT_THROW(identify_measurements(s, {0, 2, 0}), InvalidArgument);
}

TEST(Cloning, CountsAndEquivalences) {
  const CloningScenario c = cloning_scenario();
  EXPECT_EQ(c.scenario.n_preps, 12u);
  EXPECT_EQ(c.scenario.n_meas, 6u);
  EXPECT_EQ(c.scenario.n_outcomes, 2u);
  ASSERT_EQ(c.scenario.prep_equivs.size(), 3u);
  EXPECT_TRUE(validate_scenario(c.scenario).ok());
  EXPECT_TRUE(verify_decomposition(c));
  ASSERT_EQ(c.decomposition.equivalence_map.size(), 3u);
  // Equivalence 1 of the cloning scenario is the single one of block 1.
  const std::size_t e0 = c.decomposition.equivalence_map[0];
  const auto& src = c.composite.prep_equivs[0];
  for (std::size_t j = 0; j < 12; ++j) {
    const std::size_t jq = c.decomposition.prep_map[j];
    EXPECT_DOUBLE_EQ(c.scenario.prep_equivs[e0].alpha[jq], src.alpha[j]);
    EXPECT_DOUBLE_EQ(c.scenario.prep_equivs[e0].beta[jq], src.beta[j]);
  }
  EXPECT_EQ(c.decomposition.prep_labels.size(), 12u);
  EXPECT_EQ(c.decomposition.meas_labels.size(), 6u);
}

TEST(Cloning, VerdictIsConjunctionOfBlockVerdicts) {
  const CloningScenario c = cloning_scenario();
  const Scenario b6 = make_si_family_scenario(6);
  Rng rng(73);
  int contextual = 0;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Behavior> blocks;
    bool any = false;
    for (int blk = 0; blk < 3; ++blk) {
      blocks.push_back(trial % 3 == 0 && blk == trial % 2 ? random_behavior(b6, rng)
                                                          : testing::random_nc_behavior(b6, rng));
      any = any || is_noncontextual(b6, blocks.back()).contextual;
    }
    const Behavior joint = cloning_behavior(c, blocks);
    EXPECT_TRUE(validate_behavior(c.scenario, joint).ok());
    EXPECT_EQ(is_noncontextual(c.scenario, joint).contextual, any);
    contextual += any;
  }
  EXPECT_GT(contextual, 0);
  EXPECT_LT(contextual, 12);
}

}  // namespace
}  // namespace ctx
