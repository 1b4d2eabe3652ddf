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

#include <random>

#include "ctx/error.hpp"
#include "ctx/lp.hpp"

namespace ctx {
namespace {

TEST(SolveLp, MinimizeWithLowerBound) {
  LinearProgram lp(1);
  lp.add_ge({1.0}, 3.0);
  lp.minimize({1.0});
  const LpOutcome out = solve_lp(lp);
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.x[0], 3.0, 1e-12);
  EXPECT_NEAR(*out.objective_value, 3.0, 1e-12);
}

TEST(SolveLp, ContradictoryBoundsAreInfeasibleWithCertificate) {
  LinearProgram lp(1);
  lp.lower[0] = -kInf;
  lp.add_ge({1.0}, 1.0);
  lp.add_le({1.0}, 0.0);
  const LpOutcome out = solve_lp(lp);
  ASSERT_EQ(out.status, LpStatus::infeasible);
  ASSERT_TRUE(out.certificate.has_value());
  EXPECT_GT(farkas_gap(lp, *out.certificate), 0.0);
}

TEST(SolveLp, VariableBoxInfeasible) {
  LinearProgram lp(2);
  lp.upper = {1.0, 1.0};
  lp.add_eq({1.0, 1.0}, 3.0);
  const LpOutcome out = solve_lp(lp);
  ASSERT_EQ(out.status, LpStatus::infeasible);
  ASSERT_TRUE(out.certificate);
  EXPECT_GT(farkas_gap(lp, *out.certificate), 0.0);
}

TEST(SolveLp, Unbounded) {
  LinearProgram lp(2);
  lp.add_le({1.0, -1.0}, 1.0);
  lp.minimize({-1.0, 0.0});
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(SolveLp, FreeAndUpperOnlyVariables) {
  LinearProgram lp(2);
  lp.lower = {-kInf, -kInf};
  lp.upper = {kInf, 5.0};
  lp.add_eq({1.0, 1.0}, 2.0);
  lp.minimize({1.0, 0.0});
  const LpOutcome out = solve_lp(lp);
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.x[0], -3.0, 1e-12);
  EXPECT_NEAR(out.x[1], 5.0, 1e-12);
}

TEST(SolveLp, RedundantEqualities) {
  LinearProgram lp(3);
  lp.add_eq({1, 1, 1}, 1.0);
  lp.add_eq({2, 2, 2}, 2.0);
  lp.add_eq({1, 0, 0}, 0.25);
  lp.minimize({0, 1, -1});
  const LpOutcome out = solve_lp(lp);
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(*out.objective_value, -0.75, 1e-12);
  EXPECT_LE(max_violation(lp, out.x), kLpTolerance);
}

TEST(SolveLp, RejectsRaggedRows) {
  LinearProgram lp(2);
  lp.add_eq({1.0}, 1.0);
  EXPECT_THROW(solve_lp(lp), ShapeMismatch);
}

TEST(SolveLp, DeterministicOnRepeat) {
  LinearProgram lp(3);
  lp.add_le({1, 2, 3}, 4);
  lp.add_le({3, 2, 1}, 4);
  lp.minimize({-1, -1, -1});
  const LpOutcome a = solve_lp(lp);
  const LpOutcome b = solve_lp(lp);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.pivots, b.pivots);
}

/// Random rational-valued programs: double and exact arithmetic agree on
/// status and objective, solutions pass an independent substitution check,
/// and infeasibility certificates close.
TEST(SolveLp, RandomProgramsAgreeWithExactMode) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> rhs(-3, 6);
  int infeasible = 0, optimal = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 4;
    LinearProgram lp(n);
    for (std::size_t x = 0; x < n; ++x) lp.upper[x] = 3.0;
    const int m_eq = trial % 2, m_in = 2 + trial % 3;
    for (int r = 0; r < m_eq; ++r) {
      std::vector<double> row(n);
      for (auto& c : row) c = coef(rng);
      lp.add_eq(row, rhs(rng));
    }
    for (int r = 0; r < m_in; ++r) {
      std::vector<double> row(n);
      for (auto& c : row) c = coef(rng);
      lp.add_le(row, rhs(rng));
    }
    std::vector<double> c(n);
    for (auto& v : c) v = coef(rng);
    lp.minimize(c);
    const LpOutcome d = solve_lp(lp);
    LpOptions exact;
    exact.exact = true;
    const LpOutcome q = solve_lp(lp, exact);
    ASSERT_EQ(d.status, q.status) << "trial " << trial;
    if (d.status == LpStatus::optimal) {
      ++optimal;
      EXPECT_NEAR(*d.objective_value, *q.objective_value, 1e-9);
      // Independent substitution check.
      double worst = 0.0;
      for (const auto& row : lp.eq) {
        double s = 0;
        for (std::size_t x = 0; x < n; ++x) s += row.coeffs[x] * d.x[x];
        worst = std::max(worst, std::abs(s - row.rhs));
      }
      for (const auto& row : lp.ineq) {
        double s = 0;
        for (std::size_t x = 0; x < n; ++x) s += row.coeffs[x] * d.x[x];
        worst = std::max(worst, s - row.rhs);
      }
      for (std::size_t x = 0; x < n; ++x) worst = std::max({worst, -d.x[x], d.x[x] - 3.0});
      EXPECT_LE(worst, kLpTolerance);
    } else if (d.status == LpStatus::infeasible) {
      ++infeasible;
      ASSERT_TRUE(d.certificate);
      EXPECT_GT(farkas_gap(lp, *d.certificate), 0.0);
      ASSERT_TRUE(q.certificate);
      EXPECT_GT(farkas_gap(lp, *q.certificate), 0.0);
    }
  }
  EXPECT_GT(optimal, 10);
  EXPECT_GT(infeasible, 10);
}

/// Perturbing the rhs of an inactive constraint by lp_tol keeps the status.
TEST(SolveLp, InactiveConstraintPerturbation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    LinearProgram lp(3);
    for (int r = 0; r < 4; ++r) lp.add_le({u(rng), u(rng), u(rng)}, 1.0 + u(rng));
    lp.minimize({-u(rng), -u(rng), -u(rng)});
    const LpOutcome base = solve_lp(lp);
    ASSERT_EQ(base.status, LpStatus::optimal);
    for (std::size_t r = 0; r < lp.ineq.size(); ++r) {
      double s = 0;
      for (std::size_t x = 0; x < 3; ++x) s += lp.ineq[r].coeffs[x] * base.x[x];
      if (lp.ineq[r].rhs - s < 1e-6) continue;
      for (double sign : {-1.0, 1.0}) {
        LinearProgram p = lp;
        p.ineq[r].rhs += sign * kLpTolerance;
        EXPECT_EQ(solve_lp(p).status, LpStatus::optimal);
      }
    }
  }
}

TEST(MinNorm, PicksSmallestNormPoint) {
  // x0 + x1 + x2 = 1, x >= 0: the barycenter.
  const auto x = min_norm_nonnegative({{1, 1, 1}}, {1});
  ASSERT_TRUE(x);
  for (double v : *x) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(MinNorm, ActiveNonnegativity) {
  // x0 - x1 = 1 forces x0 = 1 + x1, minimal at x1 = 0.
  const auto x = min_norm_nonnegative({{1, -1}}, {1});
  ASSERT_TRUE(x);
  EXPECT_NEAR((*x)[0], 1.0, 1e-12);
  EXPECT_NEAR((*x)[1], 0.0, 1e-12);
}

TEST(MinNorm, Empty) { EXPECT_FALSE(min_norm_nonnegative({{1, 1}}, {-1}).has_value()); }

}  // namespace
}  // namespace ctx
