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

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace ctx {

/// Primal feasibility tolerance every returned LP solution is checked against.
inline constexpr double kLpTolerance = 1e-8;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

/// minimize objective * x  s.t.  eq rows (==), ineq rows (<=), lower <= x <= upper.
/// Without an objective the program is a pure feasibility problem.
struct LinearProgram {
  std::size_t n_vars = 0;
  std::optional<std::vector<double>> objective;
  std::vector<LpRow> eq;
  std::vector<LpRow> ineq;
  std::vector<double> lower;
  std::vector<double> upper;

  LinearProgram() = default;
  /// All variables default to [0, +inf).
  explicit LinearProgram(std::size_t n) : n_vars(n), lower(n, 0.0), upper(n, kInf) {}

  void add_eq(std::vector<double> row, double rhs) { eq.push_back({std::move(row), rhs}); }
  void add_le(std::vector<double> row, double rhs) { ineq.push_back({std::move(row), rhs}); }
  void add_ge(std::vector<double> row, double rhs);
  void minimize(std::vector<double> c) { objective = std::move(c); }
};

enum class LpStatus { optimal, feasible, infeasible, unbounded };

const char* to_string(LpStatus s);

/// Multipliers proving infeasibility. `eq` is free, `ineq` and `upper` are
/// nonnegative; `upper` refers to the rows x_v <= upper_v of variables whose
/// bounds are both finite (zero elsewhere). See farkas_gap().
struct FarkasCertificate {
  std::vector<double> eq;
  std::vector<double> ineq;
  std::vector<double> upper;
};

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  std::optional<double> objective_value;
  std::optional<FarkasCertificate> certificate;
  std::size_t pivots = 0;
  bool exact = false;
};

struct LpOptions {
  /// Solve over exact rationals instead of doubles.
  bool exact = false;
  /// Re-solve exactly when the double solution fails primal verification.
  bool exact_fallback = true;
  std::size_t max_pivots = 2'000'000;
};

/// Two-phase dense tableau simplex with Bland's rule. Deterministic.
/// Throws ShapeMismatch on malformed programs and NumericalFailure when no
/// status can be certified.
LpOutcome solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Largest violation of any constraint or bound by `x`.
double max_violation(const LinearProgram& lp, std::span<const double> x);

/// Combines the certificate rows into g = y^T A and returns
/// min_{lower<=x<=upper} g*x - y*b (with the sign conventions of
/// FarkasCertificate). A positive value proves that no feasible x exists.
/// Returns -inf when the multipliers have the wrong sign or the box
/// minimum is unbounded.
double farkas_gap(const LinearProgram& lp, const FarkasCertificate& cert);

/// Minimum-Euclidean-norm point of {x >= 0, A x = b} by a primal active-set
/// method seeded from an LP vertex. Returns nullopt when the set is empty.
std::optional<std::vector<double>> min_norm_nonnegative(const std::vector<std::vector<double>>& a,
                                                        const std::vector<double>& b);

}  // namespace ctx
