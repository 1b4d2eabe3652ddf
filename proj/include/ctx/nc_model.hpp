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
#include <optional>
#include <string>
#include <vector>

#include "ctx/lp.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Deterministic response function: measurement i answers responses[i].
struct OnticState {
  std::vector<std::size_t> responses;
  auto operator<=>(const OnticState&) const = default;
};

/// Finite ontological model; mus[j][l] is the weight of ontic_states[l]
/// under preparation j.
struct NcModel {
  std::vector<OnticState> ontic_states;
  std::vector<std::vector<double>> mus;
};

/// Either a model (noncontextual) or evidence of contextuality.
struct NcVerdict {
  bool contextual = false;
  std::optional<NcModel> model;
  /// Index into simplest_scenario_inequalities() of the first violated
  /// nontrivial functional, reported for B_si only.
  std::optional<std::size_t> violated_inequality;
  double violation = 0.0;
  /// Farkas multipliers of the membership LP, when the solver produced them.
  std::optional<FarkasCertificate> certificate;

  /// "h7"-style label of the violated functional, or "lp-infeasible".
  std::string violated_label() const;
};

/// h(B) = coeffs . B - constant; the inequality is h(B) <= 0.
struct Functional {
  std::string label;
  Behavior coeffs;
  double constant = 0.0;
};

struct InequalitySet {
  std::vector<Functional> functionals;
  /// The first n_nontrivial functionals are the facets; the rest are bounds.
  std::size_t n_nontrivial = 0;
};

/// Equivalence-consistent deterministic response vectors, lexicographic with
/// responses[0] most significant.
std::vector<OnticState> enumerate_ontic_states(const Scenario& s, std::size_t cap = kDefaultEnumerationCap);

/// Feasibility LP over mu_j(lambda) >= 0 for `states`. Variable index j*|states| + l.
/// Reproduction rows are relaxed to |p - sum xi mu| <= tol on active cells.
LinearProgram nc_membership_lp(const Scenario& s, const Behavior& b, const std::vector<OnticState>& states,
                               double tol = kDefaultTolerance);

/// Behavior reproduced by a model; excluded cells carry 1/|K|.
Behavior behavior_from_model(const Scenario& s, const NcModel& model);

/// Checks every NcModel invariant, including reproduction of `b` within tol.
ValidationReport validate_model(const Scenario& s, const NcModel& model, const Behavior& b,
                                double tol = kDefaultTolerance);

NcVerdict is_noncontextual(const Scenario& s, const Behavior& b, double tol = kDefaultTolerance,
                           std::size_t cap = kDefaultEnumerationCap);

/// True when enumerate_behavior_vertices() supports `s`: no measurement
/// equivalences, and every preparation equivalence compares uniform mixtures
/// of two disjoint, equally sized sets of preparations, with supports
/// disjoint across equivalences and each support either fully active or
/// fully excluded for every measurement.
bool vertex_enumeration_supported(const Scenario& s, std::string* reason = nullptr);

/// All 0/1 behaviors satisfying the equivalences exactly; excluded cells
/// hold 1/|K|. Lexicographic in (i, j) outcome assignments, i most significant.
std::vector<Behavior> enumerate_behavior_vertices(const Scenario& s, std::size_t cap = kDefaultEnumerationCap);

/// |enumerate_behavior_vertices(s)| without materializing the list. The cap
/// applies to per-measurement assignment counts only.
double count_behavior_vertices(const Scenario& s, std::size_t cap = kDefaultEnumerationCap);

/// h_1..h_8 followed by the 16 bounds -p_ij <= 0 and p_ij - 1 <= 0, where
/// p_ij = p(1|M_i,P_j) with 1-based labels.
InequalitySet simplest_scenario_inequalities();

std::vector<double> evaluate_inequalities(const InequalitySet& ineqs, const Behavior& b);

}  // namespace ctx
