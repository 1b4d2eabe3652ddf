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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ctx/scenario.hpp"

namespace ctx {

/// Dense row-major matrix; m[row][col].
using Matrix = std::vector<std::vector<double>>;

Matrix identity_matrix(std::size_t n);

/// Stochastic pre- and post-processings (q_O per old measurement, q_M, q_P).
/// Every matrix is column-stochastic:
///   q_P[j][jt]    = q_P(j | jt),   |J| x |J~|
///   q_M[i][it]    = q_M(i | it),   |I| x |I~|
///   q_O[i][kt][k] = q_O^i(kt | k), |K~| x |K|
struct FreeOperation {
  Matrix q_P;
  Matrix q_M;
  std::vector<Matrix> q_O;

  std::size_t old_preps() const { return q_P.size(); }
  std::size_t new_preps() const { return q_P.empty() ? 0 : q_P.front().size(); }
  std::size_t old_meas() const { return q_M.size(); }
  std::size_t new_meas() const { return q_M.empty() ? 0 : q_M.front().size(); }
  std::size_t old_outcomes() const { return q_O.empty() || q_O.front().empty() ? 0 : q_O.front().front().size(); }
  std::size_t new_outcomes() const { return q_O.empty() ? 0 : q_O.front().size(); }

  static FreeOperation identity(const Scenario& s);
  bool operator==(const FreeOperation&) const = default;
};

ValidationReport validate_free_operation(const FreeOperation& t, double tol = kDefaultTolerance);
/// Throws ShapeMismatch if `t` cannot act on `s`.
void require_compatible(const FreeOperation& t, const Scenario& s);

enum class TransportStatus { transported, not_representable };
const char* to_string(TransportStatus s);

struct TransportedEquivalence {
  /// Index into the old scenario's prep (or meas) equivalence list.
  std::size_t source = 0;
  TransportStatus status = TransportStatus::not_representable;
  EquivalenceVector vector;
};

struct TransportReport {
  std::vector<TransportedEquivalence> prep;
  std::vector<TransportedEquivalence> meas;
};

/// Pulls every old equivalence back through the operation: finds convex
/// (a~, b~) with q_P a~ = alpha, q_P b~ = beta (events: through q_M and q_O
/// jointly), taking the minimum-l2 pair. Partial permutations use the closed
/// form. A pair is transported when both sides exist and differ.
TransportReport transport_equivalences(const FreeOperation& t, const Scenario& s);

/// The scenario T(s): new counts, transported equivalences, and cells
/// excluded when they draw on any excluded old cell.
Scenario transform_scenario(const FreeOperation& t, const Scenario& s);

struct Transformed {
  Scenario scenario;
  Behavior behavior;
};

Transformed apply_free_operation(const FreeOperation& t, const Scenario& s, const Behavior& b);

/// The measurement selector keeping `keep` (in the given order).
FreeOperation erasure_operation(const Scenario& s, const std::vector<std::size_t>& keep);
Transformed erase_measurements(const Scenario& s, const Behavior& b, const std::vector<std::size_t>& keep);

/// Generators of the B_si symmetry group, in tie-break order.
enum class Generator { alpha, beta, gamma, delta };
const char* to_string(Generator g);
inline constexpr std::array<Generator, 4> kGenerators = {Generator::alpha, Generator::beta, Generator::gamma,
                                                         Generator::delta};

/// alpha: P1<->P2, beta: P3<->P4, gamma: M1<->M2, delta: (P1,P2)<->(P3,P4).
FreeOperation simplest_permutation(Generator g);
std::array<FreeOperation, 4> simplest_permutations();

/// Shortest generator word taking contextual vertex v to contextual vertex w
/// (indices into enumerate_behavior_vertices(B_si)). Throws InvalidArgument if
/// either vertex is noncontextual.
std::vector<Generator> contextual_vertex_path(std::size_t v, std::size_t w);

/// Apply a generator word to a B_si behavior, left to right.
Behavior apply_word(const std::vector<Generator>& word, const Behavior& b);

struct SecondaryResult {
  /// q_P = mixing weights w(j | j~); identities elsewhere.
  FreeOperation operation;
  Behavior behavior;
  /// max over (i, j~) of the total-variation change of the statistics.
  double objective = 0.0;
};

/// Secondary preparations: columns of q_P mix the primary preparations so
/// that the induced behavior satisfies every preparation equivalence of `s`
/// exactly, minimizing the largest total-variation change; among optimal
/// mixings the most diagonal one is taken. When `b` already validates
/// within `tol`, returns the identity.
SecondaryResult secondary_procedures(const Scenario& s, const Behavior& b, double tol = kDefaultTolerance);

}  // namespace ctx
