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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctx/free_ops.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

/// Operator-level tolerance for Hermiticity, positivity, trace and completeness.
inline constexpr double kQuantumTolerance = 1e-10;

/// Density matrices rho^j and POVMs {E_k^i}_k on C^dim.
struct QuantumRealization {
  std::size_t dim = 2;
  std::vector<Eigen::MatrixXcd> states;
  std::vector<std::vector<Eigen::MatrixXcd>> povms;
};

ValidationReport validate_realization(const QuantumRealization& q);

/// p(k|M_i,P_j) = Re Tr(E_k^i rho^j). Throws InvalidArgument for an invalid realization.
Behavior behavior_from_quantum(const QuantumRealization& q);

/// Checks sum_j (alpha-beta)_j rho^j = 0 and sum_(i,k) (alpha-beta)_(i,k) E_k^i = 0
/// in Frobenius norm for every equivalence of `s`.
ValidationReport verify_quantum_equivalences(const QuantumRealization& q, const Scenario& s);

/// Two-outcome POVM (E_0, E_1) = ((1 + A)/2, (1 - A)/2) of a +-1 observable A.
std::vector<Eigen::MatrixXcd> povm_from_observable(const Eigen::MatrixXcd& a);

/// States |0>,|1>,|+>,|-> and the observables (sigma_X +- sigma_Z)/sqrt(2).
QuantumRealization canonical_simplest_realization();

/// Every preparation is 1/2; measurements as in the canonical realization.
QuantumRealization maximally_mixed_realization(std::size_t n_preps);

/// Relabels states and measurements of a B_si realization by a generator.
QuantumRealization apply_generator(Generator g, const QuantumRealization& q);

struct FacetWitness {
  /// "b<block>.h<i>", both 1-based.
  std::string facet_id;
  std::size_t block = 0;
  std::size_t facet = 0;
  std::vector<Generator> word;
  Behavior behavior;
  double violation = 0.0;
};

inline constexpr std::size_t kWitnessBlockCap = 4;

/// For each of the 8n nontrivial facets of B_si^⊞n, a quantum behavior
/// violating it: the target block carries the canonical realization relabeled
/// along the generator word from the h7 vertex to the facet's vertex; other
/// blocks are maximally mixed.
std::vector<FacetWitness> witness_all_facets(std::size_t n, std::size_t cap = kWitnessBlockCap);

}  // namespace ctx
