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

#include <optional>
#include <vector>

#include "ctx/free_ops.hpp"

namespace ctx {

/// q_M[i][it] = q_M(i | it); q_O[i][it][kt][k] = post-processing of N_i's
/// outcome k into M_it's outcome kt.
struct SimulationWitness {
  Matrix q_M;
  std::vector<std::vector<Matrix>> q_O;
  /// max |sum q_O p q_M - p_target| over all entries.
  double residual = 0.0;
  /// True when every simulating measurement with positive weight uses the
  /// same post-processing for each target it contributes to.
  bool target_independent = false;
  /// True when the witness came from matching target rows verbatim.
  bool verbatim = false;
};

struct SimulationResult {
  bool feasible = false;
  std::optional<SimulationWitness> witness;
  /// Targets for which no simulation exists.
  std::vector<std::size_t> infeasible_targets;
};

/// Decides whether every measurement of `target` is a classical processing of
/// the measurements of `simulating` on the shared preparations.
SimulationResult find_simulation(const Behavior& simulating, const Behavior& target);

/// Max reproduction error of `w` on the given pair of behaviors.
double simulation_residual(const SimulationWitness& w, const Behavior& simulating, const Behavior& target);

/// Single free operation (q_P = identity) realizing a target-independent
/// witness. Simulating measurements that no target uses get the identity
/// post-processing when outcome counts agree, uniform otherwise. Throws
/// InvalidArgument if the residual exceeds lp_tol or the witness depends on
/// the target.
FreeOperation simulation_to_free_operation(const SimulationWitness& w, std::size_t n_preps);

/// Two free operations, applied in order, for any witness: the first copies
/// N_i once per target, the second post-processes each copy and mixes.
std::vector<FreeOperation> simulation_to_free_operations(const SimulationWitness& w, std::size_t n_preps);

}  // namespace ctx
