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

#include <cstdint>
#include <random>
#include <vector>

#include "ctx/free_ops.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

using Rng = std::mt19937_64;

/// Uniform point of the probability simplex of dimension n.
std::vector<double> random_simplex_point(std::size_t n, Rng& rng);

/// Random valid behavior: free cells are uniform on their outcome simplex and
/// one preparation per equivalence is solved for; draws that leave [0,1] are
/// rejected. Supports the scenarios of vertex_enumeration_supported().
Behavior random_behavior(const Scenario& s, Rng& rng);

/// Random convex combination (Dirichlet(1) weights) of the given behaviors.
Behavior random_mixture(const std::vector<Behavior>& points, Rng& rng);

/// Random column-stochastic matrix with the given shape.
Matrix random_stochastic(std::size_t rows, std::size_t cols, Rng& rng);

/// Random free operation acting on `s` with new counts (J~, I~, K~).
FreeOperation random_free_operation(const Scenario& s, std::size_t new_preps, std::size_t new_meas,
                                    std::size_t new_outcomes, Rng& rng);

/// Adds i.i.d. uniform noise in [-amplitude, amplitude] to every outcome but
/// the first of each active cell, clamps, and sets the first outcome to the
/// remainder so each cell stays normalized.
Behavior perturb_behavior(const Scenario& s, const Behavior& b, double amplitude, Rng& rng);

}  // namespace ctx
