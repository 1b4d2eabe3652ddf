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

#include <span>
#include <vector>

#include "ctx/nc_model.hpp"

namespace ctx {

/// Batch kernels over independent behaviors. `parallel` spreads items over
/// OpenMP threads; `serial` is the reference loop. Results are identical and
/// in input order for both.
enum class Execution { serial, parallel };

/// 1 where the behavior is contextual.
std::vector<char> classify_batch(const Scenario& s, std::span<const Behavior> behaviors,
                                 Execution exec = Execution::parallel);

std::vector<double> l1_distance_batch(const Scenario& s, std::span<const Behavior> behaviors,
                                      Execution exec = Execution::parallel);

/// values[b][f] = evaluate_inequalities(ineqs, behaviors[b])[f].
std::vector<std::vector<double>> evaluate_batch(const InequalitySet& ineqs, std::span<const Behavior> behaviors,
                                                Execution exec = Execution::parallel);

}  // namespace ctx
