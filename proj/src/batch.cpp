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

#include "ctx/batch.hpp"

#include <exception>

#include "ctx/monotone.hpp"

namespace ctx {

namespace {

/// Runs body(idx) for idx in [0, n); rethrows the first exception by index.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body body) {
  if (exec == Execution::serial) {
    for (std::size_t x = 0; x < n; ++x) body(x);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long x = 0; x < static_cast<long>(n); ++x) {
    try {
      body(static_cast<std::size_t>(x));
    } catch (...) {
      errors[static_cast<std::size_t>(x)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<char> classify_batch(const Scenario& s, std::span<const Behavior> behaviors, Execution exec) {
  std::vector<char> out(behaviors.size(), 0);
  for_each_index(behaviors.size(), exec,
                 [&](std::size_t x) { out[x] = is_noncontextual(s, behaviors[x]).contextual ? 1 : 0; });
  return out;
}

std::vector<double> l1_distance_batch(const Scenario& s, std::span<const Behavior> behaviors, Execution exec) {
  std::vector<double> out(behaviors.size(), 0.0);
  for_each_index(behaviors.size(), exec, [&](std::size_t x) { out[x] = l1_distance(s, behaviors[x]); });
  return out;
}

std::vector<std::vector<double>> evaluate_batch(const InequalitySet& ineqs, std::span<const Behavior> behaviors,
                                                Execution exec) {
  std::vector<std::vector<double>> out(behaviors.size());
  for_each_index(behaviors.size(), exec, [&](std::size_t x) { out[x] = evaluate_inequalities(ineqs, behaviors[x]); });
  return out;
}

}  // namespace ctx
