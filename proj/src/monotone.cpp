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

#include "ctx/monotone.hpp"

#include <algorithm>

#include "ctx/error.hpp"

namespace ctx {

L1Projection l1_projection(const Scenario& s, const Behavior& b, std::size_t cap) {
  b.require_shape(s);
  std::vector<OnticState> states = enumerate_ontic_states(s, cap);
  const std::size_t L = states.size();
  const std::size_t J = s.n_preps;
  const std::size_t K = s.n_outcomes;
  const std::vector<char> active = s.active_mask();

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < J; ++j)
      if (active[i * J + j]) cells.push_back({i, j});

  // Layout: mu (J*L) | e (cells*K) | t.
  const std::size_t n_mu = J * L;
  const std::size_t n_e = cells.size() * K;
  const std::size_t t_var = n_mu + n_e;
  const std::size_t n = t_var + 1;
  LinearProgram lp(n);
  auto mu = [L](std::size_t j, std::size_t l) { return j * L + l; };

  for (std::size_t j = 0; j < J; ++j) {
    std::vector<double> row(n, 0.0);
    for (std::size_t l = 0; l < L; ++l) row[mu(j, l)] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }
  for (const auto& e : s.prep_equivs) {
    const std::vector<double> d = e.difference();
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<double> row(n, 0.0);
      for (std::size_t j = 0; j < J; ++j) row[mu(j, l)] = d[j];
      lp.add_eq(std::move(row), 0.0);
    }
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [i, j] = cells[c];
    std::vector<double> sum_row(n, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t ev = n_mu + c * K + k;
      std::vector<double> model_row(n, 0.0);
      for (std::size_t l = 0; l < L; ++l)
        if (states[l].responses[i] == k) model_row[mu(j, l)] = 1.0;
      // e >= model - p
      std::vector<double> up = model_row;
      up[ev] = -1.0;
      lp.add_le(std::move(up), b(i, j, k));
      // e >= p - model
      std::vector<double> down(n, 0.0);
      for (std::size_t v = 0; v < n_mu; ++v) down[v] = -model_row[v];
      down[ev] = -1.0;
      lp.add_le(std::move(down), -b(i, j, k));
      sum_row[ev] = 1.0;
    }
    sum_row[t_var] = -1.0;
    lp.add_le(std::move(sum_row), 0.0);
  }
  std::vector<double> c(n, 0.0);
  c[t_var] = 1.0;
  lp.minimize(std::move(c));

  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::optimal) {
    throw NumericalFailure(std::string("l1 distance LP returned ") + to_string(out.status));
  }
  L1Projection res;
  res.model.mus.assign(J, std::vector<double>(L, 0.0));
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t l = 0; l < L; ++l) res.model.mus[j][l] = std::max(0.0, out.x[mu(j, l)]);
  res.model.ontic_states = std::move(states);
  res.nearest = behavior_from_model(s, res.model);
  res.distance = std::max(0.0, *out.objective_value);
  return res;
}

double l1_distance(const Scenario& s, const Behavior& b, std::size_t cap) { return l1_projection(s, b, cap).distance; }

}  // namespace ctx
