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

#include "ctx/simulability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctx/error.hpp"
#include "ctx/lp.hpp"

namespace ctx {

namespace {

constexpr double kVerbatimTolerance = 1e-12;

Matrix uniform_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<double>(cols, 1.0 / static_cast<double>(rows)));
}

Matrix identity_or_uniform(std::size_t kt, std::size_t k) {
  return kt == k ? identity_matrix(k) : uniform_matrix(kt, k);
}

bool rows_match(const Behavior& n, std::size_t i, const Behavior& m, std::size_t it) {
  for (std::size_t j = 0; j < n.n_preps(); ++j)
    for (std::size_t k = 0; k < n.n_outcomes(); ++k)
      if (std::abs(n(i, j, k) - m(it, j, k)) > kVerbatimTolerance) return false;
  return true;
}

struct TargetSolution {
  bool feasible = false;
  std::vector<double> mass;        // m(i)
  std::vector<Matrix> processing;  // [i][kt][k]
};

TargetSolution solve_target(const Behavior& n, const Behavior& m, std::size_t it) {
  const std::size_t I = n.n_meas(), J = n.n_preps(), K = n.n_outcomes(), Kt = m.n_outcomes();
  // Layout: s(i,kt,k) at (i*Kt + kt)*K + k | m(i) at I*Kt*K + i.
  const std::size_t n_s = I * Kt * K;
  const std::size_t n_vars = n_s + I;
  auto sv = [Kt, K](std::size_t i, std::size_t kt, std::size_t k) { return (i * Kt + kt) * K + k; };
  LinearProgram lp(n_vars);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> row(n_vars, 0.0);
      for (std::size_t kt = 0; kt < Kt; ++kt) row[sv(i, kt, k)] = 1.0;
      row[n_s + i] = -1.0;
      lp.add_eq(std::move(row), 0.0);
    }
  {
    std::vector<double> row(n_vars, 0.0);
    for (std::size_t i = 0; i < I; ++i) row[n_s + i] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t kt = 0; kt < Kt; ++kt) {
      std::vector<double> row(n_vars, 0.0);
      for (std::size_t i = 0; i < I; ++i)
        for (std::size_t k = 0; k < K; ++k) row[sv(i, kt, k)] = n(i, j, k);
      lp.add_eq(std::move(row), m(it, j, kt));
    }
  const LpOutcome out = solve_lp(lp);
  TargetSolution sol;
  if (out.status != LpStatus::feasible) return sol;
  sol.feasible = true;
  sol.mass.resize(I);
  sol.processing.resize(I);
  for (std::size_t i = 0; i < I; ++i) {
    const double mi = std::max(0.0, out.x[n_s + i]);
    sol.mass[i] = mi;
    if (mi <= kLpTolerance) {
      sol.processing[i] = uniform_matrix(Kt, K);
      continue;
    }
    Matrix q(Kt, std::vector<double>(K, 0.0));
    for (std::size_t k = 0; k < K; ++k) {
      double col = 0.0;
      for (std::size_t kt = 0; kt < Kt; ++kt) {
        q[kt][k] = std::max(0.0, out.x[sv(i, kt, k)]) / mi;
        col += q[kt][k];
      }
      for (std::size_t kt = 0; kt < Kt; ++kt) q[kt][k] /= col;
    }
    sol.processing[i] = std::move(q);
  }
  double total = 0.0;
  for (double mi : sol.mass) total += mi;
  for (double& mi : sol.mass) mi /= total;
  return sol;
}

bool matrices_close(const Matrix& a, const Matrix& b, double tol) {
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[r].size(); ++c)
      if (std::abs(a[r][c] - b[r][c]) > tol) return false;
  return true;
}

bool is_target_independent(const SimulationWitness& w) {
  const std::size_t I = w.q_M.size();
  const std::size_t It = I == 0 ? 0 : w.q_M.front().size();
  for (std::size_t i = 0; i < I; ++i) {
    const Matrix* first = nullptr;
    for (std::size_t it = 0; it < It; ++it) {
      if (w.q_M[i][it] <= kLpTolerance) continue;
      if (!first) {
        first = &w.q_O[i][it];
      } else if (!matrices_close(*first, w.q_O[i][it], kLpTolerance)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

double simulation_residual(const SimulationWitness& w, const Behavior& n, const Behavior& m) {
  double worst = 0.0;
  for (std::size_t it = 0; it < m.n_meas(); ++it)
    for (std::size_t j = 0; j < m.n_preps(); ++j)
      for (std::size_t kt = 0; kt < m.n_outcomes(); ++kt) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n.n_meas(); ++i) {
          if (w.q_M[i][it] == 0.0) continue;
          double inner = 0.0;
          for (std::size_t k = 0; k < n.n_outcomes(); ++k) inner += w.q_O[i][it][kt][k] * n(i, j, k);
          acc += w.q_M[i][it] * inner;
        }
        worst = std::max(worst, std::abs(acc - m(it, j, kt)));
      }
  return worst;
}

SimulationResult find_simulation(const Behavior& n, const Behavior& m) {
  if (n.n_preps() != m.n_preps()) {
    throw ShapeMismatch("simulating and target behaviors use " + std::to_string(n.n_preps()) + " and " +
                        std::to_string(m.n_preps()) + " preparations");
  }
  if (n.n_meas() == 0 || m.n_meas() == 0) throw ShapeMismatch("behaviors need at least one measurement");
  const std::size_t I = n.n_meas(), It = m.n_meas(), K = n.n_outcomes(), Kt = m.n_outcomes();
  SimulationResult res;
  SimulationWitness w;
  w.q_M.assign(I, std::vector<double>(It, 0.0));
  w.q_O.assign(I, std::vector<Matrix>(It, uniform_matrix(Kt, K)));

  // Verbatim rows give the delta witness with identity post-processing.
  if (K == Kt) {
    std::vector<std::size_t> match(It, I);
    for (std::size_t it = 0; it < It; ++it)
      for (std::size_t i = 0; i < I && match[it] == I; ++i)
        if (rows_match(n, i, m, it)) match[it] = i;
    if (std::all_of(match.begin(), match.end(), [I](std::size_t x) { return x < I; })) {
      for (std::size_t it = 0; it < It; ++it) {
        w.q_M[match[it]][it] = 1.0;
        w.q_O[match[it]][it] = identity_matrix(K);
      }
      w.verbatim = true;
      w.residual = simulation_residual(w, n, m);
      w.target_independent = is_target_independent(w);
      res.feasible = true;
      res.witness = std::move(w);
      return res;
    }
  }

  std::vector<TargetSolution> sols(It);
  std::vector<std::string> errors(It);
#pragma omp parallel for schedule(dynamic)
  for (long it = 0; it < static_cast<long>(It); ++it) {
    try {
      sols[static_cast<std::size_t>(it)] = solve_target(n, m, static_cast<std::size_t>(it));
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(it)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NumericalFailure("simulation LP: " + e);
  for (std::size_t it = 0; it < It; ++it) {
    if (!sols[it].feasible) {
      res.infeasible_targets.push_back(it);
      continue;
    }
    for (std::size_t i = 0; i < I; ++i) {
      w.q_M[i][it] = sols[it].mass[i];
      w.q_O[i][it] = sols[it].processing[i];
    }
  }
  if (!res.infeasible_targets.empty()) return res;
  w.residual = simulation_residual(w, n, m);
  w.target_independent = is_target_independent(w);
  res.feasible = true;
  res.witness = std::move(w);
  return res;
}

FreeOperation simulation_to_free_operation(const SimulationWitness& w, std::size_t n_preps) {
  if (w.residual > kLpTolerance) {
    throw InvalidArgument("simulation witness residual " + std::to_string(w.residual) + " exceeds lp_tol");
  }
  if (!is_target_independent(w)) {
    throw InvalidArgument("witness post-processing depends on the target; use simulation_to_free_operations");
  }
  const std::size_t I = w.q_M.size();
  const std::size_t It = w.q_M.front().size();
  const std::size_t Kt = w.q_O[0][0].size();
  const std::size_t K = w.q_O[0][0].front().size();
  FreeOperation t;
  t.q_P = identity_matrix(n_preps);
  t.q_M = w.q_M;
  t.q_O.resize(I);
  for (std::size_t i = 0; i < I; ++i) {
    t.q_O[i] = identity_or_uniform(Kt, K);
    for (std::size_t it = 0; it < It; ++it) {
      if (w.q_M[i][it] > kLpTolerance) {
        t.q_O[i] = w.q_O[i][it];
        break;
      }
    }
  }
  return t;
}

std::vector<FreeOperation> simulation_to_free_operations(const SimulationWitness& w, std::size_t n_preps) {
  if (w.residual > kLpTolerance) {
    throw InvalidArgument("simulation witness residual " + std::to_string(w.residual) + " exceeds lp_tol");
  }
  const std::size_t I = w.q_M.size();
  const std::size_t It = w.q_M.front().size();
  const std::size_t K = w.q_O[0][0].front().size();
  // Copy (i, it) reads N_i unchanged.
  FreeOperation copy;
  copy.q_P = identity_matrix(n_preps);
  copy.q_M.assign(I, std::vector<double>(I * It, 0.0));
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t it = 0; it < It; ++it) copy.q_M[i][i * It + it] = 1.0;
  copy.q_O.assign(I, identity_matrix(K));
  FreeOperation mix;
  mix.q_P = identity_matrix(n_preps);
  mix.q_M.assign(I * It, std::vector<double>(It, 0.0));
  mix.q_O.resize(I * It);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t it = 0; it < It; ++it) {
      mix.q_M[i * It + it][it] = w.q_M[i][it];
      mix.q_O[i * It + it] = w.q_O[i][it];
    }
  return {std::move(copy), std::move(mix)};
}

}  // namespace ctx
