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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ctx/error.hpp"
#include "ctx/lp.hpp"

namespace ctx {

std::optional<std::vector<double>> min_norm_nonnegative(const std::vector<std::vector<double>>& a,
                                                        const std::vector<double>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw ShapeMismatch("min_norm_nonnegative: rhs length differs from row count");
  const std::size_t n = m == 0 ? 0 : a.front().size();
  for (const auto& row : a) {
    if (row.size() != n) throw ShapeMismatch("min_norm_nonnegative: ragged matrix");
  }
  if (m == 0) return std::vector<double>{};

  LinearProgram lp(n);
  for (std::size_t r = 0; r < m; ++r) lp.add_eq(a[r], b[r]);
  const LpOutcome start = solve_lp(lp);
  if (start.status == LpStatus::infeasible) return std::nullopt;

  Eigen::MatrixXd A(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) A(r, c) = a[r][c];
  Eigen::VectorXd bb = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(m));
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(start.x.data(), static_cast<Eigen::Index>(n));

  constexpr double kZero = 1e-13;
  std::vector<char> fixed(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    if (x[c] <= kZero) {
      fixed[c] = 1;
      x[c] = 0.0;
    }
  }

  const std::size_t max_iter = 20 * n + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::vector<Eigen::Index> free_idx;
    for (std::size_t c = 0; c < n; ++c)
      if (!fixed[c]) free_idx.push_back(static_cast<Eigen::Index>(c));
    Eigen::MatrixXd Af(m, free_idx.size());
    for (std::size_t f = 0; f < free_idx.size(); ++f) Af.col(f) = A.col(free_idx[f]);

    // Minimum-norm solution with the working set pinned to zero.
    Eigen::VectorXd target = Eigen::VectorXd::Zero(n);
    if (!free_idx.empty()) {
      const Eigen::VectorXd y = Af.completeOrthogonalDecomposition().solve(bb);
      for (std::size_t f = 0; f < free_idx.size(); ++f) target[free_idx[f]] = y[f];
    }

    bool interior = true;
    for (auto f : free_idx) interior = interior && target[f] >= -kZero;
    if (interior) {
      x = target;
      for (auto f : free_idx) x[f] = std::max(0.0, x[f]);
      // Multipliers of the pinned coordinates: mu_W = -A_W^T nu with A_F^T nu = x_F.
      Eigen::VectorXd nu = Eigen::VectorXd::Zero(m);
      if (!free_idx.empty()) {
        Eigen::VectorXd xf(free_idx.size());
        for (std::size_t f = 0; f < free_idx.size(); ++f) xf[f] = x[free_idx[f]];
        nu = Af.transpose().completeOrthogonalDecomposition().solve(xf);
      }
      std::size_t release = n;
      double most_negative = -1e-11;
      for (std::size_t c = 0; c < n; ++c) {
        if (!fixed[c]) continue;
        const double mu = -A.col(static_cast<Eigen::Index>(c)).dot(nu);
        if (mu < most_negative) {
          most_negative = mu;
          release = c;
        }
      }
      if (release == n) break;
      fixed[release] = 0;
      continue;
    }

    // Step toward the target until the first free coordinate reaches zero.
    double step = 1.0;
    std::size_t block = n;
    for (auto f : free_idx) {
      const double d = target[f] - x[f];
      if (d < 0.0) {
        const double t = x[f] / -d;
        if (t < step) {
          step = t;
          block = static_cast<std::size_t>(f);
        }
      }
    }
    x += step * (target - x);
    if (block < n) {
      fixed[block] = 1;
      x[block] = 0.0;
    }
  }

  std::vector<double> out(n);
  for (std::size_t c = 0; c < n; ++c) out[c] = std::max(0.0, x[static_cast<Eigen::Index>(c)]);
  return out;
}

}  // namespace ctx
