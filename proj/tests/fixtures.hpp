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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ctx/nc_model.hpp"
#include "ctx/quantum.hpp"
#include "ctx/sampling.hpp"
#include "ctx/scenario.hpp"

namespace ctx::testing {

inline const double kSin2 = std::pow(std::sin(M_PI / 8.0), 2);
inline const double kCos2 = std::pow(std::cos(M_PI / 8.0), 2);

/// B_si behavior from the eight tabulated values p(1|M_i,P_j), M1 row first.
inline Behavior si_behavior(const std::vector<double>& p1) {
  Behavior b(2, 4, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      b(i, j, 1) = p1[i * 4 + j];
      b(i, j, 0) = 1.0 - p1[i * 4 + j];
    }
  return b;
}

/// The qubit table written out from trigonometric values, independent of
/// the quantum module.
inline Behavior table_behavior() {
  return si_behavior({kSin2, kCos2, kSin2, kCos2, kCos2, kSin2, kSin2, kCos2});
}

/// p_ij with 1-based labels on a B_si behavior.
inline double p(const Behavior& b, int i, int j) { return b(i - 1, j - 1, 1); }

/// The eight facet functionals written directly from their displayed form.
inline std::vector<double> facet_values(const Behavior& b) {
  auto q = [&](int i, int j) { return p(b, i, j); };
  return {
      q(1, 2) + q(2, 2) - q(1, 4) - q(2, 3) - 1, q(1, 2) + q(2, 2) - q(1, 3) - q(2, 4) - 1,
      q(2, 2) + q(1, 3) - q(1, 2) - q(2, 4) - 1, q(1, 2) + q(2, 3) - q(2, 2) - q(1, 4) - 1,
      q(2, 2) + q(1, 4) - q(1, 2) - q(2, 3) - 1, q(2, 3) + q(1, 4) - q(1, 2) - q(2, 2) - 1,
      q(1, 2) + q(2, 4) - q(2, 2) - q(1, 3) - 1, q(1, 3) + q(2, 4) - q(2, 2) - q(1, 2) - 1,
  };
}

/// Independent membership oracle for B_si: all facets and bounds hold.
inline bool in_nc_polytope(const Behavior& b, double tol) {
  for (double v : facet_values(b))
    if (v > tol) return false;
  return true;
}

/// l1 distance of the qubit table, computed offline with an independent LP
/// solver on the facet description.
inline constexpr double kTableDistance = 0.20710678118654746;

/// Noncontextual behavior of a B_si-family scenario from a random model:
/// mu_3 and mu_4 are complementary mixtures of mu_1 and mu_2, so the
/// equivalence holds per ontic state.
inline Behavior random_nc_behavior(const Scenario& s, Rng& rng) {
  NcModel m;
  m.ontic_states = enumerate_ontic_states(s);
  const std::size_t n = m.ontic_states.size();
  const std::vector<double> mu1 = random_simplex_point(n, rng), mu2 = random_simplex_point(n, rng);
  const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::vector<double> mu3(n), mu4(n);
  for (std::size_t l = 0; l < n; ++l) {
    mu3[l] = t * mu1[l] + (1 - t) * mu2[l];
    mu4[l] = (1 - t) * mu1[l] + t * mu2[l];
  }
  m.mus = {mu1, mu2, mu3, mu4};
  return behavior_from_model(s, m);
}

/// Canonical states and measurements followed by extra projective qubit
/// measurements along random Bloch directions.
inline QuantumRealization extended_realization(std::size_t n_extra, Rng& rng) {
  QuantumRealization q = canonical_simplest_realization();
  std::normal_distribution<double> n01;
  for (std::size_t e = 0; e < n_extra; ++e) {
    double x = n01(rng), y = n01(rng), z = n01(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    x /= r, y /= r, z /= r;
    Eigen::MatrixXcd a(2, 2);
    a << std::complex<double>(z, 0), std::complex<double>(x, -y), std::complex<double>(x, y),
        std::complex<double>(-z, 0);
    q.povms.push_back(povm_from_observable(a));
  }
  return q;
}

}  // namespace ctx::testing
