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

#include "ctx/sampling.hpp"

#include <algorithm>
#include <string>

#include "ctx/error.hpp"
#include "ctx/nc_model.hpp"

namespace ctx {

std::vector<double> random_simplex_point(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& v : x) {
    v = exp1(rng);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

Behavior random_behavior(const Scenario& s, Rng& rng) {
  std::string why;
  if (!vertex_enumeration_supported(s, &why)) throw UnsupportedScenario(why);
  const std::size_t J = s.n_preps, K = s.n_outcomes;
  const std::vector<char> active = s.active_mask();
  Behavior b = Behavior::uniform(s);
  std::vector<char> in_equiv(J, 0);
  for (const auto& e : s.prep_equivs)
    for (std::size_t j = 0; j < J; ++j)
      if (e.alpha[j] > 0.0 || e.beta[j] > 0.0) in_equiv[j] = 1;

  for (std::size_t i = 0; i < s.n_meas; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      if (!active[i * J + j] || in_equiv[j]) continue;
      const std::vector<double> x = random_simplex_point(K, rng);
      for (std::size_t k = 0; k < K; ++k) b(i, j, k) = x[k];
    }
    for (const auto& e : s.prep_equivs) {
      std::size_t last = J;
      for (std::size_t j = 0; j < J; ++j)
        if (e.beta[j] > 0.0) last = j;
      if (!active[i * J + last]) continue;
      for (std::size_t attempt = 0;; ++attempt) {
        if (attempt > 1'000'000) throw NumericalFailure("rejection sampling did not terminate");
        for (std::size_t j = 0; j < J; ++j) {
          if (j == last || (e.alpha[j] == 0.0 && e.beta[j] == 0.0)) continue;
          const std::vector<double> x = random_simplex_point(K, rng);
          for (std::size_t k = 0; k < K; ++k) b(i, j, k) = x[k];
        }
        bool ok = true;
        for (std::size_t k = 0; k < K; ++k) {
          double acc = 0.0;
          for (std::size_t j = 0; j < J; ++j)
            if (j != last) acc += (e.alpha[j] - e.beta[j]) * b(i, j, k);
          const double v = acc / e.beta[last];
          ok = ok && v >= 0.0 && v <= 1.0;
          b(i, last, k) = v;
        }
        if (ok) break;
      }
    }
  }
  return b;
}

Behavior random_mixture(const std::vector<Behavior>& points, Rng& rng) {
  if (points.empty()) throw InvalidArgument("random_mixture needs at least one point");
  const std::vector<double> w = random_simplex_point(points.size(), rng);
  Behavior out = points.front();
  auto dst = out.data();
  std::fill(dst.begin(), dst.end(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto src = points[p].data();
    if (src.size() != dst.size()) throw ShapeMismatch("mixture points differ in shape");
    for (std::size_t x = 0; x < dst.size(); ++x) dst[x] += w[p] * src[x];
  }
  return out;
}

Matrix random_stochastic(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, std::vector<double>(cols, 0.0));
  for (std::size_t c = 0; c < cols; ++c) {
    const std::vector<double> x = random_simplex_point(rows, rng);
    for (std::size_t r = 0; r < rows; ++r) m[r][c] = x[r];
  }
  return m;
}

FreeOperation random_free_operation(const Scenario& s, std::size_t new_preps, std::size_t new_meas,
                                    std::size_t new_outcomes, Rng& rng) {
  FreeOperation t;
  t.q_P = random_stochastic(s.n_preps, new_preps, rng);
  t.q_M = random_stochastic(s.n_meas, new_meas, rng);
  for (std::size_t i = 0; i < s.n_meas; ++i) t.q_O.push_back(random_stochastic(new_outcomes, s.n_outcomes, rng));
  return t;
}

Behavior perturb_behavior(const Scenario& s, const Behavior& b, double amplitude, Rng& rng) {
  b.require_shape(s);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  const std::vector<char> active = s.active_mask();
  Behavior out = b;
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (!active[i * s.n_preps + j]) continue;
      double rest = 1.0;
      for (std::size_t k = 1; k < s.n_outcomes; ++k) {
        out(i, j, k) = std::clamp(b(i, j, k) + noise(rng), 0.0, rest);
        rest -= out(i, j, k);
      }
      out(i, j, 0) = rest;
    }
  return out;
}

}  // namespace ctx
