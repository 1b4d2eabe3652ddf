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

#include "ctx/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "ctx/error.hpp"

namespace ctx {

Fraction rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize a non-finite value");
  if (max_den < 1) throw InvalidArgument("max_den must be positive");
  const bool negative = x < 0.0;
  double r = std::abs(x);
  const double whole = std::floor(r);
  if (whole > 9.0e18) throw InvalidArgument("value too large to rationalize");

  // Convergents h/k of the continued fraction of |x|.
  std::int64_t h_prev = 1, k_prev = 0;
  std::int64_t h = static_cast<std::int64_t>(whole), k = 1;
  double frac = r - whole;
  while (frac > 1e-300) {
    const double inv = 1.0 / frac;
    const double a_d = std::floor(inv);
    frac = inv - a_d;
    if (a_d > 9.0e18) break;
    const auto a = static_cast<std::int64_t>(a_d);
    if (k_prev + a > max_den || (k != 0 && a > (max_den - k_prev) / k)) {
      // Best semiconvergent within the denominator bound.
      const std::int64_t t = (max_den - k_prev) / k;
      const std::int64_t hs = h_prev + t * h;
      const std::int64_t ks = k_prev + t * k;
      if (t > 0 && std::abs(r - static_cast<double>(hs) / ks) < std::abs(r - static_cast<double>(h) / k)) {
        h = hs;
        k = ks;
      }
      break;
    }
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    if (std::abs(r - static_cast<double>(h) / k) == 0.0) break;
  }
  return {negative ? -h : h, k};
}

std::vector<std::int64_t> common_denominator_numerators(const std::vector<double>& xs, std::int64_t max_den) {
  std::vector<Fraction> fr;
  fr.reserve(xs.size());
  __int128 lcm = 1;
  for (double x : xs) {
    fr.push_back(rationalize(x, max_den));
    const std::int64_t d = fr.back().den;
    const auto g = std::gcd(static_cast<std::int64_t>(lcm), d);
    lcm = lcm / g * d;
    if (lcm > INT64_MAX) throw InvalidArgument("common denominator of equivalence weights overflows");
  }
  std::vector<std::int64_t> out;
  out.reserve(fr.size());
  for (const auto& f : fr) {
    const __int128 v = static_cast<__int128>(f.num) * (lcm / f.den);
    if (v > INT64_MAX || v < INT64_MIN) throw InvalidArgument("scaled equivalence weight overflows");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

}  // namespace ctx
