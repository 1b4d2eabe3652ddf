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
#include <vector>

namespace ctx {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Closest fraction to `x` with denominator at most `max_den` (continued-fraction
/// convergents plus the best semiconvergent). den > 0 always.
Fraction rationalize(double x, std::int64_t max_den = 1'000'000);

/// Rationalizes every entry and rescales to a common denominator; returns the
/// integer numerators. Throws InvalidArgument if the common denominator or a
/// numerator leaves the int64 range.
std::vector<std::int64_t> common_denominator_numerators(const std::vector<double>& xs,
                                                        std::int64_t max_den = 1'000'000);

}  // namespace ctx
