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

#include "ctx/nc_model.hpp"

namespace ctx {

/// Absolute precision with which l1 distances are compared.
inline constexpr double kMonotoneTolerance = 1e-7;

struct L1Projection {
  double distance = 0.0;
  /// A closest noncontextual behavior and the model that produces it.
  Behavior nearest;
  NcModel model;
};

/// min over B* in NC(s) of max over active (i,j) of sum_k |p - p*|, solved as
/// one LP in (mu, e, t) minimizing t.
L1Projection l1_projection(const Scenario& s, const Behavior& b, std::size_t cap = kDefaultEnumerationCap);

double l1_distance(const Scenario& s, const Behavior& b, std::size_t cap = kDefaultEnumerationCap);

}  // namespace ctx
