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

#include <cstddef>
#include <string>
#include <vector>

#include "ctx/free_ops.hpp"
#include "ctx/nc_model.hpp"

namespace ctx {

/// s1 ⊞ s2: preparations, measurements stacked block-diagonally; equivalences
/// zero-padded into their block; |K| = max(|K1|, |K2|); every cell pairing a
/// measurement of one block with a preparation of the other is excluded.
Scenario compose_scenarios(const Scenario& s1, const Scenario& s2);

/// B1 ⊞ B2 on the layout of compose_scenarios. Hybrid cells hold 1/|K|;
/// outcomes beyond a block's own |K| hold 0.
Behavior compose_behaviors(const Behavior& b1, const Behavior& b2);

/// n-fold left-associated composition; n >= 1.
Scenario power_scenario(const Scenario& s, std::size_t n);
Behavior power_behavior(const Behavior& b, std::size_t n);

/// Offsets of one block inside a composite.
struct BlockLayout {
  std::size_t prep_offset = 0;
  std::size_t n_preps = 0;
  std::size_t meas_offset = 0;
  std::size_t n_meas = 0;
};

/// Blocks of power_scenario(s, n).
std::vector<BlockLayout> power_layout(const Scenario& s, std::size_t n);

/// The block's own sub-behavior (outcomes truncated to `n_outcomes`).
Behavior extract_block(const Behavior& b, const BlockLayout& block, std::size_t n_outcomes);

struct ProductCountsReport {
  double vertices_lhs = 0.0;  // enumerated on s1 ⊞ s2
  double vertices_rhs = 0.0;  // |V(s1)| * |V(s2)|
  std::string facets_note;
  bool ok() const { return vertices_lhs == vertices_rhs; }
};

ProductCountsReport product_counts_check(const Scenario& s1, const Scenario& s2,
                                         std::size_t cap = kDefaultEnumerationCap);

/// Relabels measurement i as merge_map[i]. Measurements sharing a label are
/// fused: a fused cell is active when some member is active there, and all
/// active members must agree. Measurement equivalences are summed per label.
Scenario identify_measurements(const Scenario& s, const std::vector<std::size_t>& merge_map);
Transformed identify_measurements(const Scenario& s, const Behavior& b, const std::vector<std::size_t>& merge_map);

/// How B_qc arises from B_6^⊞3.
struct Decomposition {
  std::vector<BlockLayout> blocks;  // in the unmerged composite
  std::vector<std::string> prep_labels;
  std::vector<std::string> meas_labels;
  /// Composite preparation index -> B_qc preparation index.
  std::vector<std::size_t> prep_map;
  /// Composite measurement index -> B_qc measurement index (the merge map).
  std::vector<std::size_t> meas_map;
  /// Composite equivalence index -> B_qc equivalence index.
  std::vector<std::size_t> equivalence_map;
};

struct CloningScenario {
  Scenario scenario;   // B_qc
  Scenario composite;  // B_6^⊞3 before identification
  Decomposition decomposition;
};

CloningScenario cloning_scenario();

/// True when identifying the composite's measurements through the
/// decomposition reproduces the scenario exactly.
bool verify_decomposition(const CloningScenario& c);

/// B_qc behavior assembled from one B_6 behavior per block.
Behavior cloning_behavior(const CloningScenario& c, const std::vector<Behavior>& blocks);

}  // namespace ctx
