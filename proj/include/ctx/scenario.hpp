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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ctx {

/// Absolute tolerance for equality checks on probabilities.
inline constexpr double kDefaultTolerance = 1e-9;

/// One operational equivalence: sum_x alpha_x X ~ sum_x beta_x X, where X ranges
/// over preparations or over measurement events [k|M_i] in (i,k) row-major order.
struct EquivalenceVector {
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t size() const { return alpha.size(); }
  /// alpha - beta, the row that every constrained quantity must annihilate.
  std::vector<double> difference() const;
  bool nontrivial(double tol = kDefaultTolerance) const;

  bool operator==(const EquivalenceVector&) const = default;
};

/// A (measurement, preparation) pair of the behavior table.
struct Cell {
  std::size_t meas = 0;
  std::size_t prep = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Prepare-and-measure scenario (|J|, |I|, |K|, E_P, E_M).
///
/// `excluded` lists cells that carry no data: the hybrid cells of a composite
/// scenario, where a preparation of one block meets a measurement of another.
/// Equivalence rows, noncontextual-model reproduction and the l1 distance all
/// skip those cells. The list is kept sorted and duplicate-free.
struct Scenario {
  std::size_t n_preps = 0;
  std::size_t n_meas = 0;
  std::size_t n_outcomes = 0;
  std::vector<EquivalenceVector> prep_equivs;
  std::vector<EquivalenceVector> meas_equivs;
  std::vector<Cell> excluded;

  std::size_t n_events() const { return n_meas * n_outcomes; }
  std::size_t event_index(std::size_t i, std::size_t k) const { return i * n_outcomes + k; }
  bool is_active(std::size_t i, std::size_t j) const;
  /// Row-major [i][j] flags, true for cells that are part of the behavior.
  std::vector<char> active_mask() const;
  std::size_t active_cell_count() const { return n_meas * n_preps - excluded.size(); }
  /// Sorts and deduplicates `excluded`.
  void normalize_excluded();

  bool operator==(const Scenario&) const = default;
};

/// Dense table p(k|M_i,P_j) indexed [i][j][k].
class Behavior {
 public:
  Behavior() = default;
  Behavior(std::size_t n_meas, std::size_t n_preps, std::size_t n_outcomes, double fill = 0.0);

  /// p = 1/|K| everywhere.
  static Behavior uniform(const Scenario& s);
  static Behavior from_nested(const std::vector<std::vector<std::vector<double>>>& probs);

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return p_[index(i, j, k)]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return p_[index(i, j, k)]; }

  std::size_t n_meas() const { return n_meas_; }
  std::size_t n_preps() const { return n_preps_; }
  std::size_t n_outcomes() const { return n_outcomes_; }
  std::span<const double> data() const { return p_; }
  std::span<double> data() { return p_; }
  std::vector<std::vector<std::vector<double>>> to_nested() const;

  bool matches(const Scenario& s) const {
    return n_meas_ == s.n_meas && n_preps_ == s.n_preps && n_outcomes_ == s.n_outcomes;
  }
  /// Throws ShapeMismatch when the tensor does not fit `s`.
  void require_shape(const Scenario& s) const;

  bool operator==(const Behavior&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n_preps_ + j) * n_outcomes_ + k;
  }

  std::size_t n_meas_ = 0;
  std::size_t n_preps_ = 0;
  std::size_t n_outcomes_ = 0;
  std::vector<double> p_;
};

struct Violation {
  std::string constraint;
  double magnitude = 0.0;
  std::string location;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// B_si: four preparations, two dichotomic measurements, 1/2 P1 + 1/2 P2 ~ 1/2 P3 + 1/2 P4.
Scenario make_simplest_scenario();
/// (4, n_meas, 2, E_P,si, {}); n_meas = 6 gives B_6.
Scenario make_si_family_scenario(std::size_t n_meas);

ValidationReport validate_scenario(const Scenario& s, double tol = kDefaultTolerance);
ValidationReport validate_behavior(const Scenario& s, const Behavior& b, double tol = kDefaultTolerance);

/// Max over the prep/meas equivalence rows of |sum (alpha - beta) p| on active cells.
double equivalence_residual(const Scenario& s, const Behavior& b);

}  // namespace ctx
