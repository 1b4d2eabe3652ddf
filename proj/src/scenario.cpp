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

#include "ctx/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctx/error.hpp"

namespace ctx {

std::vector<double> EquivalenceVector::difference() const {
  std::vector<double> d(alpha.size());
  for (std::size_t x = 0; x < alpha.size(); ++x) d[x] = alpha[x] - beta[x];
  return d;
}

bool EquivalenceVector::nontrivial(double tol) const {
  if (alpha.size() != beta.size()) return true;
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    if (std::abs(alpha[x] - beta[x]) > tol) return true;
  }
  return false;
}

bool Scenario::is_active(std::size_t i, std::size_t j) const {
  return !std::binary_search(excluded.begin(), excluded.end(), Cell{i, j});
}

std::vector<char> Scenario::active_mask() const {
  std::vector<char> mask(n_meas * n_preps, 1);
  for (const Cell& c : excluded) {
    if (c.meas < n_meas && c.prep < n_preps) mask[c.meas * n_preps + c.prep] = 0;
  }
  return mask;
}

void Scenario::normalize_excluded() {
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
}

Behavior::Behavior(std::size_t n_meas, std::size_t n_preps, std::size_t n_outcomes, double fill)
    : n_meas_(n_meas), n_preps_(n_preps), n_outcomes_(n_outcomes),
      p_(n_meas * n_preps * n_outcomes, fill) {}

Behavior Behavior::uniform(const Scenario& s) {
  return Behavior(s.n_meas, s.n_preps, s.n_outcomes, 1.0 / static_cast<double>(s.n_outcomes));
}

Behavior Behavior::from_nested(const std::vector<std::vector<std::vector<double>>>& probs) {
  const std::size_t n_meas = probs.size();
  const std::size_t n_preps = n_meas ? probs[0].size() : 0;
  const std::size_t n_outcomes = n_preps ? probs[0][0].size() : 0;
  Behavior b(n_meas, n_preps, n_outcomes);
  for (std::size_t i = 0; i < n_meas; ++i) {
    if (probs[i].size() != n_preps) throw ShapeMismatch("ragged behavior tensor at measurement " + std::to_string(i));
    for (std::size_t j = 0; j < n_preps; ++j) {
      if (probs[i][j].size() != n_outcomes) {
        throw ShapeMismatch("ragged behavior tensor at cell (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      for (std::size_t k = 0; k < n_outcomes; ++k) b(i, j, k) = probs[i][j][k];
    }
  }
  return b;
}

std::vector<std::vector<std::vector<double>>> Behavior::to_nested() const {
  std::vector<std::vector<std::vector<double>>> out(n_meas_, std::vector<std::vector<double>>(n_preps_));
  for (std::size_t i = 0; i < n_meas_; ++i) {
    for (std::size_t j = 0; j < n_preps_; ++j) {
      auto first = p_.begin() + static_cast<std::ptrdiff_t>(index(i, j, 0));
      out[i][j].assign(first, first + static_cast<std::ptrdiff_t>(n_outcomes_));
    }
  }
  return out;
}

void Behavior::require_shape(const Scenario& s) const {
  if (!matches(s)) {
    throw ShapeMismatch("behavior is " + std::to_string(n_meas_) + "x" + std::to_string(n_preps_) + "x" +
                        std::to_string(n_outcomes_) + " but scenario expects " + std::to_string(s.n_meas) + "x" +
                        std::to_string(s.n_preps) + "x" + std::to_string(s.n_outcomes));
  }
}

Scenario make_simplest_scenario() { return make_si_family_scenario(2); }

Scenario make_si_family_scenario(std::size_t n_meas) {
  Scenario s;
  s.n_preps = 4;
  s.n_meas = n_meas;
  s.n_outcomes = 2;
  s.prep_equivs.push_back({{0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.5, 0.5}});
  return s;
}

namespace {

void check_equivalence(const EquivalenceVector& e, std::size_t expected_len, const std::string& where, double tol,
                       ValidationReport& report) {
  if (e.alpha.size() != expected_len || e.beta.size() != expected_len) {
    report.violations.push_back({"wrong-length",
                                 static_cast<double>(std::max(e.alpha.size(), e.beta.size())), where});
    return;
  }
  auto check_side = [&](const std::vector<double>& w, const char* side) {
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!std::isfinite(w[x]) || w[x] < -tol || w[x] > 1.0 + tol) {
        report.violations.push_back({std::string(side) + "-out-of-range", w[x], where + "[" + std::to_string(x) + "]"});
      }
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(std::abs(sum - 1.0) <= tol)) {
      report.violations.push_back({std::string(side) + "-not-normalized", sum - 1.0, where});
    }
  };
  check_side(e.alpha, "alpha");
  check_side(e.beta, "beta");
  if (!e.nontrivial(tol)) report.violations.push_back({"trivial-equivalence", 0.0, where});
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s, double tol) {
  ValidationReport report;
  if (s.n_preps == 0) report.violations.push_back({"zero-count", 0.0, "preps"});
  if (s.n_meas == 0) report.violations.push_back({"zero-count", 0.0, "meas"});
  if (s.n_outcomes == 0) report.violations.push_back({"zero-count", 0.0, "outcomes"});
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) {
    check_equivalence(s.prep_equivs[a], s.n_preps, "prep_equivs[" + std::to_string(a) + "]", tol, report);
  }
  for (std::size_t b = 0; b < s.meas_equivs.size(); ++b) {
    check_equivalence(s.meas_equivs[b], s.n_events(), "meas_equivs[" + std::to_string(b) + "]", tol, report);
  }
  for (std::size_t c = 0; c < s.excluded.size(); ++c) {
    const Cell& cell = s.excluded[c];
    if (cell.meas >= s.n_meas || cell.prep >= s.n_preps) {
      report.violations.push_back({"excluded-cell-out-of-range", 0.0, "excluded[" + std::to_string(c) + "]"});
    }
  }
  if (!std::is_sorted(s.excluded.begin(), s.excluded.end()) ||
      std::adjacent_find(s.excluded.begin(), s.excluded.end()) != s.excluded.end()) {
    report.violations.push_back({"excluded-not-canonical", 0.0, "excluded"});
  }
  return report;
}

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return "(i=" + std::to_string(i) + ",j=" + std::to_string(j) + ")";
}

}  // namespace

ValidationReport validate_behavior(const Scenario& s, const Behavior& b, double tol) {
  b.require_shape(s);
  ValidationReport report;
  const auto mask = s.active_mask();
  for (std::size_t i = 0; i < s.n_meas; ++i) {
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        const double p = b(i, j, k);
        if (!std::isfinite(p) || p < -tol || p > 1.0 + tol) {
          report.violations.push_back({"probability-out-of-range", p, cell_name(i, j) + ",k=" + std::to_string(k)});
        }
        sum += p;
      }
      if (!(std::abs(sum - 1.0) <= tol)) report.violations.push_back({"not-normalized", sum - 1.0, cell_name(i, j)});
    }
  }
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) {
    const auto d = s.prep_equivs[a].difference();
    if (d.size() != s.n_preps) throw ShapeMismatch("prep equivalence " + std::to_string(a) + " has wrong length");
    for (std::size_t i = 0; i < s.n_meas; ++i) {
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        double r = 0.0;
        for (std::size_t j = 0; j < s.n_preps; ++j) {
          if (mask[i * s.n_preps + j]) r += d[j] * b(i, j, k);
        }
        if (!(std::abs(r) <= tol)) {
          report.violations.push_back({"prep-equivalence-" + std::to_string(a), r,
                                       "(i=" + std::to_string(i) + ",k=" + std::to_string(k) + ")"});
        }
      }
    }
  }
  for (std::size_t e = 0; e < s.meas_equivs.size(); ++e) {
    const auto d = s.meas_equivs[e].difference();
    if (d.size() != s.n_events()) throw ShapeMismatch("meas equivalence " + std::to_string(e) + " has wrong length");
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      double r = 0.0;
      for (std::size_t i = 0; i < s.n_meas; ++i) {
        if (!mask[i * s.n_preps + j]) continue;
        for (std::size_t k = 0; k < s.n_outcomes; ++k) r += d[s.event_index(i, k)] * b(i, j, k);
      }
      if (!(std::abs(r) <= tol)) {
        report.violations.push_back({"meas-equivalence-" + std::to_string(e), r, "(j=" + std::to_string(j) + ")"});
      }
    }
  }
  return report;
}

double equivalence_residual(const Scenario& s, const Behavior& b) {
  b.require_shape(s);
  const auto mask = s.active_mask();
  double worst = 0.0;
  for (const auto& eq : s.prep_equivs) {
    const auto d = eq.difference();
    for (std::size_t i = 0; i < s.n_meas; ++i) {
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        double r = 0.0;
        for (std::size_t j = 0; j < s.n_preps; ++j) {
          if (mask[i * s.n_preps + j]) r += d[j] * b(i, j, k);
        }
        worst = std::max(worst, std::abs(r));
      }
    }
  }
  for (const auto& eq : s.meas_equivs) {
    const auto d = eq.difference();
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      double r = 0.0;
      for (std::size_t i = 0; i < s.n_meas; ++i) {
        if (!mask[i * s.n_preps + j]) continue;
        for (std::size_t k = 0; k < s.n_outcomes; ++k) r += d[s.event_index(i, k)] * b(i, j, k);
      }
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

}  // namespace ctx
