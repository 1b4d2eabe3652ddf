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

#include "ctx/nc_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctx/error.hpp"
#include "ctx/rational.hpp"

namespace ctx {

std::string NcVerdict::violated_label() const {
  if (violated_inequality) return "h" + std::to_string(*violated_inequality + 1);
  return "lp-infeasible";
}

namespace {

/// Integer alpha - beta on a common denominator of both weight vectors.
std::vector<std::int64_t> integer_difference(const EquivalenceVector& e) {
  std::vector<double> both = e.alpha;
  both.insert(both.end(), e.beta.begin(), e.beta.end());
  const std::vector<std::int64_t> nums = common_denominator_numerators(both);
  const std::size_t n = e.alpha.size();
  std::vector<std::int64_t> diff(n);
  for (std::size_t x = 0; x < n; ++x) diff[x] = nums[x] - nums[n + x];
  return diff;
}

double power_count(std::size_t base, std::size_t exponent) {
  return std::pow(static_cast<double>(base), static_cast<double>(exponent));
}

}  // namespace

std::vector<OnticState> enumerate_ontic_states(const Scenario& s, std::size_t cap) {
  const double total = power_count(s.n_outcomes, s.n_meas);
  if (total > static_cast<double>(cap)) throw CapExceeded("ontic state enumeration", total, static_cast<double>(cap));
  std::vector<std::vector<std::int64_t>> diffs;
  for (const auto& e : s.meas_equivs) {
    if (e.size() != s.n_events()) throw ShapeMismatch("measurement equivalence length differs from |I||K|");
    diffs.push_back(integer_difference(e));
  }
  const auto n_states = static_cast<std::size_t>(total);
  std::vector<OnticState> out;
  out.reserve(n_states);
  std::vector<std::size_t> r(s.n_meas, 0);
  for (std::size_t idx = 0; idx < n_states; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = s.n_meas; i-- > 0;) {
      r[i] = rest % s.n_outcomes;
      rest /= s.n_outcomes;
    }
    bool ok = true;
    for (const auto& d : diffs) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < s.n_meas; ++i) acc += d[s.event_index(i, r[i])];
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back({r});
  }
  return out;
}

LinearProgram nc_membership_lp(const Scenario& s, const Behavior& b, const std::vector<OnticState>& states,
                               double tol) {
  b.require_shape(s);
  const std::size_t L = states.size();
  const std::size_t J = s.n_preps;
  LinearProgram lp(J * L);
  auto var = [L](std::size_t j, std::size_t l) { return j * L + l; };

  for (std::size_t j = 0; j < J; ++j) {
    std::vector<double> row(J * L, 0.0);
    for (std::size_t l = 0; l < L; ++l) row[var(j, l)] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }
  for (const auto& e : s.prep_equivs) {
    const std::vector<double> d = e.difference();
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<double> row(J * L, 0.0);
      for (std::size_t j = 0; j < J; ++j) row[var(j, l)] = d[j];
      lp.add_eq(std::move(row), 0.0);
    }
  }
  const std::vector<char> active = s.active_mask();
  for (std::size_t i = 0; i < s.n_meas; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      if (!active[i * J + j]) continue;
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        std::vector<double> row(J * L, 0.0);
        for (std::size_t l = 0; l < L; ++l) {
          if (states[l].responses[i] == k) row[var(j, l)] = 1.0;
        }
        const double p = b(i, j, k);
        if (tol > 0.0) {
          lp.add_le(row, p + tol);
          lp.add_ge(std::move(row), p - tol);
        } else {
          lp.add_eq(std::move(row), p);
        }
      }
    }
  }
  return lp;
}

Behavior behavior_from_model(const Scenario& s, const NcModel& model) {
  if (model.mus.size() != s.n_preps) throw ShapeMismatch("model has a distribution per preparation");
  Behavior out = Behavior::uniform(s);
  const std::vector<char> active = s.active_mask();
  for (std::size_t i = 0; i < s.n_meas; ++i) {
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (!active[i * s.n_preps + j]) continue;
      if (model.mus[j].size() != model.ontic_states.size()) throw ShapeMismatch("mu length differs from |Lambda|");
      for (std::size_t k = 0; k < s.n_outcomes; ++k) out(i, j, k) = 0.0;
      for (std::size_t l = 0; l < model.ontic_states.size(); ++l) {
        out(i, j, model.ontic_states[l].responses[i]) += model.mus[j][l];
      }
    }
  }
  return out;
}

ValidationReport validate_model(const Scenario& s, const NcModel& model, const Behavior& b, double tol) {
  ValidationReport rep;
  const std::size_t L = model.ontic_states.size();
  if (model.mus.size() != s.n_preps) throw ShapeMismatch("model has a distribution per preparation");
  for (std::size_t l = 0; l < L; ++l) {
    const auto& r = model.ontic_states[l].responses;
    if (r.size() != s.n_meas) throw ShapeMismatch("ontic state length differs from |I|");
    for (std::size_t i = 0; i < s.n_meas; ++i) {
      if (r[i] >= s.n_outcomes) rep.violations.push_back({"response-out-of-range", 0.0, "(l=" + std::to_string(l) + ")"});
    }
    for (std::size_t e = 0; e < s.meas_equivs.size(); ++e) {
      const std::vector<double> d = s.meas_equivs[e].difference();
      double acc = 0.0;
      for (std::size_t i = 0; i < s.n_meas; ++i) acc += d[s.event_index(i, r[i])];
      if (std::abs(acc) > tol) rep.violations.push_back({"meas-equivalence-" + std::to_string(e), std::abs(acc),
                                                         "(l=" + std::to_string(l) + ")"});
    }
  }
  for (std::size_t j = 0; j < s.n_preps; ++j) {
    if (model.mus[j].size() != L) throw ShapeMismatch("mu length differs from |Lambda|");
    double sum = 0.0;
    for (double m : model.mus[j]) {
      if (m < -tol) rep.violations.push_back({"mu-negative", -m, "(j=" + std::to_string(j) + ")"});
      sum += m;
    }
    if (std::abs(sum - 1.0) > tol) rep.violations.push_back({"mu-not-normalized", std::abs(sum - 1.0),
                                                            "(j=" + std::to_string(j) + ")"});
  }
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) {
    const std::vector<double> d = s.prep_equivs[a].difference();
    for (std::size_t l = 0; l < L; ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s.n_preps; ++j) acc += d[j] * model.mus[j][l];
      if (std::abs(acc) > tol) rep.violations.push_back({"prep-equivalence-" + std::to_string(a), std::abs(acc),
                                                         "(l=" + std::to_string(l) + ")"});
    }
  }
  const Behavior rebuilt = behavior_from_model(s, model);
  const std::vector<char> active = s.active_mask();
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (!active[i * s.n_preps + j]) continue;
      for (std::size_t k = 0; k < s.n_outcomes; ++k) {
        const double err = std::abs(rebuilt(i, j, k) - b(i, j, k));
        if (err > tol) {
          rep.violations.push_back({"reproduction", err, "(i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                                                             ",k=" + std::to_string(k) + ")"});
        }
      }
    }
  return rep;
}

NcVerdict is_noncontextual(const Scenario& s, const Behavior& b, double tol, std::size_t cap) {
  b.require_shape(s);
  std::vector<OnticState> states = enumerate_ontic_states(s, cap);
  const LinearProgram lp = nc_membership_lp(s, b, states, tol);
  const LpOutcome out = solve_lp(lp);
  NcVerdict v;
  if (out.status == LpStatus::feasible || out.status == LpStatus::optimal) {
    NcModel m;
    const std::size_t L = states.size();
    m.mus.assign(s.n_preps, std::vector<double>(L, 0.0));
    for (std::size_t j = 0; j < s.n_preps; ++j)
      for (std::size_t l = 0; l < L; ++l) m.mus[j][l] = std::max(0.0, out.x[j * L + l]);
    m.ontic_states = std::move(states);
    v.contextual = false;
    v.model = std::move(m);
    return v;
  }
  v.contextual = true;
  v.certificate = out.certificate;
  if (s == make_simplest_scenario()) {
    const InequalitySet h = simplest_scenario_inequalities();
    const std::vector<double> vals = evaluate_inequalities(h, b);
    for (std::size_t f = 0; f < h.n_nontrivial; ++f) {
      if (vals[f] > tol) {
        v.violated_inequality = f;
        v.violation = vals[f];
        break;
      }
    }
  }
  return v;
}

bool vertex_enumeration_supported(const Scenario& s, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (!s.meas_equivs.empty()) return fail("measurement equivalences present");
  std::vector<char> used(s.n_preps, 0);
  const std::vector<char> active = s.active_mask();
  for (std::size_t a = 0; a < s.prep_equivs.size(); ++a) {
    const auto& e = s.prep_equivs[a];
    std::vector<std::size_t> sa, sb;
    for (std::size_t j = 0; j < s.n_preps; ++j) {
      if (e.alpha[j] > 0.0) sa.push_back(j);
      if (e.beta[j] > 0.0) sb.push_back(j);
    }
    const std::string tag = "equivalence " + std::to_string(a);
    if (sa.size() != sb.size() || sa.empty()) return fail(tag + " compares supports of different sizes");
    for (std::size_t j : sa) {
      if (std::abs(e.alpha[j] - e.alpha[sa[0]]) > 0.0) return fail(tag + " has non-uniform alpha");
      if (e.beta[j] > 0.0) return fail(tag + " has overlapping supports");
    }
    for (std::size_t j : sb) {
      if (std::abs(e.beta[j] - e.beta[sb[0]]) > 0.0) return fail(tag + " has non-uniform beta");
    }
    std::vector<std::size_t> support = sa;
    support.insert(support.end(), sb.begin(), sb.end());
    for (std::size_t j : support) {
      if (used[j]) return fail(tag + " shares preparations with another equivalence");
      used[j] = 1;
    }
    for (std::size_t i = 0; i < s.n_meas; ++i) {
      std::size_t on = 0;
      for (std::size_t j : support) on += active[i * s.n_preps + j] ? 1 : 0;
      if (on != 0 && on != support.size()) return fail(tag + " is partially excluded for a measurement");
    }
  }
  return true;
}

namespace {

/// Outcome assignments (over active preparations) allowed for one measurement.
std::vector<std::vector<std::size_t>> measurement_candidates(const Scenario& s,
                                                             const std::vector<std::size_t>& preps,
                                                             const std::vector<std::vector<std::int64_t>>& diffs,
                                                             std::size_t cap) {
  const double total = power_count(s.n_outcomes, preps.size());
  if (total > static_cast<double>(cap)) {
    throw CapExceeded("per-measurement assignment count", total, static_cast<double>(cap));
  }
  std::vector<std::size_t> pos(s.n_preps, static_cast<std::size_t>(-1));
  for (std::size_t t = 0; t < preps.size(); ++t) pos[preps[t]] = t;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> o(preps.size(), 0);
  const auto n = static_cast<std::size_t>(total);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t t = preps.size(); t-- > 0;) {
      o[t] = rest % s.n_outcomes;
      rest /= s.n_outcomes;
    }
    bool ok = true;
    for (const auto& d : diffs) {
      for (std::size_t k = 0; k < s.n_outcomes && ok; ++k) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < s.n_preps; ++j) {
          if (d[j] != 0 && pos[j] != static_cast<std::size_t>(-1) && o[pos[j]] == k) acc += d[j];
        }
        ok = acc == 0;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(o);
  }
  return out;
}

std::vector<std::vector<std::size_t>> active_preps(const Scenario& s) {
  const std::vector<char> active = s.active_mask();
  std::vector<std::vector<std::size_t>> out(s.n_meas);
  for (std::size_t i = 0; i < s.n_meas; ++i)
    for (std::size_t j = 0; j < s.n_preps; ++j)
      if (active[i * s.n_preps + j]) out[i].push_back(j);
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> all_candidates(const Scenario& s, std::size_t cap) {
  std::string why;
  if (!vertex_enumeration_supported(s, &why)) throw UnsupportedScenario(why);
  std::vector<std::vector<std::int64_t>> diffs;
  for (const auto& e : s.prep_equivs) diffs.push_back(integer_difference(e));
  const auto preps = active_preps(s);
  std::vector<std::vector<std::vector<std::size_t>>> cand(s.n_meas);
  for (std::size_t i = 0; i < s.n_meas; ++i) cand[i] = measurement_candidates(s, preps[i], diffs, cap);
  return cand;
}

}  // namespace

double count_behavior_vertices(const Scenario& s, std::size_t cap) {
  const auto cand = all_candidates(s, cap);
  double total = 1.0;
  for (const auto& c : cand) total *= static_cast<double>(c.size());
  return total;
}

std::vector<Behavior> enumerate_behavior_vertices(const Scenario& s, std::size_t cap) {
  const auto cand = all_candidates(s, cap);
  double total = 1.0;
  for (const auto& c : cand) total *= static_cast<double>(c.size());
  if (total > static_cast<double>(cap)) throw CapExceeded("behavior vertex count", total, static_cast<double>(cap));
  const auto preps = active_preps(s);
  const auto n = static_cast<std::size_t>(total);
  std::vector<Behavior> out;
  out.reserve(n);
  if (n == 0) return out;
  std::vector<std::size_t> pick(s.n_meas, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = s.n_meas; i-- > 0;) {
      pick[i] = rest % cand[i].size();
      rest /= cand[i].size();
    }
    Behavior b = Behavior::uniform(s);
    for (std::size_t i = 0; i < s.n_meas; ++i) {
      const auto& o = cand[i][pick[i]];
      for (std::size_t t = 0; t < preps[i].size(); ++t) {
        const std::size_t j = preps[i][t];
        for (std::size_t k = 0; k < s.n_outcomes; ++k) b(i, j, k) = (o[t] == k) ? 1.0 : 0.0;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

InequalitySet simplest_scenario_inequalities() {
  struct Term {
    int i, j;  // 1-based labels of p_ij
    double c;
  };
  const std::vector<std::vector<Term>> facets = {
      {{1, 2, 1}, {2, 2, 1}, {1, 4, -1}, {2, 3, -1}},
      {{1, 2, 1}, {2, 2, 1}, {1, 3, -1}, {2, 4, -1}},
      {{2, 2, 1}, {1, 3, 1}, {1, 2, -1}, {2, 4, -1}},
      {{1, 2, 1}, {2, 3, 1}, {2, 2, -1}, {1, 4, -1}},
      {{2, 2, 1}, {1, 4, 1}, {1, 2, -1}, {2, 3, -1}},
      {{2, 3, 1}, {1, 4, 1}, {1, 2, -1}, {2, 2, -1}},
      {{1, 2, 1}, {2, 4, 1}, {2, 2, -1}, {1, 3, -1}},
      {{1, 3, 1}, {2, 4, 1}, {2, 2, -1}, {1, 2, -1}},
  };
  InequalitySet set;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    Behavior c(2, 4, 2, 0.0);
    for (const Term& t : facets[f]) c(t.i - 1, t.j - 1, 1) = t.c;
    set.functionals.push_back({"h" + std::to_string(f + 1), std::move(c), 1.0});
  }
  set.n_nontrivial = set.functionals.size();
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const std::string p = "p" + std::to_string(i) + std::to_string(j);
      Behavior lo(2, 4, 2, 0.0);
      lo(i - 1, j - 1, 1) = -1.0;
      set.functionals.push_back({p + ">=0", std::move(lo), 0.0});
      Behavior hi(2, 4, 2, 0.0);
      hi(i - 1, j - 1, 1) = 1.0;
      set.functionals.push_back({p + "<=1", std::move(hi), 1.0});
    }
  }
  return set;
}

std::vector<double> evaluate_inequalities(const InequalitySet& ineqs, const Behavior& b) {
  std::vector<double> out;
  out.reserve(ineqs.functionals.size());
  for (const auto& f : ineqs.functionals) {
    const auto c = f.coeffs.data();
    const auto p = b.data();
    if (f.coeffs.n_meas() != b.n_meas() || f.coeffs.n_preps() != b.n_preps() ||
        f.coeffs.n_outcomes() != b.n_outcomes()) {
      throw ShapeMismatch("functional " + f.label + " does not match the behavior shape");
    }
    double acc = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) acc += c[x] * p[x];
    out.push_back(acc - f.constant);
  }
  return out;
}

}  // namespace ctx
