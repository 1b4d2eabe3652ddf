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

#include "ctx/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "ctx/error.hpp"

namespace ctx {

using boost::multiprecision::mpq_rational;

void LinearProgram::add_ge(std::vector<double> row, double rhs) {
  for (double& c : row) c = -c;
  ineq.push_back({std::move(row), -rhs});
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::feasible: return "feasible";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
  static constexpr double kPivot = 1e-9;
  static constexpr double kCost = 1e-10;
  static constexpr double kFeas = 1e-9;
  static double from(double v) { return v; }
  static double to(double v) { return v; }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct Num<mpq_rational> {
  static inline const mpq_rational kPivot{0};
  static inline const mpq_rational kCost{0};
  static inline const mpq_rational kFeas{0};
  static mpq_rational from(double v) { return mpq_rational(v); }
  static double to(const mpq_rational& v) { return v.convert_to<double>(); }
  static bool is_zero(const mpq_rational& v) { return v.is_zero(); }
};

enum class VarKind { shifted_lower, reflected_upper, split_free };

struct VarMap {
  VarKind kind;
  std::size_t col;
  double shift;
};

enum class RowOrigin { eq, ineq, upper };

/// Dense two-phase tableau simplex over scalar T with Bland's rule.
template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::size_t max_pivots) : lp_(lp), max_pivots_(max_pivots) { build(); }

  LpOutcome solve() {
    LpOutcome out;
    out.exact = !std::is_same_v<T, double>;

    // Phase one: minimize the sum of artificials.
    std::vector<T> cost1(n_cols_, T(0));
    for (std::size_t c = first_art_; c < n_cols_; ++c) cost1[c] = T(1);
    load_objective(cost1);
    if (run(/*allow_artificial=*/true) != RunResult::optimal) {
      throw NumericalFailure("phase one reported unbounded");
    }
    const T phase_one = -obj_rhs();
    T scale(1);
    for (std::size_t r = 0; r < m_; ++r) scale = std::max(scale, abs_(rhs0_[r]));
    if (phase_one > Num<T>::kFeas * scale) {
      out.status = LpStatus::infeasible;
      out.certificate = certificate();
      out.pivots = pivots_;
      return out;
    }
    drive_out_artificials();

    if (!lp_.objective) {
      out.status = LpStatus::feasible;
      out.x = extract();
      out.pivots = pivots_;
      return out;
    }

    std::vector<T> cost2(n_cols_, T(0));
    T offset(0);
    const auto& c = *lp_.objective;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const T cv = Num<T>::from(c[v]);
      switch (vars_[v].kind) {
        case VarKind::shifted_lower:
          cost2[vars_[v].col] = cv;
          offset += cv * Num<T>::from(vars_[v].shift);
          break;
        case VarKind::reflected_upper:
          cost2[vars_[v].col] = -cv;
          offset += cv * Num<T>::from(vars_[v].shift);
          break;
        case VarKind::split_free:
          cost2[vars_[v].col] = cv;
          cost2[vars_[v].col + 1] = -cv;
          break;
      }
    }
    load_objective(cost2);
    const RunResult r2 = run(/*allow_artificial=*/false);
    out.pivots = pivots_;
    if (r2 == RunResult::unbounded) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.x = extract();
    out.objective_value = Num<T>::to(-obj_rhs() + offset);
    return out;
  }

 private:
  enum class RunResult { optimal, unbounded };

  static T abs_(const T& v) { return v < T(0) ? T(-v) : v; }

  T& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
  const T& at(std::size_t r, std::size_t c) const { return tab_[r * width_ + c]; }
  T& obj(std::size_t c) { return tab_[m_ * width_ + c]; }
  T& obj_rhs() { return tab_[m_ * width_ + n_cols_]; }
  T& rhs(std::size_t r) { return tab_[r * width_ + n_cols_]; }

  void build() {
    const std::size_t n = lp_.n_vars;
    const auto check_row = [&](const LpRow& row, const char* what) {
      if (row.coeffs.size() != n) {
        throw ShapeMismatch(std::string(what) + " row has " + std::to_string(row.coeffs.size()) +
                            " coefficients, expected " + std::to_string(n));
      }
    };
    for (const auto& row : lp_.eq) check_row(row, "equality");
    for (const auto& row : lp_.ineq) check_row(row, "inequality");
    if (lp_.objective && lp_.objective->size() != n) throw ShapeMismatch("objective length differs from n_vars");
    if (lp_.lower.size() != n || lp_.upper.size() != n) throw ShapeMismatch("bound vectors must have n_vars entries");

    std::size_t col = 0;
    vars_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      const double l = lp_.lower[v];
      const double u = lp_.upper[v];
      if (std::isnan(l) || std::isnan(u)) throw ShapeMismatch("NaN bound on variable " + std::to_string(v));
      if (std::isfinite(l)) {
        vars_[v] = {VarKind::shifted_lower, col++, l};
      } else if (std::isfinite(u)) {
        vars_[v] = {VarKind::reflected_upper, col++, u};
      } else {
        vars_[v] = {VarKind::split_free, col, 0.0};
        col += 2;
      }
    }
    n_struct_ = col;

    // General rows in original orientation: coefficients over the original variables.
    struct GeneralRow {
      RowOrigin origin;
      std::size_t index;
      const std::vector<double>* coeffs;
      std::size_t unit_var;  // for upper-bound rows
      double rhs;
      bool le;
    };
    std::vector<GeneralRow> rows;
    for (std::size_t r = 0; r < lp_.eq.size(); ++r) rows.push_back({RowOrigin::eq, r, &lp_.eq[r].coeffs, 0, lp_.eq[r].rhs, false});
    for (std::size_t r = 0; r < lp_.ineq.size(); ++r) rows.push_back({RowOrigin::ineq, r, &lp_.ineq[r].coeffs, 0, lp_.ineq[r].rhs, true});
    for (std::size_t v = 0; v < n; ++v) {
      if (std::isfinite(lp_.lower[v]) && std::isfinite(lp_.upper[v])) {
        rows.push_back({RowOrigin::upper, v, nullptr, v, lp_.upper[v], true});
      }
    }
    m_ = rows.size();

    std::size_t n_slack = 0;
    for (const auto& g : rows) n_slack += g.le ? 1 : 0;
    first_slack_ = n_struct_;

    // Standard-form rows before sign normalization.
    std::vector<std::vector<T>> a(m_, std::vector<T>(n_struct_ + n_slack, T(0)));
    std::vector<T> b(m_, T(0));
    std::size_t slack = first_slack_;
    slack_of_row_.assign(m_, npos);
    for (std::size_t r = 0; r < m_; ++r) {
      const GeneralRow& g = rows[r];
      T rhs_r = Num<T>::from(g.rhs);
      auto add_coeff = [&](std::size_t v, double coef) {
        if (coef == 0.0) return;
        const T cv = Num<T>::from(coef);
        const VarMap& vm = vars_[v];
        switch (vm.kind) {
          case VarKind::shifted_lower:
            a[r][vm.col] += cv;
            rhs_r -= cv * Num<T>::from(vm.shift);
            break;
          case VarKind::reflected_upper:
            a[r][vm.col] -= cv;
            rhs_r -= cv * Num<T>::from(vm.shift);
            break;
          case VarKind::split_free:
            a[r][vm.col] += cv;
            a[r][vm.col + 1] -= cv;
            break;
        }
      };
      if (g.coeffs) {
        for (std::size_t v = 0; v < n; ++v) add_coeff(v, (*g.coeffs)[v]);
      } else {
        add_coeff(g.unit_var, 1.0);
      }
      if (g.le) {
        a[r][slack] = T(1);
        slack_of_row_[r] = slack++;
      }
      b[r] = rhs_r;
    }

    sign_.assign(m_, 1);
    std::vector<char> needs_art(m_, 0);
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (b[r] < T(0)) {
        sign_[r] = -1;
        for (auto& e : a[r]) e = -e;
        b[r] = -b[r];
      }
      if (!(rows[r].le && sign_[r] == 1)) {
        needs_art[r] = 1;
        ++n_art;
      }
    }
    first_art_ = n_struct_ + n_slack;
    n_cols_ = first_art_ + n_art;
    width_ = n_cols_ + 1;
    tab_.assign((m_ + 1) * width_, T(0));
    basis_.assign(m_, npos);
    init_col_.assign(m_, npos);
    rhs0_ = b;
    std::size_t art = first_art_;
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < a[r].size(); ++c) at(r, c) = a[r][c];
      rhs(r) = b[r];
      if (needs_art[r]) {
        at(r, art) = T(1);
        basis_[r] = art;
        init_col_[r] = art;
        ++art;
      } else {
        basis_[r] = slack_of_row_[r];
        init_col_[r] = slack_of_row_[r];
      }
    }
    origins_.reserve(m_);
    for (const auto& g : rows) origins_.push_back({g.origin, g.index});
  }

  void load_objective(const std::vector<T>& cost) {
    cost_ = cost;
    for (std::size_t c = 0; c < n_cols_; ++c) obj(c) = cost[c];
    obj_rhs() = T(0);
    for (std::size_t r = 0; r < m_; ++r) {
      const T cb = cost[basis_[r]];
      if (Num<T>::is_zero(cb)) continue;
      for (std::size_t c = 0; c <= n_cols_; ++c) {
        if (!Num<T>::is_zero(at(r, c))) tab_[m_ * width_ + c] -= cb * at(r, c);
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    if (++pivots_ > max_pivots_) throw NumericalFailure("pivot limit exceeded");
    const T inv = T(1) / at(pr, pc);
    T* prow = &tab_[pr * width_];
    for (std::size_t c = 0; c < width_; ++c) {
      if (!Num<T>::is_zero(prow[c])) prow[c] *= inv;
    }
    prow[pc] = T(1);
    // Nonzero columns of the pivot row, reused for every elimination.
    nz_.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (!Num<T>::is_zero(prow[c])) nz_.push_back(c);
    }
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      T* row = &tab_[r * width_];
      if (Num<T>::is_zero(row[pc])) continue;
      const T f = row[pc];
      for (std::size_t c : nz_) row[c] -= f * prow[c];
      row[pc] = T(0);
    }
    basis_[pr] = pc;
  }

  RunResult run(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_cols_ : first_art_;
    for (;;) {
      std::size_t enter = npos;
      for (std::size_t c = 0; c < limit; ++c) {
        if (obj(c) < -Num<T>::kCost) {
          enter = c;
          break;
        }
      }
      if (enter == npos) return RunResult::optimal;
      std::size_t leave = npos;
      T best(0);
      for (std::size_t r = 0; r < m_; ++r) {
        const T& a_rc = at(r, enter);
        if (!(a_rc > Num<T>::kPivot)) continue;
        T b_r = rhs(r);
        if (b_r < T(0)) b_r = T(0);
        const T ratio = b_r / a_rc;
        if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == npos) return RunResult::unbounded;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      std::size_t best = npos;
      T best_mag(0);
      for (std::size_t c = 0; c < first_art_; ++c) {
        const T mag = abs_(at(r, c));
        // Largest entry keeps the degenerate pivot well conditioned.
        if (mag > Num<T>::kPivot && (best == npos || mag > best_mag)) {
          best = c;
          best_mag = mag;
        }
      }
      if (best != npos) {
        pivot(r, best);
      } else {
        // Redundant row: zero it so it never constrains a ratio test.
        for (std::size_t c = 0; c < first_art_; ++c) at(r, c) = T(0);
        rhs(r) = T(0);
      }
    }
  }

  FarkasCertificate certificate() {
    FarkasCertificate cert;
    cert.eq.assign(lp_.eq.size(), 0.0);
    cert.ineq.assign(lp_.ineq.size(), 0.0);
    cert.upper.assign(lp_.n_vars, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t c = init_col_[r];
      // Column c started as e_r, so its reduced cost is cost_c - y_r.
      const T y = cost_[c] - obj(c);
      const double lambda = -static_cast<double>(sign_[r]) * Num<T>::to(y);
      switch (origins_[r].first) {
        case RowOrigin::eq: cert.eq[origins_[r].second] = lambda; break;
        case RowOrigin::ineq: cert.ineq[origins_[r].second] = lambda; break;
        case RowOrigin::upper: cert.upper[origins_[r].second] = lambda; break;
      }
    }
    return cert;
  }

  std::vector<double> extract() const {
    std::vector<T> val(n_cols_, T(0));
    for (std::size_t r = 0; r < m_; ++r) val[basis_[r]] = at(r, n_cols_);
    std::vector<double> x(lp_.n_vars);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const VarMap& vm = vars_[v];
      switch (vm.kind) {
        case VarKind::shifted_lower: x[v] = Num<T>::to(T(Num<T>::from(vm.shift) + val[vm.col])); break;
        case VarKind::reflected_upper: x[v] = Num<T>::to(T(Num<T>::from(vm.shift) - val[vm.col])); break;
        case VarKind::split_free: x[v] = Num<T>::to(T(val[vm.col] - val[vm.col + 1])); break;
      }
    }
    return x;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const LinearProgram& lp_;
  std::size_t max_pivots_;
  std::size_t pivots_ = 0;
  std::vector<VarMap> vars_;
  std::size_t n_struct_ = 0;
  std::size_t first_slack_ = 0;
  std::size_t first_art_ = 0;
  std::size_t n_cols_ = 0;
  std::size_t width_ = 0;
  std::size_t m_ = 0;
  std::vector<T> tab_;
  std::vector<T> cost_;
  std::vector<T> rhs0_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> init_col_;
  std::vector<std::size_t> slack_of_row_;
  std::vector<int> sign_;
  std::vector<std::pair<RowOrigin, std::size_t>> origins_;
  std::vector<std::size_t> nz_;
};

LinearProgram with_default_bounds(const LinearProgram& lp) {
  LinearProgram out = lp;
  if (out.lower.empty()) out.lower.assign(out.n_vars, 0.0);
  if (out.upper.empty()) out.upper.assign(out.n_vars, kInf);
  return out;
}

bool verified(const LinearProgram& lp, const LpOutcome& out) {
  switch (out.status) {
    case LpStatus::optimal:
    case LpStatus::feasible:
      return max_violation(lp, out.x) <= kLpTolerance;
    case LpStatus::infeasible:
      return out.certificate && farkas_gap(lp, *out.certificate) > 0.0;
    case LpStatus::unbounded:
      return true;
  }
  return false;
}

// Rational tableaux grow quickly; beyond this size the fallback is skipped.
constexpr std::size_t kExactFallbackCells = 400'000;

}  // namespace

LpOutcome solve_lp(const LinearProgram& input, const LpOptions& options) {
  const LinearProgram lp = with_default_bounds(input);
  if (options.exact) return Tableau<mpq_rational>(lp, options.max_pivots).solve();

  LpOutcome out;
  bool ok = false;
  try {
    out = Tableau<double>(lp, options.max_pivots).solve();
    ok = verified(lp, out);
  } catch (const NumericalFailure&) {
    if (!options.exact_fallback) throw;
  }
  if (ok) return out;
  const std::size_t rows = lp.eq.size() + lp.ineq.size() + lp.n_vars;
  const std::size_t cells = rows * (2 * lp.n_vars + 2 * rows);
  if (!options.exact_fallback || cells > kExactFallbackCells) {
    throw NumericalFailure("double-precision simplex result failed verification (status " +
                           std::string(to_string(out.status)) + ")");
  }
  return Tableau<mpq_rational>(lp, options.max_pivots).solve();
}

double max_violation(const LinearProgram& input, std::span<const double> x) {
  const LinearProgram lp = with_default_bounds(input);
  if (x.size() != lp.n_vars) throw ShapeMismatch("solution length differs from n_vars");
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t v = 0; v < lp.n_vars; ++v) s += row[v] * x[v];
    return s;
  };
  for (const auto& r : lp.eq) worst = std::max(worst, std::abs(dot(r.coeffs) - r.rhs));
  for (const auto& r : lp.ineq) worst = std::max(worst, dot(r.coeffs) - r.rhs);
  for (std::size_t v = 0; v < lp.n_vars; ++v) {
    if (!std::isfinite(x[v])) return kInf;
    worst = std::max(worst, lp.lower[v] - x[v]);
    worst = std::max(worst, x[v] - lp.upper[v]);
  }
  return worst;
}

double farkas_gap(const LinearProgram& input, const FarkasCertificate& cert) {
  const LinearProgram lp = with_default_bounds(input);
  if (cert.eq.size() != lp.eq.size() || cert.ineq.size() != lp.ineq.size() || cert.upper.size() != lp.n_vars) {
    throw ShapeMismatch("certificate does not match the program");
  }
  constexpr double kSignSlack = 1e-12;
  std::vector<double> g(lp.n_vars, 0.0);
  double yb = 0.0;
  for (std::size_t r = 0; r < lp.eq.size(); ++r) {
    for (std::size_t v = 0; v < lp.n_vars; ++v) g[v] += cert.eq[r] * lp.eq[r].coeffs[v];
    yb += cert.eq[r] * lp.eq[r].rhs;
  }
  for (std::size_t r = 0; r < lp.ineq.size(); ++r) {
    if (cert.ineq[r] < -kSignSlack) return -kInf;
    for (std::size_t v = 0; v < lp.n_vars; ++v) g[v] += cert.ineq[r] * lp.ineq[r].coeffs[v];
    yb += cert.ineq[r] * lp.ineq[r].rhs;
  }
  for (std::size_t v = 0; v < lp.n_vars; ++v) {
    if (cert.upper[v] == 0.0) continue;
    if (cert.upper[v] < -kSignSlack || !std::isfinite(lp.upper[v])) return -kInf;
    g[v] += cert.upper[v];
    yb += cert.upper[v] * lp.upper[v];
  }
  double box_min = 0.0;
  for (std::size_t v = 0; v < lp.n_vars; ++v) {
    if (std::abs(g[v]) <= kSignSlack) continue;
    const double bound = g[v] > 0.0 ? lp.lower[v] : lp.upper[v];
    if (!std::isfinite(bound)) return -kInf;
    box_min += g[v] * bound;
  }
  return box_min - yb;
}

}  // namespace ctx
