#include "covgamma/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace covgamma {

namespace {

// How an original variable is represented in standard form.
struct VarMap {
  enum class Kind { Split, Shifted, Mirrored } kind = Kind::Split;
  std::size_t col = 0;      // first standard-form column
  Rational offset;          // Shifted: x = offset + y ; Mirrored: x = offset - y
};

struct Tableau {
  std::size_t rows = 0, cols = 0;
  std::vector<RVec> a;      // rows x cols
  RVec b;                   // rows
  std::vector<std::size_t> basis;  // basic column per row

  RVec red;                 // reduced-cost row, cols
  Rational obj;             // current objective value (minimization)

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational piv = a[pr][pc];
    for (std::size_t j = 0; j < cols; ++j) a[pr][j] /= piv;
    b[pr] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const Rational f = a[i][pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
      b[i] -= f * b[pr];
    }
    const Rational f = red[pc];
    if (f != 0) {
      for (std::size_t j = 0; j < cols; ++j) red[j] -= f * a[pr][j];
      // entering variable rises to b[pr], moving the objective by red[pc]*b[pr]
      obj += f * b[pr];
    }
    basis[pr] = pc;
  }
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Entering column under Bland's rule: lowest-index negative reduced cost.
std::size_t enter_bland(const Tableau& t, const std::vector<bool>& allowed) {
  for (std::size_t j = 0; j < t.cols; ++j)
    if (allowed[j] && t.red[j] < 0) return j;
  return kNone;
}

// Entering column under Dantzig pricing: most negative, ties to lowest index.
std::size_t enter_dantzig(const Tableau& t, const std::vector<bool>& allowed) {
  std::size_t best = kNone;
  for (std::size_t j = 0; j < t.cols; ++j) {
    if (!allowed[j] || t.red[j] >= 0) continue;
    if (best == kNone || t.red[j] < t.red[best]) best = j;
  }
  return best;
}

// Leaving row by the exact ratio test; ties broken on the smallest basic
// variable index (the Bland tie-break, used in both pricing modes).
std::size_t leave_row(const Tableau& t, std::size_t pc) {
  std::size_t best = kNone;
  Rational best_ratio;
  for (std::size_t i = 0; i < t.rows; ++i) {
    if (t.a[i][pc] <= 0) continue;
    Rational ratio = t.b[i] / t.a[i][pc];
    if (best == kNone || ratio < best_ratio ||
        (ratio == best_ratio && t.basis[i] < t.basis[best])) {
      best = i;
      best_ratio = ratio;
    }
  }
  return best;
}

enum class RunOutcome { Optimal, Unbounded };

// Minimizes until optimal or unbounded. Switches to Bland's rule for good
// once `stall_limit` consecutive pivots make no progress on the objective.
RunOutcome run_simplex(Tableau& t, const std::vector<bool>& allowed) {
  const std::size_t stall_limit = 64 + 2 * (t.rows + t.cols);
  std::size_t stalled = 0;
  bool bland = false;
  for (;;) {
    const std::size_t pc = bland ? enter_bland(t, allowed) : enter_dantzig(t, allowed);
    if (pc == kNone) return RunOutcome::Optimal;
    const std::size_t pr = leave_row(t, pc);
    if (pr == kNone) return RunOutcome::Unbounded;
    const Rational before = t.obj;
    t.pivot(pr, pc);
    if (!bland) {
      if (t.obj == before) {
        if (++stalled > stall_limit) bland = true;
      } else {
        stalled = 0;
      }
    }
  }
}

void compute_reduced_costs(Tableau& t, const RVec& cost) {
  t.red = cost;
  t.obj = 0;
  for (std::size_t i = 0; i < t.rows; ++i) {
    const Rational cb = cost[t.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < t.cols; ++j) t.red[j] -= cb * t.a[i][j];
    t.obj += cb * t.b[i];
  }
}

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (!p.bounds.empty() && p.bounds.size() != n)
    throw std::invalid_argument("solve_lp: bounds size mismatch");
  for (const auto& c : p.constraints)
    if (c.coeffs.size() != n)
      throw std::invalid_argument("solve_lp: constraint dimension mismatch");

  // Minimization objective in terms of the original variables.
  RVec cmin = (p.sense == Sense::Maximize) ? negate(p.objective) : p.objective;

  // Substitute each variable by nonnegative standard-form variables.
  std::vector<VarMap> vmap(n);
  std::size_t cols = 0;
  std::vector<LpConstraint> extra_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const VarBounds vb = p.bounds.empty() ? VarBounds{} : p.bounds[j];
    if (vb.lower && vb.upper) {
      if (*vb.lower > *vb.upper) return {LpStatus::Infeasible, Rational(0), {}};
      vmap[j] = {VarMap::Kind::Shifted, cols, *vb.lower};
      cols += 1;
      LpConstraint row;  // y_j <= upper - lower
      row.coeffs.assign(n, Rational(0));
      row.coeffs[j] = 1;
      row.rel = Relation::LessEq;
      row.rhs = *vb.upper;
      extra_rows.push_back(std::move(row));
    } else if (vb.lower) {
      vmap[j] = {VarMap::Kind::Shifted, cols, *vb.lower};
      cols += 1;
    } else if (vb.upper) {
      vmap[j] = {VarMap::Kind::Mirrored, cols, *vb.upper};
      cols += 1;
    } else {
      vmap[j] = {VarMap::Kind::Split, cols, Rational(0)};
      cols += 2;
    }
  }
  const std::size_t struct_cols = cols;

  std::vector<LpConstraint> all_rows = p.constraints;
  for (auto& r : extra_rows) all_rows.push_back(std::move(r));
  const std::size_t m = all_rows.size();

  // Build rows over structural columns: row * y  REL  rhs'.
  std::vector<RVec> rowa(m, RVec(struct_cols, Rational(0)));
  RVec rowb(m, Rational(0));
  std::vector<Relation> rowrel(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational rhs = all_rows[i].rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& c = all_rows[i].coeffs[j];
      if (c == 0) continue;
      switch (vmap[j].kind) {
        case VarMap::Kind::Split:
          rowa[i][vmap[j].col] += c;
          rowa[i][vmap[j].col + 1] -= c;
          break;
        case VarMap::Kind::Shifted:
          rowa[i][vmap[j].col] += c;
          rhs -= c * vmap[j].offset;
          break;
        case VarMap::Kind::Mirrored:
          rowa[i][vmap[j].col] -= c;
          rhs -= c * vmap[j].offset;
          break;
      }
    }
    rowb[i] = rhs;
    rowrel[i] = all_rows[i].rel;
  }

  // Slack columns, then b >= 0 normalization, then artificials.
  std::size_t total_cols = struct_cols;
  std::vector<std::size_t> slack_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i)
    if (rowrel[i] != Relation::Equal) slack_col[i] = total_cols++;

  Tableau t;
  t.rows = m;
  std::vector<std::size_t> art_rows;
  std::vector<Rational> slack_sign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (slack_col[i] != kNone)
      slack_sign[i] = (rowrel[i] == Relation::LessEq) ? Rational(1) : Rational(-1);

  // Flip rows to make b nonnegative.
  for (std::size_t i = 0; i < m; ++i) {
    if (rowb[i] < 0) {
      rowa[i] = negate(rowa[i]);
      rowb[i] = -rowb[i];
      slack_sign[i] = -slack_sign[i];
    }
  }

  // A slack entering with +1 can serve as the initial basic variable;
  // everything else needs an artificial.
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (slack_sign[i] != 1) ++num_art;
  const std::size_t art_start = total_cols;
  total_cols += num_art;

  t.cols = total_cols;
  t.a.assign(m, RVec(total_cols, Rational(0)));
  t.b = rowb;
  t.basis.assign(m, kNone);
  {
    std::size_t next_art = art_start;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < struct_cols; ++j) t.a[i][j] = rowa[i][j];
      if (slack_col[i] != kNone) t.a[i][slack_col[i]] = slack_sign[i];
      if (slack_sign[i] == 1) {
        t.basis[i] = slack_col[i];
      } else {
        t.a[i][next_art] = 1;
        t.basis[i] = next_art;
        art_rows.push_back(i);
        ++next_art;
      }
    }
  }

  std::vector<bool> allowed(total_cols, true);

  // Phase 1: minimize the sum of artificials.
  if (num_art > 0) {
    RVec phase1(total_cols, Rational(0));
    for (std::size_t j = art_start; j < total_cols; ++j) phase1[j] = 1;
    compute_reduced_costs(t, phase1);
    const RunOutcome out = run_simplex(t, allowed);
    if (out == RunOutcome::Unbounded)
      throw std::logic_error("solve_lp: phase 1 unbounded");
    if (t.obj != 0) return {LpStatus::Infeasible, Rational(0), {}};

    // Pivot surviving artificials out; a row with no eligible pivot is a
    // redundant equality and is dropped.
    std::vector<bool> drop(m, false);
    for (std::size_t i = 0; i < t.rows; ++i) {
      if (t.basis[i] < art_start) continue;
      std::size_t pc = kNone;
      for (std::size_t j = 0; j < art_start; ++j)
        if (t.a[i][j] != 0) { pc = j; break; }
      if (pc == kNone) {
        drop[i] = true;
      } else {
        // Degenerate pivot (b[i] == 0 here), exactness is unaffected.
        const Rational piv = t.a[i][pc];
        for (std::size_t j = 0; j < t.cols; ++j) t.a[i][j] /= piv;
        t.b[i] /= piv;
        for (std::size_t k = 0; k < t.rows; ++k) {
          if (k == i) continue;
          const Rational f = t.a[k][pc];
          if (f == 0) continue;
          for (std::size_t j = 0; j < t.cols; ++j) t.a[k][j] -= f * t.a[i][j];
          t.b[k] -= f * t.b[i];
        }
        t.basis[i] = pc;
      }
    }
    if (std::any_of(drop.begin(), drop.end(), [](bool d) { return d; })) {
      Tableau nt;
      nt.cols = t.cols;
      for (std::size_t i = 0; i < t.rows; ++i) {
        if (drop[i]) continue;
        nt.a.push_back(t.a[i]);
        nt.b.push_back(t.b[i]);
        nt.basis.push_back(t.basis[i]);
      }
      nt.rows = nt.a.size();
      t.a = std::move(nt.a);
      t.b = std::move(nt.b);
      t.basis = std::move(nt.basis);
      t.rows = t.a.size();
    }
    for (std::size_t j = art_start; j < total_cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  RVec cost(total_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (cmin[j] == 0) continue;
    switch (vmap[j].kind) {
      case VarMap::Kind::Split:
        cost[vmap[j].col] += cmin[j];
        cost[vmap[j].col + 1] -= cmin[j];
        break;
      case VarMap::Kind::Shifted:
        cost[vmap[j].col] += cmin[j];
        break;
      case VarMap::Kind::Mirrored:
        cost[vmap[j].col] -= cmin[j];
        break;
    }
  }
  compute_reduced_costs(t, cost);
  if (run_simplex(t, allowed) == RunOutcome::Unbounded)
    return {LpStatus::Unbounded, Rational(0), {}};

  // Recover the primal point in the original variables.
  RVec y(total_cols, Rational(0));
  for (std::size_t i = 0; i < t.rows; ++i) y[t.basis[i]] = t.b[i];
  RVec x(n, Rational(0));
  Rational constant = 0;  // objective offset from shifted/mirrored vars
  for (std::size_t j = 0; j < n; ++j) {
    switch (vmap[j].kind) {
      case VarMap::Kind::Split:
        x[j] = y[vmap[j].col] - y[vmap[j].col + 1];
        break;
      case VarMap::Kind::Shifted:
        x[j] = vmap[j].offset + y[vmap[j].col];
        constant += cmin[j] * vmap[j].offset;
        break;
      case VarMap::Kind::Mirrored:
        x[j] = vmap[j].offset - y[vmap[j].col];
        constant += cmin[j] * vmap[j].offset;
        break;
    }
  }
  Rational value = t.obj + constant;
  if (p.sense == Sense::Maximize) value = -value;
  return {LpStatus::Optimal, value, x};
}

}  // namespace covgamma
