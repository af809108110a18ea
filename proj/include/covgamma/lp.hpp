#pragma once

#include <optional>
#include <vector>

#include "covgamma/rational.hpp"

namespace covgamma {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  RVec coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

// Per-variable bounds; both empty means the variable is free.
struct VarBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

struct LpProblem {
  Sense sense = Sense::Maximize;
  RVec objective;                        // one coefficient per variable
  std::vector<LpConstraint> constraints;
  std::vector<VarBounds> bounds;         // empty = all variables free

  std::size_t num_vars() const { return objective.size(); }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // exact optimum, valid when Optimal
  RVec point;      // primal point attaining the optimum, valid when Optimal
};

// Exact two-phase simplex over the rationals. Dantzig pricing with a
// permanent switch to Bland's rule once degenerate pivots stall, so
// termination is guaranteed on every input. Deterministic: identical
// problems yield identical results including the primal point.
LpResult solve_lp(const LpProblem& p);

}  // namespace covgamma
