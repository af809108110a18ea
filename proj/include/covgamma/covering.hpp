#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covgamma/gauge.hpp"
#include "covgamma/polytope.hpp"
#include "covgamma/rational.hpp"

namespace covgamma {

// "body is covered by the union of lambda*body + u_i". Both certifiers
// consume this; the body doubles as the covered set and the homothet shape.
struct CoveringConfig {
  GaugeBody body;
  Rational lambda;              // > 0
  std::vector<RVec> translations;  // m >= 1

  void validate() const;
};

enum class CoverageStatus { Covered, NotCovered, Inconclusive };

struct CoverageStats {
  std::int64_t cells = 0;
  int max_depth = 0;
  std::int64_t lp_calls = 0;
};

struct CoverageResult {
  CoverageStatus status = CoverageStatus::Inconclusive;
  std::optional<RVec> witness;  // present iff NotCovered; in body, outside all copies
  CoverageStats stats;
};

inline constexpr std::int64_t kDefaultCellBudget = 1'000'000;

// Exact decision of coverage by recursive set difference: peel one copy at
// a time, splitting the uncovered remainder into at most f strict-
// complement cells (f = halfspaces of the copy), and recurse with the
// remaining copies. Closed copies, open remainder: a reported witness is
// never a covered boundary point, and it is re-checked against every copy
// before being returned. Budget exhaustion yields Inconclusive, never a
// wrong verdict.
CoverageResult verify_covering(const CoveringConfig& cfg,
                               std::int64_t cell_budget = kDefaultCellBudget);

// Same algorithm for a triangle in its own plane: decides whether the
// triangle is covered by lambda-scaled translates of itself placed at the
// given 2D translations.
CoverageResult verify_covering_2d(const std::array<RVec, 3>& triangle,
                                  const Rational& lambda,
                                  const std::vector<RVec>& translations,
                                  std::int64_t cell_budget = kDefaultCellBudget);

// Deterministic fuzz oracle for the exact certifier: n pseudorandom
// rational points of the body (rejection-sampled from its bounding box),
// returning the exactly-computed fraction that some copy contains.
Rational sample_check(const CoveringConfig& cfg, int n, std::uint64_t seed);

// Points sampled by sample_check that no copy contains (same sequence).
std::vector<RVec> sample_uncovered(const CoveringConfig& cfg, int n,
                                   std::uint64_t seed, std::size_t max_out = 16);

}  // namespace covgamma
