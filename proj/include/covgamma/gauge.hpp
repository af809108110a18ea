#pragma once

#include <vector>

#include "covgamma/polytope.hpp"
#include "covgamma/rational.hpp"

namespace covgamma {

enum class GaugeKind { CrossPolytope3, Triangle2, GeneralHPolytope };

// A bounded convex body with the origin in its interior, used as the unit
// ball of a gauge. All halfspaces are non-strict with positive rhs.
struct GaugeBody {
  GaugeKind kind = GaugeKind::CrossPolytope3;
  HPolytope poly;

  static GaugeBody cross3();
  // Triangle gauge from three 2D vertices, recentered so its centroid is
  // the origin (the scaling base point). Covering ratios are affine
  // invariants, so any non-degenerate triangle stands in for any other;
  // degenerate input is rejected.
  static GaugeBody triangle2(const std::array<RVec, 3>& vertices);
  static GaugeBody general(HPolytope p);

  int dim() const { return poly.dim; }
};

// Minkowski functional of the body: min {t >= 0 : x in t*body}.
Rational gauge_value(const GaugeBody& body, const RVec& x);

struct RatioCertificate {
  Rational ratio;  // exact minimum enclosing ratio
  // Optimal centers form a face; the certificate stores its lexicographically
  // smallest point, which is deterministic and translation-covariant.
  RVec center;
  std::vector<std::size_t> active;  // inputs tight at the stored center
};

// Smallest lambda such that some translate of lambda*body contains all
// points: an exact LP in (u, lambda). lambda = 0 iff the points coincide.
RatioCertificate min_ratio(const GaugeBody& body, const std::vector<RVec>& points);

// Ratio only, one LP; the hot path for search pruning.
Rational enclosing_ratio(const GaugeBody& body, const std::vector<RVec>& points);

// Closed-form cross-check for centrally symmetric bodies and point pairs:
// gauge(p - q) / 2. Rejects non-symmetric bodies.
Rational min_ratio_two_points_symmetric(const GaugeBody& body, const RVec& p,
                                        const RVec& q);

bool is_centrally_symmetric(const GaugeBody& body);

}  // namespace covgamma
