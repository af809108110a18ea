#pragma once

#include <array>

#include "covgamma/covering.hpp"
#include "covgamma/witness.hpp"

namespace covgamma {

// Certified value of the 3-copy covering functional of a triangle: an
// explicit corner-anchored covering at ratio 2/3, and a witness-point
// refutation showing no 3-group assignment of the corners and centroid
// stays strictly below 2/3.
struct TriangleGamma3Certificate {
  Rational value;               // exactly 2/3
  CoverageResult covering;      // the 3 corner homothets cover the triangle
  LowerBoundVerdict lower;      // corners + centroid refute every ratio < 2/3
};

// Covering ratios are affine invariants, so any non-degenerate triangle
// carries the same value; degenerate input is rejected.
TriangleGamma3Certificate triangle_gamma3(const std::array<RVec, 3>& triangle);

// The unique optimal corner anchors: translations of the ratio-2/3 copies
// keeping each corner fixed.
std::vector<RVec> corner_anchor_translations(const std::array<RVec, 3>& triangle,
                                             const Rational& lambda);

}  // namespace covgamma
