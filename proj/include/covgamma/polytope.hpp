#pragma once

#include <array>
#include <optional>
#include <vector>

#include "covgamma/rational.hpp"

namespace covgamma {

// Halfspace normal.x <= rhs, or normal.x < rhs when strict.
struct HalfSpace {
  RVec normal;
  Rational rhs;
  bool strict = false;
};

// Intersection of halfspaces over the rationals. An empty list means all
// of space; boundedness is checked on demand, emptiness is decided
// exactly by LP (strict constraints honored).
struct HPolytope {
  int dim = 3;
  std::vector<HalfSpace> halfspaces;
};

bool contains(const HPolytope& p, const RVec& x);

// {lambda*x + u : x in p}; strictness of each halfspace is preserved.
// Rejects lambda <= 0.
HPolytope homothet(const HPolytope& p, const Rational& lambda, const RVec& u);

// Collapses halfspaces sharing a direction to the single tightest one.
// Exact set equivalence; output is sorted for determinism.
HPolytope canonical_merge(const HPolytope& p);

struct EmptinessResult {
  bool empty = true;
  RVec witness;  // valid when nonempty: satisfies strict constraints strictly
};

// Decides emptiness honoring strict flags: nonempty iff some rational
// point satisfies every non-strict constraint and every strict constraint
// strictly. Solved as max of the minimum slack over strict constraints,
// capped at 1 so an unbounded slack cannot occur.
EmptinessResult is_empty(const HPolytope& p);

bool is_bounded(const HPolytope& p);

// The unit cross-polytope |x1|+|x2|+|x3| <= 1 as 8 non-strict halfspaces
// sign.x <= 1, enumerated in a fixed order.
HPolytope cross_polytope();

// --- facets -----------------------------------------------------------

struct FacetTriangle {
  std::array<Vec3, 3> vertices;  // (s1*e1, s2*e2, s3*e3) for the octant signs
  HalfSpace plane;               // sign.x <= 1, satisfied with equality on the facet
  std::array<int, 3> signs;      // octant of this facet
};

// All 8 triangular facets, one per sign octant, in the same deterministic
// order as cross_polytope()'s halfspaces.
std::vector<FacetTriangle> facets_of_cross_polytope();

Vec3 facet_center(const FacetTriangle& f);

// Number of shared vertices of two facets (3 = same, 2 = edge-adjacent,
// 1 = vertex-sharing, 0 = opposite).
int facets_shared_vertices(const FacetTriangle& a, const FacetTriangle& b);

// --- symmetries --------------------------------------------------------

// Signed permutation matrix: the full symmetry group of the cross-polytope.
struct SymmetryOp {
  std::array<std::array<int, 3>, 3> m{};

  Vec3 apply(const Vec3& v) const;
  RVec apply(const RVec& v) const;
  SymmetryOp compose(const SymmetryOp& other) const;  // this after other
  bool operator==(const SymmetryOp& o) const = default;
};

SymmetryOp identity_op();

// All 48 signed permutations, deterministic order, closed under composition.
const std::vector<SymmetryOp>& symmetry_group();

// --- facet sections ----------------------------------------------------

struct FacetSection {
  // Vertices of the 2D convex polygon F cap C in cyclic order; empty when
  // the intersection is empty or lower-dimensional.
  std::vector<Vec3> polygon;
  // 2 for a polygon, 1 segment, 0 point, -1 empty.
  int dimension = -1;
};

// Exact polygon of facet cap C, computed by 2D vertex enumeration in the
// facet's plane. C must be non-strict and bounded.
FacetSection facet_section(const FacetTriangle& f, const HPolytope& c);

// Edge counts of the four facet sections at vertex v of the cross-polytope
// against homothet(K1, lambda, u), sorted ascending. Requires v to lie in
// the homothet.
std::vector<int> classify_section_counts(const Vec3& u, const Rational& lambda,
                                         const Vec3& v);

}  // namespace covgamma
