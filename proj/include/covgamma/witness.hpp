#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "covgamma/gauge.hpp"
#include "covgamma/polytope.hpp"
#include "covgamma/rational.hpp"

namespace covgamma {

// --- node points --------------------------------------------------------

// The three pairwise intersection points of the far sides of the three
// corner-anchored homothets of ratio lambda inside a facet triangle, in
// barycentric coordinates (1-lambda, 1-lambda, 2*lambda-1) and its cyclic
// relabelings. Requires 1/2 <= lambda < 1; all three coincide with the
// centroid at lambda = 2/3.
std::array<Vec3, 3> node_points(const FacetTriangle& f, const Rational& lambda);

// Midpoints of the three sides of the node-point triangle.
std::array<Vec3, 3> node_midpoints(const FacetTriangle& f, const Rational& lambda);

// --- witness sets -------------------------------------------------------

enum class WitnessGen { Vertices, FacetCenters, NodePoints, NodeMidpoints };

struct LabeledPoint {
  std::string label;
  Vec3 p;
};

struct WitnessSet {
  std::vector<LabeledPoint> points;      // deduplicated, labels unique
  std::vector<std::string> generators;   // e.g. "vertices", "nodes@3/5"
  bool degenerate_nodes = false;         // node triples collapsed (lambda = 2/3)
};

// 6 vertices, 8 facet centers, 24 node points, 24 node midpoints at the
// given lambda, deduplicated by exact coordinates.
WitnessSet build_witness_set(const std::set<WitnessGen>& generators,
                             const Rational& lambda);

// --- lower-bound engine ---------------------------------------------------

enum class LowerBoundStatus { BoundCertified, Inconclusive };

struct AssignmentGroup {
  std::vector<std::size_t> point_indices;
  Rational ratio;  // exact enclosing ratio of the group
};

struct LowerBoundVerdict {
  LowerBoundStatus status = LowerBoundStatus::Inconclusive;
  Rational lambda_target;
  int m = 0;
  std::int64_t nodes_explored = 0;
  std::int64_t lp_calls = 0;
  int max_depth = 0;
  bool budget_exhausted = false;
  // Present when the engine found an assignment with every group ratio
  // strictly below the target (re-verified before emission). Its absence
  // together with Inconclusive means the budget ran out.
  std::optional<std::vector<AssignmentGroup>> counterexample;
};

struct EngineOptions {
  std::int64_t node_budget = 2'000'000;
  bool symmetry_reduction = true;  // canonical first-use plus 48-group pruning
};

// Decides by exhaustive branch-and-bound whether the labeled points can be
// split into at most m groups whose enclosing ratios are all strictly below
// lambda_target. If not, every covering of the cross-polytope by m copies
// of mu*K with mu < lambda_target is impossible, so gamma_m >= lambda_target.
LowerBoundVerdict certify_lower_bound(int m, const Rational& lambda_target,
                                      const WitnessSet& w,
                                      const EngineOptions& opts = {});

// Generic form used both for the cross-polytope and for triangle gauges.
// `point_perms` lists permutations of the point set induced by symmetries
// of the body (used only for search pruning; pass empty to disable).
LowerBoundVerdict certify_lower_bound_points(
    const GaugeBody& body, const std::vector<RVec>& points, int m,
    const Rational& lambda_target, const EngineOptions& opts,
    const std::vector<std::vector<std::size_t>>& point_perms = {});

// Exact enclosing ratio of three eta-node points taken from three distinct
// facets; checks that the ratio is at least eta. Throws if the
// points are not eta-nodes of pairwise distinct facets.
Rational eta_node_triple_check(const Rational& eta, const std::array<Vec3, 3>& pts,
                         const std::array<int, 3>& facet_indices);

// Point permutations of a witness set under the 48 symmetries (only those
// that map the set onto itself; normally all 48).
std::vector<std::vector<std::size_t>> witness_point_perms(const WitnessSet& w);

}  // namespace covgamma
