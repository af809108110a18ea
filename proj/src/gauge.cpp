#include "covgamma/gauge.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "covgamma/lp.hpp"

namespace covgamma {

GaugeBody GaugeBody::cross3() { return {GaugeKind::CrossPolytope3, cross_polytope()}; }

GaugeBody GaugeBody::triangle2(const std::array<RVec, 3>& vertices) {
  for (const auto& v : vertices)
    if (v.size() != 2) throw std::invalid_argument("triangle2: 2D vertices expected");
  const RVec a = vertices[0], b = vertices[1], c = vertices[2];
  const Rational det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  if (det == 0) throw std::invalid_argument("triangle2: degenerate triangle");

  const Rational third(1, 3);
  const RVec centroid = scale(third, add(add(a, b), c));
  const std::array<RVec, 3> v = {sub(a, centroid), sub(b, centroid), sub(c, centroid)};

  HPolytope p;
  p.dim = 2;
  for (int i = 0; i < 3; ++i) {
    const RVec& p1 = v[i];
    const RVec& p2 = v[(i + 1) % 3];
    const RVec& inside = v[(i + 2) % 3];
    RVec n = {p2[1] - p1[1], p1[0] - p2[0]};  // perpendicular to the edge
    Rational rhs = dot(n, p1);
    if (dot(n, inside) > rhs) {  // orient so the third vertex satisfies <=
      n = negate(n);
      rhs = -rhs;
    }
    if (rhs <= 0) throw std::logic_error("triangle2: centroid not interior");
    p.halfspaces.push_back({std::move(n), std::move(rhs), false});
  }
  return {GaugeKind::Triangle2, std::move(p)};
}

GaugeBody GaugeBody::general(HPolytope p) {
  for (const auto& h : p.halfspaces) {
    if (h.strict) throw std::invalid_argument("gauge body: strict halfspace");
    if (h.rhs <= 0)
      throw std::invalid_argument("gauge body: origin must be interior (rhs > 0)");
  }
  if (!is_bounded(p)) throw std::invalid_argument("gauge body: unbounded");
  return {GaugeKind::GeneralHPolytope, std::move(p)};
}

Rational gauge_value(const GaugeBody& body, const RVec& x) {
  Rational g = 0;
  for (const auto& h : body.poly.halfspaces) {
    const Rational v = dot(h.normal, x) / h.rhs;
    if (v > g) g = v;
  }
  return g;
}

namespace {

// One row per body halfspace: the binding constraint over all points in
// direction n is max_i n.p_i - n.u <= lambda*b, so the LP size does not
// grow with the point count.
LpProblem enclosing_lp(const GaugeBody& body, const std::vector<RVec>& points) {
  if (points.empty()) throw std::invalid_argument("min_ratio: empty point set");
  const std::size_t d = body.dim();
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("min_ratio: dimension mismatch");

  LpProblem lp;  // variables: u_0..u_{d-1} free, lambda >= 0
  lp.sense = Sense::Minimize;
  lp.objective.assign(d + 1, Rational(0));
  lp.objective[d] = 1;
  lp.bounds.assign(d + 1, VarBounds{});
  lp.bounds[d] = VarBounds{Rational(0), std::nullopt};
  for (const auto& h : body.poly.halfspaces) {
    Rational peak = dot(h.normal, points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const Rational v = dot(h.normal, points[i]);
      if (v > peak) peak = v;
    }
    LpConstraint c;
    c.coeffs = negate(h.normal);
    c.coeffs.push_back(-h.rhs);
    c.rel = Relation::LessEq;
    c.rhs = -peak;
    lp.constraints.push_back(std::move(c));
  }
  return lp;
}

}  // namespace

Rational enclosing_ratio(const GaugeBody& body, const std::vector<RVec>& points) {
  const LpResult r = solve_lp(enclosing_lp(body, points));
  if (r.status != LpStatus::Optimal)
    throw std::logic_error("enclosing_ratio: LP must be solvable");
  return r.value;
}

RatioCertificate min_ratio(const GaugeBody& body, const std::vector<RVec>& points) {
  const std::size_t d = body.dim();
  LpProblem lp = enclosing_lp(body, points);
  const LpResult first = solve_lp(lp);
  if (first.status != LpStatus::Optimal)
    throw std::logic_error("min_ratio: enclosing LP must be solvable");

  RatioCertificate cert;
  cert.ratio = first.value;

  // Canonical center: fix lambda at the optimum and take the lexicographic
  // minimum over the optimal-center face, one coordinate at a time.
  lp.bounds[d] = VarBounds{cert.ratio, cert.ratio};
  RVec center(d);
  for (std::size_t k = 0; k < d; ++k) {
    lp.objective.assign(d + 1, Rational(0));
    lp.objective[k] = 1;
    const LpResult r = solve_lp(lp);
    if (r.status != LpStatus::Optimal)
      throw std::logic_error("min_ratio: center refinement LP must be solvable");
    center[k] = r.value;
    lp.bounds[k] = VarBounds{center[k], center[k]};
  }
  cert.center = std::move(center);

  for (std::size_t i = 0; i < points.size(); ++i) {
    bool tight = false;
    for (const auto& h : body.poly.halfspaces) {
      if (dot(h.normal, sub(points[i], cert.center)) == cert.ratio * h.rhs) {
        tight = true;
        break;
      }
    }
    if (tight) cert.active.push_back(i);
  }
  return cert;
}

bool is_centrally_symmetric(const GaugeBody& body) {
  // Normalize each halfspace to n/b . x <= 1 and require closure under
  // negation of the direction set.
  std::set<RVec> dirs;
  for (const auto& h : body.poly.halfspaces) dirs.insert(scale(1 / h.rhs, h.normal));
  for (const auto& n : dirs)
    if (!dirs.count(negate(n))) return false;
  return true;
}

Rational min_ratio_two_points_symmetric(const GaugeBody& body, const RVec& p,
                                        const RVec& q) {
  if (!is_centrally_symmetric(body))
    throw std::invalid_argument("min_ratio_two_points_symmetric: body not symmetric");
  const Rational half(1, 2);
  return half * gauge_value(body, sub(p, q));
}

}  // namespace covgamma
