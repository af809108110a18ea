#include "covgamma/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "covgamma/lp.hpp"

namespace covgamma {

bool contains(const HPolytope& p, const RVec& x) {
  for (const auto& h : p.halfspaces) {
    const Rational v = dot(h.normal, x);
    if (h.strict ? !(v < h.rhs) : !(v <= h.rhs)) return false;
  }
  return true;
}

HPolytope homothet(const HPolytope& p, const Rational& lambda, const RVec& u) {
  if (lambda <= 0) throw std::invalid_argument("homothet: lambda must be positive");
  if (static_cast<int>(u.size()) != p.dim)
    throw std::invalid_argument("homothet: translation dimension mismatch");
  HPolytope out;
  out.dim = p.dim;
  out.halfspaces.reserve(p.halfspaces.size());
  for (const auto& h : p.halfspaces)
    out.halfspaces.push_back({h.normal, lambda * h.rhs + dot(h.normal, u), h.strict});
  return out;
}

namespace {

// Scales a halfspace so its first nonzero normal entry has absolute value 1.
// Halfspaces with equal scaled normals describe nested sets.
struct DirKey {
  RVec normal;
  bool operator<(const DirKey& o) const {
    for (std::size_t i = 0; i < normal.size(); ++i) {
      const int c = normal[i].compare(o.normal[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

}  // namespace

HPolytope canonical_merge(const HPolytope& p) {
  std::map<DirKey, std::pair<Rational, bool>> best;  // direction -> (rhs, strict)
  for (const auto& h : p.halfspaces) {
    Rational s = 0;
    for (const auto& c : h.normal)
      if (c != 0) { s = abs(c); break; }
    if (s == 0) throw std::invalid_argument("canonical_merge: zero normal");
    DirKey key{scale(1 / s, h.normal)};
    const Rational b = h.rhs / s;
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), std::make_pair(b, h.strict));
    } else {
      auto& [rb, rs] = it->second;
      if (b < rb || (b == rb && h.strict && !rs)) {
        rb = b;
        rs = h.strict;
      }
    }
  }
  HPolytope out;
  out.dim = p.dim;
  for (const auto& [k, v] : best) out.halfspaces.push_back({k.normal, v.first, v.second});
  return out;
}

EmptinessResult is_empty(const HPolytope& p) {
  const std::size_t d = p.dim;
  bool any_strict = false;
  for (const auto& h : p.halfspaces) any_strict |= h.strict;

  // Variables: x (free), plus the common strict slack s in [0, 1].
  LpProblem lp;
  lp.sense = Sense::Maximize;
  lp.objective.assign(d + 1, Rational(0));
  lp.objective[d] = 1;
  lp.bounds.assign(d + 1, VarBounds{});
  lp.bounds[d] = VarBounds{Rational(0), Rational(1)};
  for (const auto& h : p.halfspaces) {
    LpConstraint c;
    c.coeffs = h.normal;
    c.coeffs.push_back(h.strict ? Rational(1) : Rational(0));
    c.rel = Relation::LessEq;
    c.rhs = h.rhs;
    lp.constraints.push_back(std::move(c));
  }
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible) return {true, {}};
  if (r.status != LpStatus::Optimal)
    throw std::logic_error("is_empty: capped slack LP cannot be unbounded");
  if (any_strict && r.value == 0) return {true, {}};
  RVec witness(r.point.begin(), r.point.begin() + d);
  return {false, std::move(witness)};
}

bool is_bounded(const HPolytope& p) {
  const std::size_t d = p.dim;
  LpProblem lp;
  lp.objective.assign(d, Rational(0));
  for (const auto& h : p.halfspaces)
    lp.constraints.push_back({h.normal, Relation::LessEq, h.rhs});
  for (std::size_t i = 0; i < d; ++i) {
    for (const Sense sense : {Sense::Maximize, Sense::Minimize}) {
      lp.sense = sense;
      lp.objective[i] = 1;
      const LpResult r = solve_lp(lp);
      lp.objective[i] = 0;
      if (r.status == LpStatus::Unbounded) return false;
      if (r.status == LpStatus::Infeasible) return true;  // empty set is bounded
    }
  }
  return true;
}

namespace {

const std::array<std::array<int, 3>, 8> kOctants = {{{+1, +1, +1},
                                                     {+1, +1, -1},
                                                     {+1, -1, +1},
                                                     {+1, -1, -1},
                                                     {-1, +1, +1},
                                                     {-1, +1, -1},
                                                     {-1, -1, +1},
                                                     {-1, -1, -1}}};

}  // namespace

HPolytope cross_polytope() {
  HPolytope p;
  p.dim = 3;
  for (const auto& s : kOctants) {
    RVec n = {Rational(s[0]), Rational(s[1]), Rational(s[2])};
    p.halfspaces.push_back({std::move(n), Rational(1), false});
  }
  return p;
}

std::vector<FacetTriangle> facets_of_cross_polytope() {
  std::vector<FacetTriangle> fs;
  fs.reserve(8);
  for (const auto& s : kOctants) {
    FacetTriangle f;
    f.signs = s;
    f.vertices = {Vec3(Rational(s[0]), 0, 0), Vec3(0, Rational(s[1]), 0),
                  Vec3(0, 0, Rational(s[2]))};
    f.plane = {{Rational(s[0]), Rational(s[1]), Rational(s[2])}, Rational(1), false};
    fs.push_back(std::move(f));
  }
  return fs;
}

Vec3 facet_center(const FacetTriangle& f) {
  const Rational third(1, 3);
  return third * (f.vertices[0] + f.vertices[1] + f.vertices[2]);
}

int facets_shared_vertices(const FacetTriangle& a, const FacetTriangle& b) {
  int n = 0;
  for (int i = 0; i < 3; ++i)
    if (a.signs[i] == b.signs[i]) ++n;
  return n;
}

Vec3 SymmetryOp::apply(const Vec3& v) const {
  const RVec r = apply(v.to_rvec());
  return Vec3::from_rvec(r);
}

RVec SymmetryOp::apply(const RVec& v) const {
  if (v.size() != 3) throw std::invalid_argument("SymmetryOp: dimension 3 expected");
  RVec out(3, Rational(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i][j] != 0) out[i] += Rational(m[i][j]) * v[j];
  return out;
}

SymmetryOp SymmetryOp::compose(const SymmetryOp& other) const {
  SymmetryOp r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += m[i][k] * other.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

SymmetryOp identity_op() {
  SymmetryOp op;
  for (int i = 0; i < 3; ++i) op.m[i][i] = 1;
  return op;
}

const std::vector<SymmetryOp>& symmetry_group() {
  static const std::vector<SymmetryOp> group = [] {
    std::vector<SymmetryOp> g;
    std::array<int, 3> perm = {0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& p : perms)
      for (const auto& s : kOctants) {
        SymmetryOp op;
        for (int i = 0; i < 3; ++i) op.m[i][p[i]] = s[i];
        g.push_back(op);
      }
    return g;
  }();
  return group;
}

namespace {

struct Chart {
  Vec3 origin;  // facet vertex v0
  Vec3 e1, e2;  // v1 - v0, v2 - v0

  Vec3 to3d(const Rational& s, const Rational& t) const {
    return origin + s * e1 + t * e2;
  }
};

struct Line2 {
  Rational a, b, c;  // a*s + b*t <= c
};

}  // namespace

FacetSection facet_section(const FacetTriangle& f, const HPolytope& c) {
  if (c.dim != 3) throw std::invalid_argument("facet_section: 3D polytope expected");
  for (const auto& h : c.halfspaces)
    if (h.strict)
      throw std::invalid_argument("facet_section: strict halfspaces unsupported");

  const Chart chart{f.vertices[0], f.vertices[1] - f.vertices[0],
                    f.vertices[2] - f.vertices[0]};

  // Facet in chart coordinates: s >= 0, t >= 0, s + t <= 1.
  std::vector<Line2> lines = {{Rational(-1), Rational(0), Rational(0)},
                              {Rational(0), Rational(-1), Rational(0)},
                              {Rational(1), Rational(1), Rational(1)}};
  for (const auto& h : c.halfspaces) {
    const RVec n = h.normal;
    const Rational a = dot(n, chart.e1.to_rvec());
    const Rational b = dot(n, chart.e2.to_rvec());
    const Rational rhs = h.rhs - dot(n, chart.origin.to_rvec());
    if (a == 0 && b == 0) {
      if (rhs < 0) return {{}, -1};  // facet plane entirely outside c
      continue;
    }
    lines.push_back({a, b, rhs});
  }

  std::vector<std::pair<Rational, Rational>> pts;
  const std::size_t nl = lines.size();
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = i + 1; j < nl; ++j) {
      const Rational det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == 0) continue;
      const Rational s = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
      const Rational t = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
      bool ok = true;
      for (const auto& l : lines)
        if (l.a * s + l.b * t > l.c) { ok = false; break; }
      if (ok) pts.emplace_back(s, t);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  FacetSection out;
  if (pts.empty()) {
    out.dimension = -1;
    return out;
  }
  if (pts.size() == 1) {
    out.dimension = 0;
    return out;
  }
  if (pts.size() == 2) {
    out.dimension = 1;
    return out;
  }

  // Cyclic order around the exact vertex centroid.
  Rational cs = 0, ct = 0;
  for (const auto& [s, t] : pts) {
    cs += s;
    ct += t;
  }
  const Rational n(pts.size());
  cs /= n;
  ct /= n;
  auto upper = [&](const std::pair<Rational, Rational>& q) {
    const Rational dt = q.second - ct;
    if (dt != 0) return dt > 0;
    return q.first - cs > 0;
  };
  std::sort(pts.begin(), pts.end(), [&](const auto& u, const auto& v) {
    const bool hu = upper(u), hv = upper(v);
    if (hu != hv) return hu;
    const Rational cross =
        (u.first - cs) * (v.second - ct) - (u.second - ct) * (v.first - cs);
    return cross > 0;
  });

  out.dimension = 2;
  out.polygon.reserve(pts.size());
  for (const auto& [s, t] : pts) out.polygon.push_back(chart.to3d(s, t));

  // Rotate so the lexicographically smallest vertex leads.
  auto lex_less = [](const Vec3& a, const Vec3& b) {
    if (a.x1 != b.x1) return a.x1 < b.x1;
    if (a.x2 != b.x2) return a.x2 < b.x2;
    return a.x3 < b.x3;
  };
  const auto mn = std::min_element(out.polygon.begin(), out.polygon.end(), lex_less);
  std::rotate(out.polygon.begin(), mn, out.polygon.end());
  return out;
}

std::vector<int> classify_section_counts(const Vec3& u, const Rational& lambda,
                                         const Vec3& v) {
  // v must be a vertex of the cross-polytope.
  int axis = -1, sign = 0, nonzero = 0;
  const RVec vv = v.to_rvec();
  for (int i = 0; i < 3; ++i) {
    if (vv[i] != 0) {
      ++nonzero;
      axis = i;
      sign = vv[i] > 0 ? 1 : -1;
      if (abs(vv[i]) != 1) throw std::invalid_argument("classify: not a vertex");
    }
  }
  if (nonzero != 1) throw std::invalid_argument("classify: not a vertex");

  const HPolytope copy = homothet(cross_polytope(), lambda, u.to_rvec());
  if (!contains(copy, vv))
    throw std::invalid_argument("classify: vertex not contained in the homothet");

  std::vector<int> counts;
  for (const auto& f : facets_of_cross_polytope()) {
    if (f.signs[axis] != sign) continue;
    const FacetSection s = facet_section(f, copy);
    int edges = 0;
    switch (s.dimension) {
      case 2: edges = static_cast<int>(s.polygon.size()); break;
      case 1: edges = 2; break;
      case 0: edges = 1; break;
      default: edges = 0; break;
    }
    counts.push_back(edges);
  }
  std::sort(counts.begin(), counts.end());
  return counts;
}

}  // namespace covgamma
