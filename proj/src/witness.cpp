#include "covgamma/witness.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace covgamma {

namespace {

void check_node_lambda(const Rational& lambda) {
  if (lambda < Rational(1, 2) || lambda >= 1)
    throw std::invalid_argument("node points: lambda must lie in [1/2, 1)");
}

std::string octant_tag(const std::array<int, 3>& s) {
  std::string t;
  for (int i = 0; i < 3; ++i) t += (s[i] > 0 ? '+' : '-');
  return t;
}

}  // namespace

std::array<Vec3, 3> node_points(const FacetTriangle& f, const Rational& lambda) {
  check_node_lambda(lambda);
  const Rational heavy = 2 * lambda - 1;  // weight on the singled-out vertex
  const Rational light = 1 - lambda;
  std::array<Vec3, 3> out;
  for (int i = 0; i < 3; ++i) {
    // Node i carries the (2*lambda - 1) weight on vertex (2 + i) % 3, so the
    // first node is the barycentric (1-l, 1-l, 2l-1) point.
    const int k = (2 + i) % 3;
    Vec3 p(0, 0, 0);
    for (int j = 0; j < 3; ++j) p = p + (j == k ? heavy : light) * f.vertices[j];
    out[i] = p;
  }
  return out;
}

std::array<Vec3, 3> node_midpoints(const FacetTriangle& f, const Rational& lambda) {
  const auto nodes = node_points(f, lambda);
  const Rational half(1, 2);
  std::array<Vec3, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = half * (nodes[i] + nodes[(i + 1) % 3]);
  return out;
}

WitnessSet build_witness_set(const std::set<WitnessGen>& generators,
                             const Rational& lambda) {
  if (generators.empty())
    throw std::invalid_argument("build_witness_set: no generators");

  WitnessSet w;
  std::map<std::array<std::string, 3>, std::size_t> seen;  // exact coordinate key
  auto push = [&](std::string label, const Vec3& p, bool node_like) {
    const std::array<std::string, 3> key = {to_string(p.x1), to_string(p.x2),
                                            to_string(p.x3)};
    if (seen.count(key)) {
      if (node_like) w.degenerate_nodes = true;
      return;
    }
    seen.emplace(key, w.points.size());
    w.points.push_back({std::move(label), p});
  };

  if (generators.count(WitnessGen::Vertices)) {
    w.generators.push_back("vertices");
    for (int a = 0; a < 3; ++a)
      for (int s : {+1, -1}) {
        Vec3 v(0, 0, 0);
        (a == 0 ? v.x1 : a == 1 ? v.x2 : v.x3) = s;
        push(std::string("v:") + (s > 0 ? "+" : "-") + "e" + std::to_string(a + 1), v,
             false);
      }
  }
  if (generators.count(WitnessGen::FacetCenters)) {
    w.generators.push_back("centers");
    for (const auto& f : facets_of_cross_polytope())
      push("c:" + octant_tag(f.signs), facet_center(f), false);
  }
  if (generators.count(WitnessGen::NodePoints)) {
    check_node_lambda(lambda);
    w.generators.push_back("nodes@" + to_string(lambda));
    for (const auto& f : facets_of_cross_polytope()) {
      const auto nodes = node_points(f, lambda);
      for (int i = 0; i < 3; ++i)
        push("n:" + octant_tag(f.signs) + ":" + std::to_string(i), nodes[i], true);
    }
  }
  if (generators.count(WitnessGen::NodeMidpoints)) {
    check_node_lambda(lambda);
    w.generators.push_back("midpoints@" + to_string(lambda));
    for (const auto& f : facets_of_cross_polytope()) {
      const auto mids = node_midpoints(f, lambda);
      for (int i = 0; i < 3; ++i)
        push("m:" + octant_tag(f.signs) + ":" + std::to_string(i), mids[i], true);
    }
  }
  return w;
}

std::vector<std::vector<std::size_t>> witness_point_perms(const WitnessSet& w) {
  std::map<std::array<std::string, 3>, std::size_t> index;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    const Vec3& p = w.points[i].p;
    index[{to_string(p.x1), to_string(p.x2), to_string(p.x3)}] = i;
  }
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& g : symmetry_group()) {
    std::vector<std::size_t> perm(w.points.size());
    bool ok = true;
    for (std::size_t i = 0; i < w.points.size() && ok; ++i) {
      const Vec3 q = g.apply(w.points[i].p);
      const auto it = index.find({to_string(q.x1), to_string(q.x2), to_string(q.x3)});
      if (it == index.end())
        ok = false;
      else
        perm[i] = it->second;
    }
    if (ok) perms.push_back(std::move(perm));
  }
  return perms;
}

namespace {

using Mask = std::uint64_t;

enum class SearchOutcome { Refuted, Found, Budget };

struct Engine {
  const GaugeBody& body;
  int m;
  Rational target;
  EngineOptions opts;

  Engine(const GaugeBody& b, int m_, Rational target_, EngineOptions opts_)
      : body(b), m(m_), target(std::move(target_)), opts(opts_) {}

  std::vector<RVec> pts;  // reordered points
  std::size_t n = 0;
  std::vector<Mask> conflict;                      // pairwise ratio >= target
  std::vector<std::vector<std::size_t>> perms;     // over reordered indices
  std::vector<std::vector<char>> perm_prefix_ok;   // perm maps [0,d) onto itself
  std::unordered_map<Mask, bool> feasible_memo;    // group mask -> ratio < target

  std::vector<Mask> groups;
  std::vector<int> group_of;  // per reordered point, -1 while unassigned
  std::vector<int> found;     // snapshot of group_of at the moment of success

  std::int64_t nodes = 0;
  std::int64_t lp_calls = 0;
  int max_depth = 0;
  static constexpr int kSymDepthLimit = 16;

  bool group_feasible(Mask mask) {
    const auto it = feasible_memo.find(mask);
    if (it != feasible_memo.end()) return it->second;
    std::vector<RVec> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (Mask{1} << i)) sub.push_back(pts[i]);
    ++lp_calls;
    const bool ok = enclosing_ratio(body, sub) < target;
    feasible_memo.emplace(mask, ok);
    return ok;
  }

  // Lower bound on extra groups: a greedy clique of pairwise-conflicting
  // unassigned points needs one group each, and only clique points that can
  // pair with some open group avoid opening a new one.
  bool clique_prune(std::size_t depth) {
    Mask clique = 0;
    int need_new = 0;
    for (std::size_t i = depth; i < n; ++i) {
      if ((conflict[i] & clique) != clique) continue;
      clique |= Mask{1} << i;
      bool fits_somewhere = false;
      for (const Mask g : groups)
        if ((conflict[i] & g) == 0) {
          fits_somewhere = true;
          break;
        }
      if (!fits_somewhere && static_cast<int>(groups.size()) >= m) return true;
      if (!fits_somewhere) ++need_new;
    }
    return static_cast<int>(groups.size()) + need_new > m;
  }

  Mask apply_perm(const std::vector<std::size_t>& perm, Mask mask) const {
    Mask out = 0;
    while (mask) {
      const int b = std::countr_zero(mask);
      mask &= mask - 1;
      out |= Mask{1} << perm[b];
    }
    return out;
  }

  // True when some symmetry fixing point p and stabilizing the current
  // partition maps an already-tried group onto group k.
  bool symmetric_to_tried(std::size_t p, std::size_t k,
                          const std::vector<Mask>& tried) const {
    if (tried.empty()) return false;
    for (std::size_t gi = 0; gi < perms.size(); ++gi) {
      const auto& perm = perms[gi];
      if (!perm_prefix_ok[gi][p]) continue;  // must permute the assigned prefix
      if (perm[p] != p) continue;
      Mask image = 0;
      bool stable = true;
      for (const Mask g : groups) {
        const Mask img = apply_perm(perm, g);
        bool found = false;
        for (const Mask h : groups)
          if (h == img) {
            found = true;
            break;
          }
        if (!found) {
          stable = false;
          break;
        }
        if (g == groups[k]) image = img;
      }
      if (!stable) continue;
      for (const Mask t : tried)
        if (t == image) return true;
    }
    return false;
  }

  SearchOutcome dfs(std::size_t depth) {
    if (++nodes > opts.node_budget) return SearchOutcome::Budget;
    if (static_cast<int>(depth) > max_depth) max_depth = static_cast<int>(depth);
    if (depth == n) {
      found = group_of;
      return SearchOutcome::Found;
    }
    if (clique_prune(depth)) return SearchOutcome::Refuted;

    const Mask bit = Mask{1} << depth;
    const bool use_sym = opts.symmetry_reduction && !perms.empty() &&
                         depth <= static_cast<std::size_t>(kSymDepthLimit);
    std::vector<Mask> tried;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (conflict[depth] & groups[k]) continue;
      if (use_sym && symmetric_to_tried(depth, k, tried)) {
        tried.push_back(groups[k]);
        continue;
      }
      tried.push_back(groups[k]);
      if (!group_feasible(groups[k] | bit)) continue;
      groups[k] |= bit;
      group_of[depth] = static_cast<int>(k);
      const SearchOutcome r = dfs(depth + 1);
      groups[k] &= ~bit;
      group_of[depth] = -1;
      if (r != SearchOutcome::Refuted) return r;
    }
    if (static_cast<int>(groups.size()) < m) {
      groups.push_back(bit);
      group_of[depth] = static_cast<int>(groups.size()) - 1;
      const SearchOutcome r = dfs(depth + 1);
      groups.pop_back();
      group_of[depth] = -1;
      if (r != SearchOutcome::Refuted) return r;
    }
    return SearchOutcome::Refuted;
  }
};

}  // namespace

LowerBoundVerdict certify_lower_bound_points(
    const GaugeBody& body, const std::vector<RVec>& points, int m,
    const Rational& lambda_target, const EngineOptions& opts,
    const std::vector<std::vector<std::size_t>>& point_perms) {
  if (m < 1) throw std::invalid_argument("certify_lower_bound: m >= 1 required");
  if (lambda_target <= 0)
    throw std::invalid_argument("certify_lower_bound: lambda_target must be > 0");
  if (points.empty())
    throw std::invalid_argument("certify_lower_bound: empty witness set");
  if (points.size() > 64)
    throw std::invalid_argument("certify_lower_bound: at most 64 points supported");

  const std::size_t n = points.size();

  // Pairwise conflicts (ratio >= target) on the original indexing.
  const bool symmetric = is_centrally_symmetric(body);
  std::vector<std::vector<bool>> pair_conflict(n, std::vector<bool>(n, false));
  Engine engine(body, m, lambda_target, opts);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational r;
      if (symmetric) {
        r = min_ratio_two_points_symmetric(body, points[i], points[j]);
      } else {
        ++engine.lp_calls;
        r = enclosing_ratio(body, {points[i], points[j]});
      }
      pair_conflict[i][j] = pair_conflict[j][i] = (r >= lambda_target);
    }

  // Branch order: densest conflict rows first, stable otherwise (vertices
  // naturally lead, node points stay grouped by facet).
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<int> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pair_conflict[i][j]) ++degree[i];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

  engine.n = n;
  engine.pts.resize(n);
  engine.conflict.assign(n, 0);
  std::vector<std::size_t> pos(n);  // original index -> reordered position
  for (std::size_t i = 0; i < n; ++i) {
    engine.pts[i] = points[order[i]];
    pos[order[i]] = i;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pair_conflict[order[i]][order[j]]) engine.conflict[i] |= Mask{1} << j;

  if (opts.symmetry_reduction) {
    for (const auto& perm : point_perms) {
      if (perm.size() != n) continue;
      std::vector<std::size_t> reordered(n);
      bool identity = true;
      for (std::size_t i = 0; i < n; ++i) {
        reordered[i] = pos[perm[order[i]]];
        identity &= (reordered[i] == i);
      }
      if (!identity) engine.perms.push_back(std::move(reordered));
    }
    engine.perm_prefix_ok.resize(engine.perms.size());
    for (std::size_t gi = 0; gi < engine.perms.size(); ++gi) {
      // perm_prefix_ok[gi][d]: the perm maps the assigned prefix [0, d)
      // onto itself, i.e. max(perm[0..d-1]) < d.
      auto& ok = engine.perm_prefix_ok[gi];
      ok.assign(n, 0);
      std::size_t mx = 0;
      for (std::size_t d = 0; d < n; ++d) {
        if (d == 0) {
          ok[0] = 1;  // empty prefix
        } else {
          mx = std::max(mx, engine.perms[gi][d - 1]);
          ok[d] = (mx < d) ? 1 : 0;
        }
      }
    }
  }

  engine.group_of.assign(n, -1);

  LowerBoundVerdict verdict;
  verdict.lambda_target = lambda_target;
  verdict.m = m;

  const SearchOutcome out = engine.dfs(0);
  verdict.nodes_explored = engine.nodes;
  verdict.lp_calls = engine.lp_calls;
  verdict.max_depth = engine.max_depth;

  switch (out) {
    case SearchOutcome::Refuted:
      verdict.status = LowerBoundStatus::BoundCertified;
      break;
    case SearchOutcome::Budget:
      verdict.status = LowerBoundStatus::Inconclusive;
      verdict.budget_exhausted = true;
      break;
    case SearchOutcome::Found: {
      verdict.status = LowerBoundStatus::Inconclusive;
      int group_count = 0;
      for (const int g : engine.found) group_count = std::max(group_count, g + 1);
      std::vector<AssignmentGroup> groups(group_count);
      for (std::size_t i = 0; i < n; ++i)
        groups[engine.found[i]].point_indices.push_back(order[i]);
      for (auto& g : groups) {
        std::sort(g.point_indices.begin(), g.point_indices.end());
        std::vector<RVec> sub;
        for (const std::size_t idx : g.point_indices) sub.push_back(points[idx]);
        g.ratio = min_ratio(body, sub).ratio;  // fresh, not memoized
        if (g.ratio >= lambda_target)
          throw std::logic_error("certify_lower_bound: counterexample failed re-check");
      }
      verdict.counterexample = std::move(groups);
      break;
    }
  }
  return verdict;
}

LowerBoundVerdict certify_lower_bound(int m, const Rational& lambda_target,
                                      const WitnessSet& w, const EngineOptions& opts) {
  std::vector<RVec> pts;
  pts.reserve(w.points.size());
  for (const auto& lp : w.points) pts.push_back(lp.p.to_rvec());
  const auto perms =
      opts.symmetry_reduction ? witness_point_perms(w) : std::vector<std::vector<std::size_t>>{};
  return certify_lower_bound_points(GaugeBody::cross3(), pts, m, lambda_target, opts,
                                    perms);
}

Rational eta_node_triple_check(const Rational& eta, const std::array<Vec3, 3>& pts,
                         const std::array<int, 3>& facet_indices) {
  const auto facets = facets_of_cross_polytope();
  for (int i = 0; i < 3; ++i) {
    if (facet_indices[i] < 0 || facet_indices[i] >= 8)
      throw std::invalid_argument("eta_node_triple_check: facet index out of range");
    for (int j = i + 1; j < 3; ++j)
      if (facet_indices[i] == facet_indices[j])
        throw std::invalid_argument("eta_node_triple_check: facets must be distinct");
    const auto nodes = node_points(facets[facet_indices[i]], eta);
    if (std::find(nodes.begin(), nodes.end(), pts[i]) == nodes.end())
      throw std::invalid_argument("eta_node_triple_check: point is not an eta-node of its facet");
  }
  const Rational ratio =
      min_ratio(GaugeBody::cross3(), {pts[0].to_rvec(), pts[1].to_rvec(), pts[2].to_rvec()})
          .ratio;
  if (ratio < eta)
    throw std::logic_error("eta_node_triple_check: enclosing ratio below eta");
  return ratio;
}

}  // namespace covgamma
