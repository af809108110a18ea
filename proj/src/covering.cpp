#include "covgamma/covering.hpp"

#include <random>
#include <stdexcept>

#include "covgamma/lp.hpp"

namespace covgamma {

void CoveringConfig::validate() const {
  if (lambda <= 0) throw std::invalid_argument("covering config: lambda must be > 0");
  if (translations.empty())
    throw std::invalid_argument("covering config: at least one translation");
  for (const auto& u : translations)
    if (static_cast<int>(u.size()) != body.dim())
      throw std::invalid_argument("covering config: translation dimension mismatch");
}

namespace {

struct Cover {
  const std::vector<HPolytope>& copies;  // closed homothets, original order
  std::int64_t budget;
  CoverageStats stats;

  // Cells are intersections of halfspaces drawn from the body's fixed
  // direction set, so canonical_merge keeps them at most f halfspaces deep
  // no matter the recursion depth.
  CoverageResult run(const HPolytope& cell, std::vector<int> remaining, int depth) {
    ++stats.cells;
    if (depth > stats.max_depth) stats.max_depth = depth;
    if (stats.cells > budget) return {CoverageStatus::Inconclusive, std::nullopt, stats};

    // Fast exact emptiness for opposite direction pairs: n.x <= b and
    // -n.x <= b' force b + b' >= 0 (> 0 if either is strict).
    for (std::size_t i = 0; i < cell.halfspaces.size(); ++i)
      for (std::size_t j = i + 1; j < cell.halfspaces.size(); ++j) {
        const auto& hi = cell.halfspaces[i];
        const auto& hj = cell.halfspaces[j];
        if (!is_zero(add(hi.normal, hj.normal))) continue;
        const Rational s = hi.rhs + hj.rhs;
        if (s < 0 || (s == 0 && (hi.strict || hj.strict)))
          return {CoverageStatus::Covered, std::nullopt, stats};
      }

    ++stats.lp_calls;
    const EmptinessResult e = is_empty(cell);
    if (e.empty) return {CoverageStatus::Covered, std::nullopt, stats};

    // Pick the first remaining copy containing the witness; if none does,
    // the witness is an uncovered point of the body.
    int chosen = -1;
    for (const int idx : remaining) {
      if (contains(copies[idx], e.witness)) {
        chosen = idx;
        break;
      }
    }
    if (chosen < 0) return {CoverageStatus::NotCovered, e.witness, stats};

    std::vector<int> rest;
    rest.reserve(remaining.size() - 1);
    for (const int idx : remaining)
      if (idx != chosen) rest.push_back(idx);

    // cell \ copy as disjoint cells: cell_j keeps the first j-1 halfspaces
    // of the copy and strictly violates the j-th.
    HPolytope prefix = cell;
    const auto& copy = copies[chosen];
    for (std::size_t j = 0; j < copy.halfspaces.size(); ++j) {
      const auto& h = copy.halfspaces[j];
      HPolytope sub = prefix;
      sub.halfspaces.push_back({negate(h.normal), -h.rhs, true});
      const CoverageResult r = run(canonical_merge(sub), rest, depth + 1);
      if (r.status != CoverageStatus::Covered) return r;
      prefix.halfspaces.push_back(h);
      prefix = canonical_merge(prefix);
    }
    return {CoverageStatus::Covered, std::nullopt, stats};
  }
};

}  // namespace

CoverageResult verify_covering(const CoveringConfig& cfg, std::int64_t cell_budget) {
  cfg.validate();
  if (!is_bounded(cfg.body.poly))
    throw std::invalid_argument("verify_covering: body must be bounded");

  std::vector<HPolytope> copies;
  copies.reserve(cfg.translations.size());
  for (const auto& u : cfg.translations)
    copies.push_back(homothet(cfg.body.poly, cfg.lambda, u));

  Cover cover{copies, cell_budget, {}};
  std::vector<int> all(copies.size());
  for (std::size_t i = 0; i < copies.size(); ++i) all[i] = static_cast<int>(i);
  CoverageResult r = cover.run(canonical_merge(cfg.body.poly), all, 0);
  r.stats = cover.stats;

  if (r.status == CoverageStatus::NotCovered) {
    const RVec& w = *r.witness;
    if (!contains(cfg.body.poly, w))
      throw std::logic_error("verify_covering: witness escaped the body");
    for (const auto& c : copies)
      if (contains(c, w))
        throw std::logic_error("verify_covering: witness lies in a copy");
  }
  return r;
}

CoverageResult verify_covering_2d(const std::array<RVec, 3>& triangle,
                                  const Rational& lambda,
                                  const std::vector<RVec>& translations,
                                  std::int64_t cell_budget) {
  const GaugeBody body = GaugeBody::triangle2(triangle);
  const Rational third(1, 3);
  const RVec centroid =
      scale(third, add(add(triangle[0], triangle[1]), triangle[2]));
  // T = B + c for the centered body B, so T covered by lambda*T + u_i is
  // B covered by lambda*B + (u_i + (lambda - 1) c).
  CoveringConfig cfg{body, lambda, {}};
  cfg.translations.reserve(translations.size());
  for (const auto& u : translations)
    cfg.translations.push_back(add(u, scale(lambda - 1, centroid)));
  return verify_covering(cfg, cell_budget);
}

namespace {

// Axis-aligned bounding box of the body via 2*dim exact LPs.
std::vector<std::pair<Rational, Rational>> bounding_box(const HPolytope& p) {
  std::vector<std::pair<Rational, Rational>> box;
  LpProblem lp;
  lp.objective.assign(p.dim, Rational(0));
  for (const auto& h : p.halfspaces)
    lp.constraints.push_back({h.normal, Relation::LessEq, h.rhs});
  for (int i = 0; i < p.dim; ++i) {
    Rational lo, hi;
    lp.objective[i] = 1;
    lp.sense = Sense::Minimize;
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::Optimal) throw std::logic_error("bounding_box: unbounded");
    lo = r.value;
    lp.sense = Sense::Maximize;
    r = solve_lp(lp);
    if (r.status != LpStatus::Optimal) throw std::logic_error("bounding_box: unbounded");
    hi = r.value;
    lp.objective[i] = 0;
    box.emplace_back(std::move(lo), std::move(hi));
  }
  return box;
}

template <typename Fn>
void for_each_sample(const CoveringConfig& cfg, int n, std::uint64_t seed, Fn&& fn) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("sample_check: n >= 1 required");

  const auto box = bounding_box(cfg.body.poly);
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kDen = 1 << 20;

  std::vector<HPolytope> copies;
  for (const auto& u : cfg.translations)
    copies.push_back(homothet(cfg.body.poly, cfg.lambda, u));

  for (int k = 0; k < n; ++k) {
    RVec x(cfg.body.dim());
    for (;;) {
      for (int i = 0; i < cfg.body.dim(); ++i) {
        // Exact rational grid point inside the box.
        const Rational span = box[i].second - box[i].first;
        const std::uint64_t r = rng() % (kDen + 1);
        x[i] = box[i].first + span * Rational(static_cast<std::int64_t>(r), kDen);
      }
      if (contains(cfg.body.poly, x)) break;
    }
    bool covered = false;
    for (const auto& c : copies)
      if (contains(c, x)) {
        covered = true;
        break;
      }
    fn(x, covered);
  }
}

}  // namespace

Rational sample_check(const CoveringConfig& cfg, int n, std::uint64_t seed) {
  std::int64_t covered = 0;
  for_each_sample(cfg, n, seed, [&](const RVec&, bool c) {
    if (c) ++covered;
  });
  return Rational(covered, n);
}

std::vector<RVec> sample_uncovered(const CoveringConfig& cfg, int n,
                                   std::uint64_t seed, std::size_t max_out) {
  std::vector<RVec> out;
  for_each_sample(cfg, n, seed, [&](const RVec& x, bool c) {
    if (!c && out.size() < max_out) out.push_back(x);
  });
  return out;
}

}  // namespace covgamma
