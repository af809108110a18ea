// Acceptance suite: runs every criterion at its stated budget and prints
// one PASS/FAIL line each. Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <string>

#include <json.hpp>

#include "covgamma/configs.hpp"
#include "covgamma/json_io.hpp"
#include "covgamma/triangle.hpp"
#include "oracle.hpp"

using namespace covgamma;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 = no stated limit
};

void report(const Criterion& c, bool ok, double secs, const std::string& note) {
  const bool in_time = c.limit_s == 0 || secs <= c.limit_s;
  const bool pass = ok && in_time;
  if (!pass) ++g_failures;
  std::string timing = std::to_string(secs) + " s";
  if (c.limit_s > 0) timing += " / limit " + std::to_string((int)c.limit_s) + " s";
  std::printf("%s  criterion %2d: %s (%s)%s%s\n", pass ? "PASS" : "FAIL", c.id,
              c.name.c_str(), timing.c_str(), note.empty() ? "" : " -- ",
              note.c_str());
  std::fflush(stdout);
}

void run(const Criterion& c, const std::function<bool(std::string&)>& body) {
  std::string note;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(c, ok, secs, note);
}

std::vector<RVec> axis_translations(long num, long den) {
  std::vector<RVec> t;
  for (int a = 0; a < 3; ++a)
    for (int s : {+1, -1}) {
      RVec u(3, Rational(0));
      u[a] = Rational(s * num, den);
      t.push_back(std::move(u));
    }
  return t;
}

LpProblem random_boxed_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_d(1, 4);
  std::uniform_int_distribution<int> rows_d(1, 8);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> rhs(-6, 6);
  std::uniform_int_distribution<int> flip(0, 1);
  LpProblem p;
  const int n = dim_d(rng);
  p.sense = flip(rng) ? Sense::Maximize : Sense::Minimize;
  p.objective.resize(n);
  for (auto& c : p.objective) c = coef(rng);
  p.bounds.assign(n, VarBounds{Rational(-16), Rational(16)});
  const int m = rows_d(rng);
  for (int i = 0; i < m; ++i) {
    LpConstraint c;
    c.coeffs.resize(n);
    bool nonzero = false;
    for (auto& x : c.coeffs) {
      x = coef(rng);
      nonzero |= (x != 0);
    }
    if (!nonzero) c.coeffs[0] = 1;
    c.rel = flip(rng) ? Relation::LessEq : Relation::GreaterEq;
    c.rhs = rhs(rng);
    p.constraints.push_back(std::move(c));
  }
  return p;
}

}  // namespace

int main() {
  const GaugeBody k1 = GaugeBody::cross3();

  run({1, "m=6 upper bound: axis copies at 2/3 cover", 10}, [&](std::string& note) {
    const CoverageResult r =
        verify_covering(CoveringConfig{k1, Rational(2, 3), axis_translations(1, 3)});
    note = "cells=" + std::to_string(r.stats.cells);
    return r.status == CoverageStatus::Covered;
  });

  run({2, "m=6 sharpness probe: 13/20 fails with a verified witness", 30},
      [&](std::string& note) {
        const CoveringConfig cfg{k1, Rational(13, 20), axis_translations(1, 3)};
        const CoverageResult r = verify_covering(cfg);
        if (r.status != CoverageStatus::NotCovered || !r.witness) return false;
        const RVec& w = *r.witness;
        if (l1_norm(w) > 1) return false;
        for (const auto& u : cfg.translations)
          if (l1_norm(sub(w, u)) <= cfg.lambda) return false;
        note = "witness=" + to_string(w);
        return true;
      });

  run({3, "m=5 lower bound at 1 from the vertices", 1}, [&](std::string& note) {
    const LowerBoundVerdict v = certify_lower_bound(
        5, Rational(1), build_witness_set({WitnessGen::Vertices}, Rational(1, 2)));
    note = "nodes=" + std::to_string(v.nodes_explored);
    return v.status == LowerBoundStatus::BoundCertified;
  });

  run({4, "m=9 lower bound at 2/3 from vertices and centers", 600},
      [&](std::string& note) {
        EngineOptions opts;
        opts.node_budget = 200'000'000;
        const WitnessSet w = build_witness_set(
            {WitnessGen::Vertices, WitnessGen::FacetCenters}, Rational(2, 3));
        const LowerBoundVerdict v = certify_lower_bound(9, Rational(2, 3), w, opts);
        if (v.status == LowerBoundStatus::BoundCertified) {
          note = "certified, nodes=" + std::to_string(v.nodes_explored);
          return true;
        }
        // Fallback enrichment path: node points just below 2/3. An
        // assignment counterexample is not a bound violation, so only a
        // certified contradiction could fail this criterion.
        WitnessSet enriched = w;
        const WitnessSet extra = build_witness_set(
            {WitnessGen::NodePoints}, Rational(2, 3) - Rational(1, 100));
        for (const auto& p : extra.points) enriched.points.push_back(p);
        const LowerBoundVerdict v2 =
            certify_lower_bound(9, Rational(2, 3), enriched, opts);
        note = std::string("base inconclusive; enrichment ") +
               (v2.status == LowerBoundStatus::BoundCertified ? "certified"
                                                              : "inconclusive");
        return v2.status == LowerBoundStatus::BoundCertified;
      });

  run({5, "enclosing-ratio spot checks, exact equalities", 7},
      [&](std::string& note) {
        // seven checks, each under the stated 1 s
        const auto fs = facets_of_cross_polytope();
        auto v3 = [](long a, long b, long c, long den = 1) {
          return RVec{Rational(a, den), Rational(b, den), Rational(c, den)};
        };
        int good = 0, checks = 0;
        auto expect = [&](std::function<Rational()> f, const Rational& want,
                          const char* what) {
          ++checks;
          const auto t0 = Clock::now();
          const Rational got = f();
          const double s = std::chrono::duration<double>(Clock::now() - t0).count();
          if (got == want && s < 1.0)
            ++good;
          else
            note += std::string(" [") + what + " failed]";
        };
        expect([&] { return min_ratio(k1, {v3(1, 0, 0), v3(-1, 0, 0)}).ratio; },
               Rational(1), "opposite-vertex pair");
        expect([&] { return min_ratio(k1, {v3(1, 0, 0), v3(0, 1, 0)}).ratio; },
               Rational(1), "adjacent-vertex pair");
        expect(
            [&] { return min_ratio(k1, {v3(1, 1, 1, 3), v3(-1, -1, 1, 3)}).ratio; },
            Rational(2, 3), "centers sharing a vertex");
        expect(
            [&] { return min_ratio(k1, {v3(1, 1, 1, 3), v3(-1, -1, -1, 3)}).ratio; },
            Rational(1), "non-intersecting centers");
        expect(
            [&] {
              return min_ratio(k1, {v3(1, 1, 1, 3), v3(-1, 1, 1, 3), v3(-1, -1, 1, 3)})
                  .ratio;
            },
            Rational(2, 3), "three centers around a vertex");
        for (const Rational& eta : {Rational(3, 5), Rational(4, 7)}) {
          expect(
              [&] {
                std::array<Vec3, 3> pts;
                const std::array<int, 3> idx = {0, 4, 6};
                for (int i = 0; i < 3; ++i) pts[i] = node_points(fs[idx[i]], eta)[1];
                return eta_node_triple_check(eta, pts, idx);
              },
              eta, ("eta-node triple at " + to_string(eta)).c_str());
        }
        note = std::to_string(good) + "/" + std::to_string(checks) +
               " exact equalities" + note;
        return good == checks;
      });

  run({6, "triangle covering functional: gamma3 = 2/3 with both certificates", 10},
      [&](std::string& note) {
        const std::array<RVec, 3> tri = {RVec{Rational(0), Rational(0)},
                                         RVec{Rational(1), Rational(0)},
                                         RVec{Rational(0), Rational(1)}};
        const TriangleGamma3Certificate c = triangle_gamma3(tri);
        note = "covering cells=" + std::to_string(c.covering.stats.cells);
        return c.value == Rational(2, 3) &&
               c.covering.status == CoverageStatus::Covered &&
               c.lower.status == LowerBoundStatus::BoundCertified;
      });

  run({7, "m=10 upper bound protocol at 3/5", 1800}, [&](std::string& note) {
    const auto rep = find_certified_upper(10, Rational(3, 5));
    if (rep.attempts.empty()) return false;
    const auto& literal = rep.attempts.front();
    if (literal.id != "m10") return false;
    if (literal.verified == VerifyState::Covered) {
      note = "literal list covers";
      return true;
    }
    if (literal.verified != VerifyState::NotCovered) return false;
    if (!rep.winner || rep.winner->verified != VerifyState::Covered ||
        rep.winner->translations.size() != 10)
      return false;
    note = "literal NotCovered (witness " + to_string(*literal.witness) +
           "); completion " + rep.winner->id + " covers with 10 copies";
    return true;
  });

  run({8, "m=14 upper bound protocol at 4/7", 3600}, [&](std::string& note) {
    const auto rep = find_certified_upper(14, Rational(4, 7));
    if (!rep.winner || rep.winner->verified != VerifyState::Covered ||
        rep.winner->translations.size() > 14)
      return false;
    note = "covered by " + std::to_string(rep.winner->translations.size()) +
           " copies via " + rep.winner->id;
    return true;
  });

  run({9, "node-point degeneration at 2/3 on all facets", 1}, [&](std::string&) {
    for (const auto& f : facets_of_cross_polytope()) {
      for (const auto& n : node_points(f, Rational(2, 3)))
        if (!(n == facet_center(f))) return false;
    }
    return true;
  });

  run({10, "property suites: LP oracle, membership, equivariance, sampling", 0},
      [&](std::string& note) {
        // (a) 500 random boxed LPs against exhaustive vertex enumeration
        std::mt19937_64 rng(987654321);
        for (int t = 0; t < 500; ++t) {
          const LpProblem p = random_boxed_lp(rng);
          const LpResult r = solve_lp(p);
          const auto oracle_val = oracle::vertex_optimum(p);
          if (r.status == LpStatus::Optimal) {
            if (!oracle_val || r.value != *oracle_val) return false;
            if (!oracle::feasible(oracle::lp_rows(p), r.point)) return false;
            if (dot(p.objective, r.point) != r.value) return false;
          } else if (r.status == LpStatus::Infeasible) {
            if (oracle_val) return false;
          } else {
            return false;  // boxed LPs cannot be unbounded
          }
        }
        // (b) homothet membership vs direct l1 evaluation, 10^4 points
        const HPolytope body = cross_polytope();
        auto rnd = [&](long lo, long hi, long den) {
          std::uniform_int_distribution<long> d(lo, hi);
          return Rational(d(rng), den);
        };
        for (int t = 0; t < 10'000; ++t) {
          const RVec x = {rnd(-1024, 1024, 512), rnd(-1024, 1024, 512),
                          rnd(-1024, 1024, 512)};
          const Rational lam = rnd(1, 1024, 512);
          const RVec u = {rnd(-256, 256, 512), rnd(-256, 256, 512),
                          rnd(-256, 256, 512)};
          if (contains(homothet(body, lam, u), x) != (l1_norm(sub(x, u)) <= lam))
            return false;
        }
        // (c) symmetry equivariance of min_ratio on 200 random point sets
        const auto& group = symmetry_group();
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
        std::uniform_int_distribution<int> nd(2, 5);
        for (int t = 0; t < 200; ++t) {
          const auto& op = group[pick(rng)];
          std::vector<RVec> pts, mapped;
          const int n = nd(rng);
          for (int i = 0; i < n; ++i) {
            pts.push_back({rnd(-12, 12, 7), rnd(-12, 12, 7), rnd(-12, 12, 7)});
            mapped.push_back(op.apply(pts.back()));
          }
          if (min_ratio(k1, pts).ratio != min_ratio(k1, mapped).ratio) return false;
        }
        // (d) sampling agrees with every Covered catalog verdict
        int covered_entries = 0;
        for (auto e : catalog()) {
          certify_entry(e);
          if (e.verified != VerifyState::Covered) continue;
          ++covered_entries;
          if (sample_check(e.to_config(), 10'000, 20250810) != 1) return false;
        }
        note = std::to_string(covered_entries) + " covered entries sampled clean";
        return covered_entries >= 3;
      });

  run({11, "gamma table 4..17 via the CLI", 0}, [&](std::string& note) {
    const char* bin = std::getenv("COVGAMMA_BIN");
    const std::string dir = "/tmp/covgamma_acceptance_table";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) return false;
    Json rows;
    if (bin) {
      const std::string cmd = std::string(bin) + " table --m-min 4 --m-max 17 --out-dir " +
                              dir + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return false;
      std::ifstream f(dir + "/gamma_table.json");
      if (!f) return false;
      Json j;
      f >> j;
      rows = j.at("rows");
    } else {
      rows = Json::array();
      for (const auto& r : gamma_table(4, 17)) rows.push_back(table_row_json(r));
    }
    if (rows.size() != 14) return false;
    const std::vector<std::string> ladder = {"1",   "1",   "2/3", "2/3", "2/3",
                                             "2/3", "3/5", "3/5", "3/5", "3/5",
                                             "4/7", "4/7", "4/7", "4/7"};
    int lower_certified = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].at("upper") != ladder[i]) return false;
      const Json& lower = rows[i].at("lower");
      if (!lower.is_null()) {
        ++lower_certified;
        // a certified lower bound must match the ladder and stay below upper
        if (lower != ladder[i]) return false;
        const Rational lo = parse_rational_or_throw(lower.get<std::string>());
        const Rational up =
            parse_rational_or_throw(rows[i].at("upper").get<std::string>());
        if (lo > up) return false;
      }
    }
    // the ladder must certify through m=11; m=12..17 is best-effort and
    // recorded inconclusive with verified assignments
    if (lower_certified < 8) return false;
    note = "uppers all covered; lower certified on " + std::to_string(lower_certified) +
           "/14 rows";
    return true;
  });

  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", g_failures);
  return g_failures;
}
