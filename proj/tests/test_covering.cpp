#include <doctest.h>

#include <random>

#include "covgamma/covering.hpp"
#include "covgamma/triangle.hpp"

using namespace covgamma;

namespace {

RVec v3(long a, long b, long c, long den = 1) {
  return {Rational(a, den), Rational(b, den), Rational(c, den)};
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

CoveringConfig cross_config(const Rational& lambda, std::vector<RVec> t) {
  return CoveringConfig{GaugeBody::cross3(), lambda, std::move(t)};
}

const std::array<RVec, 3> kTriangle = {RVec{Rational(0), Rational(0)},
                                       RVec{Rational(1), Rational(0)},
                                       RVec{Rational(0), Rational(1)}};

}  // namespace

TEST_CASE("identity copy covers") {
  const CoverageResult r = verify_covering(cross_config(Rational(1), {v3(0, 0, 0)}));
  CHECK(r.status == CoverageStatus::Covered);
  CHECK(!r.witness);
}

TEST_CASE("six axis copies at 2/3 cover the cross-polytope") {
  const CoverageResult r =
      verify_covering(cross_config(Rational(2, 3), axis_translations(1, 3)));
  CHECK(r.status == CoverageStatus::Covered);
  CHECK(r.stats.cells > 1);
  MESSAGE("m=6 covering: cells=", r.stats.cells, " depth=", r.stats.max_depth,
          " lp_calls=", r.stats.lp_calls);
}

TEST_CASE("six axis copies at 13/20 fail with a verified witness") {
  const CoveringConfig cfg = cross_config(Rational(13, 20), axis_translations(1, 3));
  const CoverageResult r = verify_covering(cfg);
  REQUIRE(r.status == CoverageStatus::NotCovered);
  REQUIRE(r.witness.has_value());
  const RVec& w = *r.witness;
  CHECK(l1_norm(w) <= 1);  // inside the body
  for (const auto& u : cfg.translations) CHECK(l1_norm(sub(w, u)) > Rational(13, 20));

  // deterministic: a second run yields the identical witness
  const CoverageResult r2 = verify_covering(cfg);
  CHECK(*r2.witness == w);
}

TEST_CASE("single off-center copy fails") {
  const CoverageResult r =
      verify_covering(cross_config(Rational(1, 2), {v3(1, 0, 0, 2)}));
  REQUIRE(r.status == CoverageStatus::NotCovered);
  CHECK(l1_norm(*r.witness) <= 1);
}

TEST_CASE("coverage is monotone in lambda on the axis family") {
  const CoverageResult r = verify_covering(
      cross_config(Rational(2, 3) + Rational(1, 100), axis_translations(1, 3)));
  CHECK(r.status == CoverageStatus::Covered);
}

TEST_CASE("symmetry images of a covered config stay covered") {
  const auto& group = symmetry_group();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  for (int t = 0; t < 3; ++t) {
    const auto& op = group[pick(rng)];
    std::vector<RVec> mapped;
    for (const auto& u : axis_translations(1, 3)) mapped.push_back(op.apply(u));
    const CoverageResult r =
        verify_covering(cross_config(Rational(2, 3), std::move(mapped)));
    CHECK(r.status == CoverageStatus::Covered);
  }
}

TEST_CASE("budget exhaustion reports Inconclusive, never a verdict") {
  const CoverageResult r =
      verify_covering(cross_config(Rational(2, 3), axis_translations(1, 3)), 3);
  CHECK(r.status == CoverageStatus::Inconclusive);
  CHECK(!r.witness);
}

TEST_CASE("cell count stays within the f^m bound") {
  const CoverageResult r =
      verify_covering(cross_config(Rational(2, 3), axis_translations(1, 3)));
  REQUIRE(r.status == CoverageStatus::Covered);
  // 8 halfspaces, 6 copies; the sequential-complement tree is far below 8^6
  CHECK(r.stats.cells < 262144);
}

TEST_CASE("sample_check agrees with the exact verdicts") {
  SUBCASE("covered config: fraction is exactly 1") {
    const Rational f =
        sample_check(cross_config(Rational(2, 3), axis_translations(1, 3)), 10'000, 42);
    CHECK(f == 1);
  }
  SUBCASE("13/20 config: uncovered samples exist") {
    const Rational f = sample_check(
        cross_config(Rational(13, 20), axis_translations(1, 3)), 10'000, 42);
    CHECK(f < 1);
    MESSAGE("13/20 sampled coverage fraction: ", to_string(f));
  }
  SUBCASE("n=1 on the identity copy") {
    CHECK(sample_check(cross_config(Rational(1), {v3(0, 0, 0)}), 1, 7) == 1);
  }
}

TEST_CASE("2D: three corner homothets at 2/3 cover the triangle") {
  const CoverageResult r = verify_covering_2d(
      kTriangle, Rational(2, 3), corner_anchor_translations(kTriangle, Rational(2, 3)));
  CHECK(r.status == CoverageStatus::Covered);
}

TEST_CASE("2D: the same anchors at 1/2 leave the center uncovered") {
  const auto anchors = corner_anchor_translations(kTriangle, Rational(1, 2));
  const CoverageResult r = verify_covering_2d(kTriangle, Rational(1, 2), anchors);
  REQUIRE(r.status == CoverageStatus::NotCovered);
  REQUIRE(r.witness.has_value());
  // witness (in centered coordinates) must avoid every copy of the centered body
  const GaugeBody body = GaugeBody::triangle2(kTriangle);
  const RVec c = {Rational(1, 3), Rational(1, 3)};
  for (const auto& u : anchors) {
    const RVec shifted = add(u, scale(Rational(1, 2) - 1, c));
    CHECK(gauge_value(body, sub(*r.witness, shifted)) > Rational(1, 2));
  }
}

TEST_CASE("2D: one identity copy covers the triangle") {
  const CoverageResult r =
      verify_covering_2d(kTriangle, Rational(1), {RVec{Rational(0), Rational(0)}});
  CHECK(r.status == CoverageStatus::Covered);
}

TEST_CASE("triangle_gamma3 certifies 2/3 with both sub-certificates") {
  const TriangleGamma3Certificate c = triangle_gamma3(kTriangle);
  CHECK(c.value == Rational(2, 3));
  CHECK(c.covering.status == CoverageStatus::Covered);
  CHECK(c.lower.status == LowerBoundStatus::BoundCertified);

  // an affinely different triangle gives the same value
  const std::array<RVec, 3> other = {RVec{Rational(-2), Rational(1)},
                                     RVec{Rational(3), Rational(0)},
                                     RVec{Rational(1), Rational(4)}};
  CHECK(triangle_gamma3(other).value == Rational(2, 3));

  CHECK_THROWS_AS(triangle_gamma3({RVec{Rational(0), Rational(0)},
                                   RVec{Rational(1), Rational(1)},
                                   RVec{Rational(2), Rational(2)}}),
                  std::invalid_argument);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(verify_covering(cross_config(Rational(0), {v3(0, 0, 0)})),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_covering(cross_config(Rational(1), {})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      verify_covering(cross_config(Rational(1), {RVec{Rational(0), Rational(0)}})),
      std::invalid_argument);
}
