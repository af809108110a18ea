#include <doctest.h>

#include <algorithm>
#include <set>

#include "covgamma/configs.hpp"

using namespace covgamma;

namespace {

std::set<std::array<std::string, 3>> tset(const std::vector<Vec3>& t) {
  std::set<std::array<std::string, 3>> s;
  for (const auto& v : t) s.insert({to_string(v.x1), to_string(v.x2), to_string(v.x3)});
  return s;
}

}  // namespace

TEST_CASE("catalog holds the fixed constructions") {
  const auto entries = catalog();
  REQUIRE(entries.size() == 6);
  for (const auto& e : entries) {
    CHECK(static_cast<int>(e.translations.size()) <= e.m);
    CHECK(e.verified == VerifyState::Unchecked);
  }

  const auto m6 = *catalog_entry("m6");
  CHECK(m6.m == 6);
  CHECK(m6.lambda == Rational(2, 3));
  CHECK(tset(m6.translations) ==
        tset({Vec3(Rational(1, 3), 0, 0), Vec3(Rational(-1, 3), 0, 0),
              Vec3(0, Rational(1, 3), 0), Vec3(0, Rational(-1, 3), 0),
              Vec3(0, 0, Rational(1, 3)), Vec3(0, 0, Rational(-1, 3))}));

  const auto m10 = *catalog_entry("m10");
  CHECK(m10.translations.size() == 10);
  CHECK(m10.lambda == Rational(3, 5));
  CHECK(tset(m10.translations).count({"2/5", "2/5", "0"}));
  CHECK(tset(m10.translations).count({"0", "2/5", "2/5"}));
  CHECK(!tset(m10.translations).count({"2/5", "0", "2/5"}));

  const auto m14 = *catalog_entry("m14");
  CHECK(m14.m == 14);
  CHECK(m14.translations.size() == 10);
  CHECK(m14.incomplete);
  CHECK(m14.note == "lists 10 of 14 translations");

  CHECK(catalog_entry("m10-completed")->derived);
  CHECK(catalog_entry("m14-completed")->derived);
  CHECK(!catalog_entry("no-such-id"));
}

TEST_CASE("certify_entry records machine verdicts") {
  auto m6 = *catalog_entry("m6");
  certify_entry(m6);
  CHECK(m6.verified == VerifyState::Covered);

  // the 10-copy literal list leaves a facet center uncovered
  auto m10 = *catalog_entry("m10");
  const CoverageResult r = certify_entry(m10);
  REQUIRE(m10.verified == VerifyState::NotCovered);
  REQUIRE(m10.witness.has_value());
  CHECK(*m10.witness == Vec3(Rational(-1, 3), Rational(1, 3), Rational(-1, 3)));
  CHECK(l1_norm(*m10.witness) <= 1);
  for (const auto& u : m10.translations)
    CHECK(l1_norm(*m10.witness - u) > Rational(3, 5));
  CHECK(r.stats.cells > 0);

  auto m10c = *catalog_entry("m10-completed");
  certify_entry(m10c);
  CHECK(m10c.verified == VerifyState::Covered);

  auto m14 = *catalog_entry("m14");
  certify_entry(m14);
  CHECK(m14.verified == VerifyState::NotCovered);

  auto m14c = *catalog_entry("m14-completed");
  certify_entry(m14c);
  CHECK(m14c.verified == VerifyState::Covered);
}

TEST_CASE("complete_by_symmetry candidates") {
  SUBCASE("already complete: identity candidate only") {
    const auto cands = complete_by_symmetry(*catalog_entry("m6"), 6);
    REQUIRE(cands.size() == 1);
    CHECK(tset(cands[0].translations) == tset(catalog_entry("m6")->translations));
  }
  SUBCASE("target below current size is an error") {
    CHECK_THROWS_AS(complete_by_symmetry(*catalog_entry("m10"), 8),
                    std::invalid_argument);
  }
  SUBCASE("m14 completion includes the reflection closure") {
    const auto cands = complete_by_symmetry(*catalog_entry("m14"), 14);
    CHECK(cands.size() >= 2);
    const auto want = tset(catalog_entry("m14-completed")->translations);
    const bool found = std::any_of(cands.begin(), cands.end(), [&](const auto& c) {
      return tset(c.translations) == want;
    });
    CHECK(found);
    for (const auto& c : cands) CHECK(c.translations.size() == 14);
  }
  SUBCASE("m10 same-size variants include the xy-diagonal family") {
    const auto cands = complete_by_symmetry(*catalog_entry("m10"), 10);
    const auto want = tset(catalog_entry("m10-completed")->translations);
    const bool found = std::any_of(cands.begin(), cands.end(), [&](const auto& c) {
      return tset(c.translations) == want;
    });
    CHECK(found);
  }
}

TEST_CASE("find_certified_upper runs the completion protocol") {
  SUBCASE("m=10 at 3/5") {
    const auto rep = find_certified_upper(10, Rational(3, 5));
    REQUIRE(rep.winner.has_value());
    CHECK(rep.winner->verified == VerifyState::Covered);
    CHECK(rep.winner->translations.size() == 10);
    // the literal list is attempted first and refuted
    REQUIRE(!rep.attempts.empty());
    CHECK(rep.attempts.front().id == "m10");
    CHECK(rep.attempts.front().verified == VerifyState::NotCovered);
  }
  SUBCASE("m=14 at 4/7") {
    const auto rep = find_certified_upper(14, Rational(4, 7));
    REQUIRE(rep.winner.has_value());
    CHECK(rep.winner->verified == VerifyState::Covered);
    CHECK(rep.winner->translations.size() <= 14);
    CHECK(rep.attempts.front().id == "m14");
    CHECK(rep.attempts.front().verified == VerifyState::NotCovered);
  }
}

TEST_CASE("binary_search_lambda finds the low-denominator optima") {
  const auto m6 = *catalog_entry("m6");
  SUBCASE("fixed axis translations over [1/2, 1] land on 2/3") {
    const auto res = binary_search_lambda(
        [&](const Rational&) { return m6.translations; }, Rational(1, 2), Rational(1),
        16);
    REQUIRE(res.best_covered.has_value());
    CHECK(*res.best_covered == Rational(2, 3));
  }
  SUBCASE("identity copy needs the full ratio") {
    const auto m1 = *catalog_entry("m1");
    const auto res = binary_search_lambda(
        [&](const Rational&) { return m1.translations; }, Rational(1, 2), Rational(1),
        10);
    REQUIRE(res.best_covered.has_value());
    CHECK(*res.best_covered == Rational(1));
  }
  SUBCASE("covered lower endpoint returns immediately") {
    const auto res = binary_search_lambda(
        [&](const Rational&) { return m6.translations; }, Rational(2, 3), Rational(1),
        10);
    REQUIRE(res.best_covered.has_value());
    CHECK(*res.best_covered == Rational(2, 3));
    CHECK(res.steps_used == 0);
  }
  SUBCASE("lo >= hi rejected") {
    CHECK_THROWS_AS(binary_search_lambda(
                        [&](const Rational&) { return m6.translations; }, Rational(1),
                        Rational(1, 2), 4),
                    std::invalid_argument);
  }
}

TEST_CASE("local_search_upper") {
  SUBCASE("m=1 at 1 returns the origin") {
    const auto res = local_search_upper(1, Rational(1), 1, 5);
    REQUIRE(res.config.has_value());
    CHECK(res.config->translations.size() == 1);
    CHECK(res.config->translations[0] == Vec3(Rational(0), Rational(0), Rational(0)));
  }
  SUBCASE("m=6 at 2/3 certifies from the symmetric seed") {
    const auto res = local_search_upper(6, Rational(2, 3), 1, 40);
    REQUIRE(res.config.has_value());
    CHECK(res.config->verified == VerifyState::Covered);
  }
  SUBCASE("m=6 at 3/5 must fail (the certified lower bound is 2/3)") {
    const auto res = local_search_upper(6, Rational(3, 5), 1, 25);
    CHECK(!res.config.has_value());
  }
}

TEST_CASE("gamma_table rows 4..9") {
  const auto rows = gamma_table(4, 9);
  REQUIRE(rows.size() == 6);
  const std::vector<Rational> expect_upper = {Rational(1),    Rational(1),
                                              Rational(2, 3), Rational(2, 3),
                                              Rational(2, 3), Rational(2, 3)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].m == 4 + static_cast<int>(i));
    CHECK(rows[i].upper == expect_upper[i]);
    REQUIRE(rows[i].lower.has_value());
    CHECK(*rows[i].lower == expect_upper[i]);
    CHECK(rows[i].tight);
    CHECK(*rows[i].lower <= rows[i].upper);
  }
  // upper bounds reuse smaller-m configurations where none is defined
  CHECK(rows[3].upper_config_id == "m6 (reused)");
}

TEST_CASE("gamma_table columns are non-increasing and never cross") {
  const auto rows = gamma_table(1, 12);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].upper <= rows[i].upper);
  std::optional<Rational> prev_lower;
  for (const auto& r : rows) {
    if (r.lower) {
      if (prev_lower) CHECK(*r.lower <= *prev_lower);
      prev_lower = r.lower;
      CHECK(*r.lower <= r.upper);
    }
  }
  // m=12: the engine finds an assignment, so the row carries no lower bound
  CHECK(!rows[11].lower.has_value());
  CHECK(rows[11].lower_method == "inconclusive (assignment found)");
}

TEST_CASE("lower_bound_plan follows the ladder") {
  CHECK(lower_bound_plan(4).first == Rational(1));
  CHECK(lower_bound_plan(6).first == Rational(2, 3));
  CHECK(lower_bound_plan(9).first == Rational(2, 3));
  CHECK(lower_bound_plan(10).first == Rational(3, 5));
  CHECK(lower_bound_plan(14).first == Rational(4, 7));
  CHECK(lower_bound_plan(17).first == Rational(4, 7));
}

TEST_CASE("binary_search_lambda: two copies can never beat the full ratio") {
  // generator scales the two opposite translations with lambda
  const auto res = binary_search_lambda(
      [](const Rational& lam) {
        return std::vector<Vec3>{Vec3(1 - lam, Rational(0), Rational(0)),
                                 Vec3(lam - 1, Rational(0), Rational(0))};
      },
      Rational(1, 2), Rational(1), 12);
  REQUIRE(res.best_covered.has_value());
  CHECK(*res.best_covered == Rational(1));
}

TEST_CASE("covered catalog entries re-verify identically on every run") {
  for (const char* id : {"m6", "m10-completed", "m14-completed"}) {
    auto a = *catalog_entry(id);
    auto b = *catalog_entry(id);
    const CoverageResult ra = certify_entry(a);
    const CoverageResult rb = certify_entry(b);
    CHECK(a.verified == VerifyState::Covered);
    CHECK(ra.status == rb.status);
    CHECK(ra.stats.cells == rb.stats.cells);
    CHECK(ra.stats.max_depth == rb.stats.max_depth);
  }
}

TEST_CASE("coverage monotone in lambda on the catalog configs") {
  for (const char* id : {"m6", "m10-completed", "m14-completed"}) {
    auto e = *catalog_entry(id);
    CoveringConfig cfg = e.to_config();
    cfg.lambda += Rational(1, 100);
    CHECK(verify_covering(cfg).status == CoverageStatus::Covered);
  }
}
