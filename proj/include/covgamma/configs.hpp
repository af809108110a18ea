#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covgamma/covering.hpp"
#include "covgamma/witness.hpp"

namespace covgamma {

enum class VerifyState { Unchecked, Covered, NotCovered, Inconclusive };

struct CatalogEntry {
  std::string id;
  int m = 1;                       // copies the construction targets
  Rational lambda;
  std::vector<Vec3> translations;  // at most m
  std::string provenance;          // structural description of the family
  std::string note;                // flags, e.g. an incomplete listing
  bool incomplete = false;         // fewer translations than m
  bool derived = false;            // recorded by the completion search

  VerifyState verified = VerifyState::Unchecked;  // set only by certify_entry
  std::optional<Vec3> witness;                    // uncovered point when NotCovered
  CoverageStats stats;

  CoveringConfig to_config() const;
};

// The fixed construction catalog: the identity copy, the 6-copy axis
// family at 2/3, the 10-copy list at 3/5, the 14-copy family at 4/7 whose
// source lists only 10 vectors (flagged incomplete), and the reflection-
// closed completions recorded by the completion search.
std::vector<CatalogEntry> catalog();

std::optional<CatalogEntry> catalog_entry(const std::string& id);

// Runs the exact certifier on the entry and stores the verdict in it.
CoverageResult certify_entry(CatalogEntry& e,
                             std::int64_t cell_budget = kDefaultCellBudget);

// Candidate completions of an entry to exactly `target_count` translations,
// formed by closing the set under small symmetry subgroups or adding orbit
// images of its vectors. Candidates are returned unverified; callers run
// the certifier. Throws if target_count < current size; identity candidate
// when equal.
std::vector<CatalogEntry> complete_by_symmetry(const CatalogEntry& e, int target_count);

struct BisectionResult {
  std::optional<Rational> best_covered;  // smallest lambda certified Covered
  int steps_used = 0;
  bool budget_exhausted = false;
  Rational lo, hi;  // final bracket
};

// Stern-Brocot mediant search for the smallest grid rational lambda whose
// generated configuration the certifier accepts. Coverage is monotone in
// lambda for fixed translations.
using TranslationGenerator = std::function<std::vector<Vec3>(const Rational&)>;
BisectionResult binary_search_lambda(const TranslationGenerator& gen,
                                     const Rational& lo, const Rational& hi,
                                     int steps,
                                     std::int64_t cell_budget = kDefaultCellBudget);

struct LocalSearchResult {
  std::optional<CatalogEntry> config;  // present only when certified Covered
  int iterations_used = 0;
  std::vector<std::string> log;
};

// Heuristic upper-bound search: start from symmetric seed families, move
// the translation nearest to the current uncovered witness toward it, keep
// moves that shrink the sampled uncovered set, and accept only exact
// certifier verdicts.
LocalSearchResult local_search_upper(int m, const Rational& lambda,
                                     std::uint64_t seed, int iterations,
                                     std::int64_t cell_budget = kDefaultCellBudget);

// The full upper-bound protocol for one (m, lambda): literal catalog entry
// first, then symmetry completions (sample-check triage before exact
// certification), then local search. Records every candidate verdict.
struct UpperBoundSearchReport {
  std::vector<CatalogEntry> attempts;  // with verified states filled in
  std::optional<CatalogEntry> winner;
};
UpperBoundSearchReport find_certified_upper(int m, const Rational& lambda,
                                            std::int64_t cell_budget = kDefaultCellBudget);

// --- gamma table ---------------------------------------------------------

struct GammaTableRow {
  int m = 0;
  std::optional<Rational> lower;  // absent when the engine was inconclusive
  std::string lower_method;
  Rational upper;
  std::string upper_config_id;
  bool tight = false;
  std::int64_t lower_nodes = 0;
  std::int64_t upper_cells = 0;
  std::int64_t lower_ms = 0;
  std::int64_t upper_ms = 0;
};

struct TableBudgets {
  std::int64_t certifier_cells = kDefaultCellBudget;
  std::int64_t engine_nodes = 2'000'000;
};

// One row per m: upper bounds from certified catalog entries (smaller-m
// configurations are reused and the reuse recorded), lower bounds from the
// witness-assignment engine at the ladder target for that m.
std::vector<GammaTableRow> gamma_table(int m_min, int m_max,
                                       const TableBudgets& budgets = {});

// The ladder target and witness generators the table tries for a given m.
std::pair<Rational, std::set<WitnessGen>> lower_bound_plan(int m);

}  // namespace covgamma
