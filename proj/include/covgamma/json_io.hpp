#pragma once

#include <json.hpp>

#include "covgamma/configs.hpp"
#include "covgamma/covering.hpp"
#include "covgamma/gauge.hpp"
#include "covgamma/polytope.hpp"
#include "covgamma/witness.hpp"

namespace covgamma {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "covgamma/1";
inline constexpr const char* kToolVersion = "1.0.0";

Json rational_json(const Rational& r);
Json rvec_json(const RVec& v);
Json vec3_json(const Vec3& v);
Json halfspace_json(const HalfSpace& h);
Json hpolytope_json(const HPolytope& p);
Json polygon_json(const std::vector<Vec3>& polygon);
Json ratio_certificate_json(const RatioCertificate& c);
Json coverage_json(const CoverageResult& r);
Json lower_bound_json(const LowerBoundVerdict& v, const WitnessSet& w);
Json witness_set_json(const WitnessSet& w);
Json catalog_entry_json(const CatalogEntry& e);
Json table_row_json(const GammaTableRow& r);
std::string table_csv(const std::vector<GammaTableRow>& rows);

// Every CLI artifact embeds the manifest that produced it.
struct RunManifest {
  std::string command;
  Json inputs = Json::object();
  Json budgets = Json::object();
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601, captured at emission
};

Json manifest_json(const RunManifest& m);

RVec parse_rvec(const Json& j, int expected_dim);
Rational parse_rational_json(const Json& j);

// Covering configuration file: {"lambda": "p/q", "translations": [[...]...],
// "body": "cross-polytope-3"} (body optional, cross-polytope by default).
CoveringConfig parse_covering_config(const Json& j);

}  // namespace covgamma
