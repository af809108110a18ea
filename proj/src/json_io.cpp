#include "covgamma/json_io.hpp"

#include <stdexcept>

namespace covgamma {

Json rational_json(const Rational& r) { return to_string(r); }

Json rvec_json(const RVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json vec3_json(const Vec3& v) { return rvec_json(v.to_rvec()); }

Json halfspace_json(const HalfSpace& h) {
  return Json{{"n", rvec_json(h.normal)}, {"b", to_string(h.rhs)}, {"strict", h.strict}};
}

Json hpolytope_json(const HPolytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.halfspaces) hs.push_back(halfspace_json(h));
  return Json{{"halfspaces", std::move(hs)}};
}

Json polygon_json(const std::vector<Vec3>& polygon) {
  Json a = Json::array();
  for (const auto& v : polygon) a.push_back(vec3_json(v));
  return a;
}

Json ratio_certificate_json(const RatioCertificate& c) {
  Json active = Json::array();
  for (const auto i : c.active) active.push_back(i);
  return Json{{"ratio", to_string(c.ratio)},
              {"center", rvec_json(c.center)},
              {"active", std::move(active)}};
}

Json coverage_json(const CoverageResult& r) {
  Json j;
  switch (r.status) {
    case CoverageStatus::Covered: j["status"] = "covered"; break;
    case CoverageStatus::NotCovered: j["status"] = "not_covered"; break;
    case CoverageStatus::Inconclusive: j["status"] = "inconclusive"; break;
  }
  if (r.witness) j["witness"] = rvec_json(*r.witness);
  j["cells"] = r.stats.cells;
  j["depth"] = r.stats.max_depth;
  return j;
}

Json witness_set_json(const WitnessSet& w) {
  Json pts = Json::array();
  for (const auto& lp : w.points)
    pts.push_back(Json{{"label", lp.label}, {"p", vec3_json(lp.p)}});
  Json j{{"generators", w.generators}, {"points", std::move(pts)}};
  if (w.degenerate_nodes) j["degenerate_nodes"] = true;
  return j;
}

Json lower_bound_json(const LowerBoundVerdict& v, const WitnessSet& w) {
  Json j;
  j["status"] =
      v.status == LowerBoundStatus::BoundCertified ? "certified" : "inconclusive";
  j["m"] = v.m;
  j["lambda"] = to_string(v.lambda_target);
  j["witness_set"] = witness_set_json(w);
  j["nodes_explored"] = v.nodes_explored;
  j["lp_calls"] = v.lp_calls;
  if (v.budget_exhausted) j["budget_exhausted"] = true;
  if (v.counterexample) {
    Json groups = Json::array();
    for (const auto& g : *v.counterexample) {
      Json pts = Json::array();
      for (const auto i : g.point_indices) pts.push_back(w.points[i].label);
      groups.push_back(Json{{"points", std::move(pts)}, {"ratio", to_string(g.ratio)}});
    }
    j["counterexample"] = Json{{"groups", std::move(groups)}};
  }
  return j;
}

Json catalog_entry_json(const CatalogEntry& e) {
  Json t = Json::array();
  for (const auto& v : e.translations) t.push_back(vec3_json(v));
  Json j{{"id", e.id},
         {"m", e.m},
         {"lambda", to_string(e.lambda)},
         {"translations", std::move(t)},
         {"provenance", e.provenance}};
  if (!e.note.empty()) j["note"] = e.note;
  if (e.incomplete) j["incomplete"] = true;
  if (e.derived) j["derived"] = true;
  switch (e.verified) {
    case VerifyState::Unchecked: j["verified"] = "unchecked"; break;
    case VerifyState::Covered: j["verified"] = "covered"; break;
    case VerifyState::NotCovered: j["verified"] = "not_covered"; break;
    case VerifyState::Inconclusive: j["verified"] = "inconclusive"; break;
  }
  if (e.witness) j["witness"] = vec3_json(*e.witness);
  return j;
}

Json table_row_json(const GammaTableRow& r) {
  Json j;
  j["m"] = r.m;
  j["lower"] = r.lower ? Json(to_string(*r.lower)) : Json(nullptr);
  j["lower_method"] = r.lower_method;
  j["upper"] = to_string(r.upper);
  j["upper_config_id"] = r.upper_config_id;
  j["tight"] = r.tight;
  j["lower_nodes"] = r.lower_nodes;
  j["upper_cells"] = r.upper_cells;
  j["lower_ms"] = r.lower_ms;
  j["upper_ms"] = r.upper_ms;
  return j;
}

std::string table_csv(const std::vector<GammaTableRow>& rows) {
  std::string s = "m,lower,upper,tight,lower_method,upper_config_id,lower_ms,upper_ms\n";
  for (const auto& r : rows) {
    s += std::to_string(r.m) + ",";
    s += (r.lower ? to_string(*r.lower) : "") + ",";
    s += to_string(r.upper) + ",";
    s += (r.tight ? "true" : "false");
    s += ",\"" + r.lower_method + "\",\"" + r.upper_config_id + "\",";
    s += std::to_string(r.lower_ms) + "," + std::to_string(r.upper_ms) + "\n";
  }
  return s;
}

Json manifest_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"inputs", m.inputs},
              {"budgets", m.budgets},
              {"seed", m.seed},
              {"tool_version", kToolVersion},
              {"timestamp", m.timestamp}};
}

Rational parse_rational_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected rational string");
  return parse_rational_or_throw(j.get<std::string>());
}

RVec parse_rvec(const Json& j, int expected_dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected_dim)
    throw std::invalid_argument("expected coordinate array of dimension " +
                                std::to_string(expected_dim));
  RVec v;
  for (const auto& x : j) v.push_back(parse_rational_json(x));
  return v;
}

CoveringConfig parse_covering_config(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: object expected");
  const std::string body = j.value("body", std::string("cross-polytope-3"));
  if (body != "cross-polytope-3")
    throw std::invalid_argument("config: unsupported body '" + body + "'");
  CoveringConfig cfg{GaugeBody::cross3(), Rational(1), {}};
  if (!j.contains("lambda")) throw std::invalid_argument("config: missing lambda");
  cfg.lambda = parse_rational_json(j.at("lambda"));
  if (!j.contains("translations") || !j.at("translations").is_array() ||
      j.at("translations").empty())
    throw std::invalid_argument("config: missing translations");
  for (const auto& t : j.at("translations")) cfg.translations.push_back(parse_rvec(t, 3));
  cfg.validate();
  return cfg;
}

}  // namespace covgamma
