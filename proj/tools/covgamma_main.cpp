// covgamma: exact certificates for covering the 3D cross-polytope by
// smaller homothetic copies. Subcommands: verify, lower, table, nodes,
// search. All rationals cross the CLI boundary as "p/q" strings; exit
// codes are part of the contract (see README).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "covgamma/json_io.hpp"
#include "covgamma/triangle.hpp"

namespace cg = covgamma;

namespace {

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::int64_t env_budget(std::int64_t fallback) {
  if (const char* env = std::getenv("COVGAMMA_BUDGET")) {
    const long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return fallback;
}

std::int64_t default_budget() { return env_budget(cg::kDefaultCellBudget); }

void emit(const cg::Json& payload, const std::string& out_path) {
  const std::string text = payload.dump(2);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text << "\n";
  }
  std::cout << text << "\n";
}

cg::Rational parse_cli_rational(const std::string& s, const std::string& flag) {
  auto r = cg::parse_rational(s);
  if (!r) throw CLI::ValidationError(flag, "expected exact rational 'p/q'");
  return *r;
}

struct VerifyArgs {
  std::string config_file;
  std::string catalog_id;
  std::string lambda_override;
  std::string out_path;
  std::int64_t budget = 0;
};

int run_verify(const VerifyArgs& a) {
  cg::CoveringConfig cfg{cg::GaugeBody::cross3(), cg::Rational(1), {}};
  cg::Json inputs = cg::Json::object();
  if (!a.catalog_id.empty()) {
    const auto entry = cg::catalog_entry(a.catalog_id);
    if (!entry) {
      std::cerr << "error: unknown catalog id '" << a.catalog_id << "'\n";
      return 1;
    }
    cfg = entry->to_config();
    inputs["catalog"] = a.catalog_id;
  } else {
    std::ifstream f(a.config_file);
    if (!f) {
      std::cerr << "error: cannot read '" << a.config_file << "'\n";
      return 1;
    }
    cg::Json j;
    try {
      f >> j;
      cfg = cg::parse_covering_config(j);
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return 1;
    }
    inputs["config_file"] = a.config_file;
  }
  if (!a.lambda_override.empty()) {
    const auto lam = cg::parse_rational(a.lambda_override);
    if (!lam || *lam <= 0) {
      std::cerr << "error: --lambda must be a positive rational\n";
      return 1;
    }
    cfg.lambda = *lam;
    inputs["lambda_override"] = a.lambda_override;
  }

  const cg::CoverageResult r = cg::verify_covering(cfg, a.budget);

  cg::RunManifest man;
  man.command = "verify";
  man.inputs = inputs;
  man.budgets = {{"cells", a.budget}};
  man.timestamp = now_iso8601();

  cg::Json out = cg::coverage_json(r);
  out["schema"] = cg::kSchemaTag;
  out["lambda"] = cg::to_string(cfg.lambda);
  out["copies"] = cfg.translations.size();
  out["manifest"] = cg::manifest_json(man);
  emit(out, a.out_path);
  switch (r.status) {
    case cg::CoverageStatus::Covered: return 0;
    case cg::CoverageStatus::NotCovered: return 2;
    case cg::CoverageStatus::Inconclusive: return 3;
  }
  return 1;
}

std::set<cg::WitnessGen> parse_witness_list(const std::string& csv) {
  std::set<cg::WitnessGen> gens;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string tok = csv.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok == "vertices")
      gens.insert(cg::WitnessGen::Vertices);
    else if (tok == "centers")
      gens.insert(cg::WitnessGen::FacetCenters);
    else if (tok == "nodes")
      gens.insert(cg::WitnessGen::NodePoints);
    else if (tok == "midpoints")
      gens.insert(cg::WitnessGen::NodeMidpoints);
    else if (!tok.empty())
      throw CLI::ValidationError("--witness", "unknown generator '" + tok + "'");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (gens.empty()) throw CLI::ValidationError("--witness", "no generators given");
  return gens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact covering-functional certificates for the 3D cross-polytope"};
  app.require_subcommand(1);

  // ---- verify ----
  VerifyArgs va;
  va.budget = default_budget();
  auto* verify = app.add_subcommand("verify", "decide coverage of a configuration");
  verify->add_option("config", va.config_file, "covering configuration JSON file");
  verify->add_option("--catalog", va.catalog_id, "use a catalog entry by id");
  verify->add_option("--lambda", va.lambda_override, "override the ratio (p/q)");
  verify->add_option("--budget", va.budget, "cell budget for the certifier");
  verify->add_option("--out", va.out_path, "also write the verdict JSON here");

  // ---- lower ----
  int lower_m = 0;
  std::string lower_lambda, lower_witness = "vertices", lower_node_lambda, lower_out;
  std::int64_t lower_budget = env_budget(2'000'000);
  auto* lower = app.add_subcommand("lower", "certify a lower bound by assignment search");
  lower->add_option("--m", lower_m, "number of copies")->required();
  lower->add_option("--lambda", lower_lambda, "target ratio (p/q)")->required();
  lower->add_option("--witness", lower_witness,
                    "generators: vertices,centers,nodes,midpoints");
  lower->add_option("--node-lambda", lower_node_lambda,
                    "node-point ratio (defaults to --lambda)");
  lower->add_option("--budget", lower_budget, "search node budget");
  lower->add_option("--out", lower_out, "also write the verdict JSON here");

  // ---- table ----
  int t_min = 4, t_max = 17;
  std::string t_dir = ".";
  std::int64_t t_cells = default_budget(), t_nodes = env_budget(2'000'000);
  auto* table = app.add_subcommand("table", "emit the gamma table (JSON and CSV)");
  table->add_option("--m-min", t_min, "first m");
  table->add_option("--m-max", t_max, "last m");
  table->add_option("--budget", t_nodes, "engine node budget per row");
  table->add_option("--cell-budget", t_cells, "certifier cell budget");
  table->add_option("--out-dir", t_dir, "output directory");

  // ---- nodes ----
  std::string n_lambda;
  bool n_midpoints = false;
  std::string n_out;
  auto* nodes = app.add_subcommand("nodes", "emit node points per facet");
  nodes->add_option("--lambda", n_lambda, "node ratio in [1/2, 1)")->required();
  nodes->add_flag("--midpoints", n_midpoints, "also emit node midpoints");
  nodes->add_option("--out", n_out, "also write the JSON here");

  // ---- search ----
  int s_m = 0;
  std::string s_lambda, s_catalog, s_lo, s_hi, s_out;
  std::uint64_t s_seed = 1;
  int s_iter = 60, s_steps = 24;
  bool s_bisect = false;
  auto* search = app.add_subcommand("search", "upper-bound search");
  search->add_option("--m", s_m, "number of copies");
  search->add_option("--lambda", s_lambda, "ratio for local search (p/q)");
  search->add_option("--seed", s_seed, "random seed");
  search->add_option("--iterations", s_iter, "local search iteration budget");
  search->add_flag("--bisect", s_bisect, "Stern-Brocot search over lambda");
  search->add_option("--catalog", s_catalog, "template entry for --bisect");
  search->add_option("--lo", s_lo, "lower bracket for --bisect");
  search->add_option("--hi", s_hi, "upper bracket for --bisect");
  search->add_option("--steps", s_steps, "mediant steps for --bisect");
  search->add_option("--out", s_out, "also write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) {
      if (va.config_file.empty() && va.catalog_id.empty()) {
        std::cerr << "error: give a config file or --catalog id\n";
        return 1;
      }
      return run_verify(va);
    }

    if (lower->parsed()) {
      const cg::Rational target = parse_cli_rational(lower_lambda, "--lambda");
      const auto gens = parse_witness_list(lower_witness);
      cg::Rational node_lambda = target;
      if (!lower_node_lambda.empty())
        node_lambda = parse_cli_rational(lower_node_lambda, "--node-lambda");
      const cg::WitnessSet w = cg::build_witness_set(gens, node_lambda);
      cg::EngineOptions opts;
      opts.node_budget = lower_budget;
      const cg::LowerBoundVerdict v = cg::certify_lower_bound(lower_m, target, w, opts);

      cg::RunManifest man;
      man.command = "lower";
      man.inputs = {{"m", lower_m},
                    {"lambda", lower_lambda},
                    {"witness", lower_witness},
                    {"node_lambda", cg::to_string(node_lambda)}};
      man.budgets = {{"nodes", lower_budget}};
      man.timestamp = now_iso8601();

      cg::Json out = cg::lower_bound_json(v, w);
      out["schema"] = cg::kSchemaTag;
      out["manifest"] = cg::manifest_json(man);
      emit(out, lower_out);
      return v.status == cg::LowerBoundStatus::BoundCertified ? 0 : 2;
    }

    if (table->parsed()) {
      cg::TableBudgets budgets{t_cells, t_nodes};
      const auto rows = cg::gamma_table(t_min, t_max, budgets);

      cg::RunManifest man;
      man.command = "table";
      man.inputs = {{"m_min", t_min}, {"m_max", t_max}};
      man.budgets = {{"cells", t_cells}, {"nodes", t_nodes}};
      man.timestamp = now_iso8601();

      cg::Json out;
      out["schema"] = cg::kSchemaTag;
      out["manifest"] = cg::manifest_json(man);
      out["rows"] = cg::Json::array();
      for (const auto& r : rows) out["rows"].push_back(cg::table_row_json(r));

      const std::string jpath = t_dir + "/gamma_table.json";
      const std::string cpath = t_dir + "/gamma_table.csv";
      std::ofstream jf(jpath), cf(cpath);
      if (!jf || !cf) {
        std::cerr << "error: cannot write table files under '" << t_dir << "'\n";
        return 1;
      }
      jf << out.dump(2) << "\n";
      cf << cg::table_csv(rows);
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (nodes->parsed()) {
      const auto lam = cg::parse_rational(n_lambda);
      if (!lam || *lam < cg::Rational(1, 2) || *lam >= 1) {
        std::cerr << "error: --lambda must lie in [1/2, 1)\n";
        return 1;
      }
      cg::RunManifest man;
      man.command = "nodes";
      man.inputs = {{"lambda", n_lambda}, {"midpoints", n_midpoints}};
      man.timestamp = now_iso8601();

      cg::Json out;
      out["schema"] = cg::kSchemaTag;
      out["manifest"] = cg::manifest_json(man);
      out["lambda"] = cg::to_string(*lam);
      const bool degenerate = (*lam == cg::Rational(2, 3));
      out["degenerate"] = degenerate;
      out["facets"] = cg::Json::array();
      for (const auto& f : cg::facets_of_cross_polytope()) {
        cg::Json fj;
        std::string tag;
        for (int i = 0; i < 3; ++i) tag += (f.signs[i] > 0 ? '+' : '-');
        fj["facet"] = tag;
        fj["nodes"] = cg::Json::array();
        const auto npts = cg::node_points(f, *lam);
        const int count = degenerate ? 1 : 3;  // the three coincide at 2/3
        for (int i = 0; i < count; ++i)
          fj["nodes"].push_back(cg::Json{{"label", "n:" + tag + ":" + std::to_string(i)},
                                         {"p", cg::vec3_json(npts[i])}});
        if (n_midpoints) {
          fj["midpoints"] = cg::Json::array();
          const auto mids = cg::node_midpoints(f, *lam);
          for (int i = 0; i < count; ++i)
            fj["midpoints"].push_back(
                cg::Json{{"label", "m:" + tag + ":" + std::to_string(i)},
                         {"p", cg::vec3_json(mids[i])}});
        }
        out["facets"].push_back(std::move(fj));
      }
      emit(out, n_out);
      return 0;
    }

    if (search->parsed()) {
      cg::RunManifest man;
      man.command = "search";
      man.seed = s_seed;
      man.timestamp = now_iso8601();

      if (s_bisect) {
        if (s_catalog.empty() || s_lo.empty() || s_hi.empty()) {
          std::cerr << "error: --bisect needs --catalog, --lo, --hi\n";
          return 1;
        }
        const auto entry = cg::catalog_entry(s_catalog);
        if (!entry) {
          std::cerr << "error: unknown catalog id '" << s_catalog << "'\n";
          return 1;
        }
        const cg::Rational lo = parse_cli_rational(s_lo, "--lo");
        const cg::Rational hi = parse_cli_rational(s_hi, "--hi");
        const auto translations = entry->translations;
        const auto res = cg::binary_search_lambda(
            [&](const cg::Rational&) { return translations; }, lo, hi, s_steps,
            default_budget());
        man.inputs = {{"catalog", s_catalog}, {"lo", s_lo}, {"hi", s_hi}};
        man.budgets = {{"steps", s_steps}};
        cg::Json out;
        out["schema"] = cg::kSchemaTag;
        out["manifest"] = cg::manifest_json(man);
        out["mode"] = "bisect";
        out["best_covered"] =
            res.best_covered ? cg::Json(cg::to_string(*res.best_covered)) : cg::Json();
        out["steps_used"] = res.steps_used;
        out["bracket"] = {cg::to_string(res.lo), cg::to_string(res.hi)};
        emit(out, s_out);
        return res.best_covered ? 0 : 2;
      }

      if (s_m < 1 || s_lambda.empty()) {
        std::cerr << "error: search needs --m and --lambda\n";
        return 1;
      }
      const cg::Rational lam = parse_cli_rational(s_lambda, "--lambda");
      const auto res = cg::local_search_upper(s_m, lam, s_seed, s_iter, default_budget());
      man.inputs = {{"m", s_m}, {"lambda", s_lambda}};
      man.budgets = {{"iterations", s_iter}};
      cg::Json out;
      out["schema"] = cg::kSchemaTag;
      out["manifest"] = cg::manifest_json(man);
      out["mode"] = "improve";
      out["iterations_used"] = res.iterations_used;
      out["log"] = res.log;
      out["config"] = res.config ? cg::catalog_entry_json(*res.config) : cg::Json();
      emit(out, s_out);
      return res.config ? 0 : 2;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
