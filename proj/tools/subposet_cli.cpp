// Command-line surface: poset analysis, lemma-style verification reports, and
// the extremal search operations, all emitting JSON (or flattened CSV) with
// the effective configuration echoed in the header.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "subposet/extremal.hpp"
#include "subposet/io.hpp"
#include "subposet/verify.hpp"

namespace sp = subposet;
using sp::Json;

namespace {

struct GlobalOpts {
  sp::RunConfig cfg;
  std::string band_text;
  std::string epsilon_text = "1/2";

  void finalize() {
    if (!band_text.empty()) {
      auto comma = band_text.find(',');
      if (comma == std::string::npos) {
        throw sp::ParamError("--band expects lo,hi");
      }
      sp::Band b{std::stod(band_text.substr(0, comma)), std::stod(band_text.substr(comma + 1))};
      cfg.band_override = b;
    }
  }

  sp::Rational epsilon() const { return sp::parse_rational(epsilon_text); }

  sp::SearchBudget budget() const {
    sp::SearchBudget b;
    b.node_limit = cfg.node_limit;
    b.time_limit_ms = cfg.time_limit_ms;
    return b;
  }
};

void add_global_flags(CLI::App* app, GlobalOpts& g) {
  app->add_option("--seed", g.cfg.seed, "RNG seed");
  app->add_option("--trials", g.cfg.trials, "Monte Carlo trial count");
  app->add_option("--workers", g.cfg.workers, "worker count (results are worker-invariant)");
  app->add_option("--format", g.cfg.format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--band", g.band_text, "band override as lo,hi");
  app->add_option("--node-limit", g.cfg.node_limit, "search node budget");
  app->add_option("--time-limit", g.cfg.time_limit_ms, "search time budget in ms");
  app->add_option("--chain-cap", g.cfg.chain_cap, "full-chain enumeration cap");
}

void emit(const Json& report, const GlobalOpts& g) {
  std::cout << sp::render_report(report, g.cfg.format);
}

Json embedding_json(const sp::Poset& h, const sp::Embedding& e) {
  Json arr = Json::array();
  for (int i = 0; i < h.size(); ++i) {
    arr.push_back(Json::array({h.label(i), sp::subset_json(e.image[static_cast<std::size_t>(i)])}));
  }
  return arr;
}

const char* verdict_name(sp::Verdict v) {
  switch (v) {
    case sp::Verdict::Found:
      return "found";
    case sp::Verdict::Absent:
      return "absent";
    case sp::Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

int g_exit_code = 0;

int run(int argc, char** argv) {
  CLI::App app{"induced-subposet toolkit for the Boolean lattice"};
  app.require_subcommand(1);
  GlobalOpts g;

  // ---- poset ----
  auto* poset_cmd = app.add_subcommand("poset", "poset analysis and decomposition");
  poset_cmd->require_subcommand(1);
  std::string poset_file, poset_spec;
  int analyze_k = 0;
  auto add_poset_input = [&](CLI::App* sub) {
    sub->add_option("--file", poset_file, "poset JSON file");
    sub->add_option("--poset", poset_spec, "named poset spec (chain3, v2, butterfly, k2_2, h3)");
    add_global_flags(sub, g);
  };
  auto load_input_poset = [&]() -> sp::Poset {
    if (!poset_file.empty()) return sp::load_poset(poset_file);
    if (!poset_spec.empty()) return sp::parse_poset_spec(poset_spec);
    throw sp::ParamError("need --file or --poset");
  };

  auto* analyze_cmd = poset_cmd->add_subcommand("analyze", "height / tree / saturation");
  add_poset_input(analyze_cmd);
  analyze_cmd->add_option("--k", analyze_k, "target chain cardinality");
  analyze_cmd->callback([&]() {
    g.finalize();
    sp::Poset p = load_input_poset();
    int k = analyze_k > 0 ? analyze_k : sp::analyze(p, 0).height;
    auto a = sp::analyze(p, k);
    Json report = sp::report_skeleton("poset analyze", g.cfg);
    Json row;
    row["n"] = p.size();
    row["k"] = k;
    row["height"] = a.height;
    row["tree_hasse"] = a.tree_hasse;
    row["k_saturated"] = a.k_saturated;
    report["rows"].push_back(row);
    emit(report, g);
  });

  auto* saturate_cmd = poset_cmd->add_subcommand("saturate", "extend to a saturated tree poset");
  add_poset_input(saturate_cmd);
  saturate_cmd->callback([&]() {
    g.finalize();
    sp::Poset p = load_input_poset();
    sp::Poset sat = sp::saturate(p);
    Json report = sp::report_skeleton("poset saturate", g.cfg);
    Json row;
    row["input_n"] = p.size();
    row["output_n"] = sat.size();
    row["added"] = sat.size() - p.size();
    row["poset"] = sp::poset_to_json(sat);
    report["rows"].push_back(row);
    emit(report, g);
  });

  auto* decompose_cmd = poset_cmd->add_subcommand("decompose", "peel leaf chain intervals");
  add_poset_input(decompose_cmd);
  decompose_cmd->callback([&]() {
    g.finalize();
    sp::Poset p = load_input_poset();
    auto steps = sp::decompose(p);
    Json report = sp::report_skeleton("poset decompose", g.cfg);
    sp::Poset cur = p;
    for (const auto& st : steps) {
      Json row;
      Json interval = Json::array();
      for (int e : st.interval) interval.push_back(cur.label(e));
      row["interval"] = std::move(interval);
      row["anchor"] = cur.label(st.anchor);
      row["leaf"] = cur.label(st.leaf);
      row["direction"] = st.direction == sp::ZoneSide::Below ? "below" : "above";
      row["remaining_n"] = st.remaining.size();
      report["rows"].push_back(std::move(row));
      cur = st.remaining;
    }
    report["steps"] = steps.size();
    report["final_chain_n"] = cur.size();
    emit(report, g);
  });

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run a lemma-style check suite");
  verify_cmd->set_help_flag("--help", "print help");  // frees --h for the depth parameter
  std::string lemma;
  int vn = 4, vk = 2, vh = 2, vs = 1, vfamilies = 100, vanchor = -1, vp = 1, vextra = 2;
  std::string vmode = "auto", vfamily, vpool;
  bool vlym = false;
  verify_cmd->add_option("lemma", lemma, "which check: 2.3 | 2.4 | 3.1 | 4.2 | 5.1")
      ->required();
  verify_cmd->add_option("--n", vn, "ground-set size");
  verify_cmd->add_option("--k", vk, "marker count");
  verify_cmd->add_option("--h", vh, "witness size bound / nesting depth");
  verify_cmd->add_option("--s", vs, "witness set size for zone checks");
  verify_cmd->add_option("--p", vp, "string pair count");
  verify_cmd->add_option("--families", vfamilies, "sampled family count");
  verify_cmd->add_option("--extra-families", vextra, "extra random families for 5.1");
  verify_cmd->add_option("--anchor-weight", vanchor, "anchor weight for zone checks");
  verify_cmd->add_option("--mode", vmode, "zone check mode: exact|montecarlo|auto")
      ->check(CLI::IsMember({"exact", "montecarlo", "auto"}));
  verify_cmd->add_flag("--lym", vlym, "check the LYM marker-mass identity instead");
  verify_cmd->add_option("--epsilon", g.epsilon_text, "exact rational, e.g. 1/2");
  verify_cmd->add_option("--family", vfamily, "family spec for 5.1 (middle:t | all | file:PATH)");
  verify_cmd->add_option("--pool", vpool, "witness pool spec for 5.1 (default: family in band)");
  add_global_flags(verify_cmd, g);
  verify_cmd->callback([&]() {
    g.finalize();
    sp::VerifyOutcome out;
    if (lemma == "2.3") {
      out = vlym ? sp::verify_lym_consistency(vn, vfamilies, g.cfg.seed, g.cfg)
                 : sp::verify_count_identity(vn, vk, vfamilies, g.cfg.seed, g.cfg);
    } else if (lemma == "2.4") {
      out = sp::verify_density_bound(vn, vk, g.epsilon(), vfamilies, g.cfg.seed, g.cfg);
    } else if (lemma == "3.1") {
      int anchor = vanchor > 0 ? vanchor : vn / 2;
      sp::ProbMode mode = vmode == "exact" ? sp::ProbMode::Exact
                          : vmode == "montecarlo"
                              ? sp::ProbMode::MonteCarlo
                              : (anchor <= sp::kExactChainCap ? sp::ProbMode::Exact
                                                              : sp::ProbMode::MonteCarlo);
      out = sp::verify_zone_bound(vn, vs, anchor, g.cfg.trials, g.cfg.seed, mode, g.cfg);
    } else if (lemma == "4.2") {
      out = sp::verify_string_bound(vn, vh, vp, g.cfg.trials, g.cfg.seed, g.cfg);
    } else if (lemma == "5.1") {
      std::optional<sp::Family> fam, pool;
      if (!vfamily.empty()) fam = sp::parse_family_spec(vfamily, vn);
      if (!vpool.empty()) pool = sp::parse_family_spec(vpool, vn);
      out = sp::verify_nested_structure(vn, vk, vh, g.epsilon(), vextra, g.cfg.seed, g.cfg,
                                        fam, pool);
    } else {
      throw sp::ParamError("unknown check: " + lemma);
    }
    emit(out.report, g);
    if (!out.pass) g_exit_code = 1;
  });

  // ---- extremal ----
  auto* ex_cmd = app.add_subcommand("extremal", "copy search and extremal numbers");
  ex_cmd->require_subcommand(1);
  int en = 4, elevels = 1;
  std::string ex_poset = "chain2", ex_family = "all";
  bool weak = false, induced_flag = false, use_oracle = false;

  auto* la_cmd = ex_cmd->add_subcommand("la", "largest H-free family size");
  la_cmd->add_option("--n", en, "ground-set size")->required();
  la_cmd->add_option("--poset", ex_poset, "pattern poset spec");
  la_cmd->add_flag("--weak", weak, "weak containment");
  la_cmd->add_flag("--induced", induced_flag, "induced containment (default)");
  add_global_flags(la_cmd, g);
  la_cmd->callback([&]() {
    g.finalize();
    sp::Poset h = sp::parse_poset_spec(ex_poset);
    bool induced = !weak;
    auto t0 = std::chrono::steady_clock::now();
    auto r = sp::la_exact(en, h, induced, g.budget());
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    Json report = sp::report_skeleton("extremal la", g.cfg);
    Json row;
    row["op"] = "la";
    row["n"] = en;
    row["poset"] = ex_poset;
    row["induced"] = induced;
    row["verdict"] = r.verdict == sp::Verdict::Found ? "optimal" : "indeterminate";
    row["value"] = r.value;
    Json wit = Json::array();
    for (const auto& v : r.witness) wit.push_back(sp::subset_json(v));
    row["witness"] = std::move(wit);
    row["nodes_expanded"] = r.nodes;
    row["elapsed_ms"] = ms;
    row["seed"] = g.cfg.seed;
    report["rows"].push_back(std::move(row));
    emit(report, g);
  });

  auto* embed_cmd = ex_cmd->add_subcommand("embed", "find an induced copy in a family");
  embed_cmd->add_option("--n", en, "ground-set size")->required();
  embed_cmd->add_option("--poset", ex_poset, "pattern poset spec");
  embed_cmd->add_option("--family", ex_family, "family spec: middle:t | all | file:PATH");
  embed_cmd->add_flag("--oracle", use_oracle, "use the exhaustive oracle instead of the guided embedder");
  add_global_flags(embed_cmd, g);
  embed_cmd->callback([&]() {
    g.finalize();
    sp::Poset h = sp::parse_poset_spec(ex_poset);
    sp::Family f = sp::parse_family_spec(ex_family, en);
    auto t0 = std::chrono::steady_clock::now();
    Json report = sp::report_skeleton("extremal embed", g.cfg);
    Json row;
    row["op"] = "embed";
    row["n"] = en;
    row["poset"] = ex_poset;
    row["family"] = ex_family;
    row["induced"] = true;
    if (use_oracle) {
      auto r = sp::find_copy_oracle(f, en, h, true, g.budget());
      row["verdict"] = verdict_name(r.verdict);
      if (r.embedding) row["embedding"] = embedding_json(h, *r.embedding);
      row["nodes_expanded"] = r.nodes;
    } else {
      auto r = sp::find_copy_guided(f, en, h, g.budget(), g.cfg.band_for(en), g.cfg.seed);
      row["verdict"] = verdict_name(r.verdict);
      if (r.embedding) row["embedding"] = embedding_json(h, *r.embedding);
      row["nodes_expanded"] = r.nodes;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    row["elapsed_ms"] = ms;
    row["seed"] = g.cfg.seed;
    report["rows"].push_back(std::move(row));
    emit(report, g);
  });

  auto* construct_cmd = ex_cmd->add_subcommand("construct", "emit a middle-levels family");
  construct_cmd->add_option("--n", en, "ground-set size")->required();
  construct_cmd->add_option("--levels", elevels, "number of middle levels");
  add_global_flags(construct_cmd, g);
  construct_cmd->callback([&]() {
    g.finalize();
    sp::Family f = sp::middle_levels(en, elevels);
    Json report = sp::report_skeleton("extremal construct", g.cfg);
    Json row;
    row["op"] = "construct";
    row["n"] = en;
    row["levels"] = elevels;
    row["size"] = f.size();
    row["family"] = sp::family_to_json(f);
    report["rows"].push_back(std::move(row));
    emit(report, g);
  });

  auto* check_cmd = ex_cmd->add_subcommand("check", "does middle_levels(n,t) avoid the poset?");
  check_cmd->add_option("--n", en, "ground-set size")->required();
  check_cmd->add_option("--poset", ex_poset, "pattern poset spec");
  check_cmd->add_option("--levels", elevels, "number of middle levels");
  add_global_flags(check_cmd, g);
  check_cmd->callback([&]() {
    g.finalize();
    sp::Poset h = sp::parse_poset_spec(ex_poset);
    auto t0 = std::chrono::steady_clock::now();
    auto r = sp::construction_avoidance_check(en, h, elevels, g.budget());
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    Json report = sp::report_skeleton("extremal check", g.cfg);
    Json row;
    row["op"] = "check";
    row["n"] = en;
    row["poset"] = ex_poset;
    row["levels"] = elevels;
    row["verdict"] = verdict_name(r.oracle_verdict);
    row["avoided"] = r.avoided;
    row["elapsed_ms"] = ms;
    row["seed"] = g.cfg.seed;
    report["rows"].push_back(std::move(row));
    emit(report, g);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return g_exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sp::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sp::IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
