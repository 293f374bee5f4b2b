#include "l2a/cli.hpp"

#include "l2a/adjoint.hpp"
#include "l2a/dgmod.hpp"
#include "l2a/weil.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

namespace l2a {

namespace {

Report weil_dims_report(const WeilAlgebra& w, int cutoff) {
  Report r;
  r.check = "weil_dims";
  r.clause("formula_vs_monomials");
  for (int p = 0; p <= cutoff; ++p)
    for (int q = 0; q <= cutoff; ++q) {
      long f = split_weil_dims(w.nvars, w.rank_q, w.rank_b, p, q), n = weil_monomial_count(w, p, q);
      if (f != n)
        r.fail("formula_vs_monomials", "(" + std::to_string(p) + "," + std::to_string(q) + ")",
               std::to_string(f) + " != " + std::to_string(n));
    }
  return r;
}

void human_report(std::ostream& os, const CheckList& checks) {
  int failed = 0;
  for (const auto& [name, r] : checks) {
    os << (r.pass() ? "PASS " : "FAIL ") << name << "\n";
    if (r.pass()) continue;
    ++failed;
    for (const auto& c : r.clauses) {
      if (c.pass) continue;
      os << "  clause " << c.id << "\n";
      for (size_t k = 0; k < c.witnesses.size() && k < 5; ++k)
        os << "    " << c.witnesses[k].where << ": " << c.witnesses[k].value << "\n";
      if (c.witnesses.size() > 5) os << "    (" << c.witnesses.size() - 5 << " more)\n";
    }
  }
  if (failed) os << failed << " of " << checks.size() << " checks failed\n";
  else os << "all " << checks.size() << " checks passed\n";
}

constexpr const char* kFooter =
    "Exit codes: 0 all checks pass, 1 a check failed, 2 input error.\n"
    "Structure files follow docs/structure.schema.json, --json reports docs/report.schema.json.";

}  // namespace

CheckList run_checks(const StructureFile& s, const std::string& which, const RunOptions& o) {
  const SplitLie2Data& d = s.data;
  bool all = which == "all";
  CheckList out;
  if (all || which == "lie2") {
    out.emplace_back("lie2.axioms", lie2_axioms_check(d));
    out.emplace_back("lie2.q_square", q_square_check(d));
  }
  if (all || which == "rep3") {
    std::mt19937_64 rng(o.seed);
    auto ad = build_adjoint_rep(d, d.tm);
    auto op = operator_from_components(ad.rep);
    out.emplace_back("adjoint.rep3", rep3_check(ad.rep));
    out.emplace_back("adjoint.d_square", d_square_check(op));
    out.emplace_back("adjoint.cross", rep3_agreement_check(ad.rep, adjoint_via_lie_derivative(d, d.tm).rep));
    auto co = build_coadjoint_rep(ad);
    out.emplace_back("coadjoint.table", coadjoint_dual_check(co));
    out.emplace_back("coadjoint.rep3", rep3_check(co.rep));
    out.emplace_back("coadjoint.dual_identity", dual_identity_check(op, co.dual, rng));
  }
  if (all || which == "weil") {
    WeilAlgebra w = build_weil(d);
    out.emplace_back("weil.double_complex", weil_double_complex_check(w));
    out.emplace_back("weil.row", weil_row_vs_coadjoint_check(d, d.tm));
    out.emplace_back("weil.dims", weil_dims_report(w, o.cutoff));
  }
  if (which == "poisson" && !s.poisson) throw InputError("/poisson", "the file has no poisson section");
  if ((all || which == "poisson") && s.poisson) {
    const auto& p = *s.poisson;
    out.emplace_back("poisson.axioms", poisson_axioms_check(p));
    out.emplace_back("poisson.compat", compatibility_check(p, compile_homological_vf(d)));
    out.emplace_back("poisson.sharp_antimorphism", sharp_antimorphism_check(p, d));
    out.emplace_back("poisson.sharp_module", sharp_module_check(p, d, d.tm));
    if (s.symplectic) out.emplace_back("poisson.symplectic", symplectic_check(p, d, d.tm));
  }
  if (out.empty()) throw InputError("", "unknown check " + which);
  if (o.mutations > 0) out.emplace_back("mutations", mutation_report(s, o));
  return out;
}

Report mutation_report(const StructureFile& s, const RunOptions& o) {
  Report r;
  r.check = "mutations";
  r.clause("verdicts_agree");
  std::mt19937_64 rng(o.seed);
  for (int k = 0; k < o.mutations; ++k) {
    std::string what;
    SplitLie2Data m;
    try {
      m = mutate(s.data, rng, &what);
    } catch (const std::invalid_argument&) {
      break;  // no entry to mutate
    }
    bool ax = lie2_axioms_check(m).pass(), sq = q_square_check(m).pass();
    if (ax != sq)
      r.fail("verdicts_agree", what, std::string("axioms ") + (ax ? "pass" : "fail") + ", Q^2 " + (sq ? "pass" : "fail"));
  }
  return r;
}

Json checks_json(const StructureFile& s, const std::string& command, const CheckList& checks,
                 const RunOptions& o) {
  Json c = Json::object();
  bool pass = true;
  for (const auto& [name, r] : checks) {
    c[name] = report_to_json(r);
    pass = pass && r.pass();
  }
  return Json{{"tool", "l2a"},     {"command", command},      {"structure", s.data.name},
              {"seed", o.seed},    {"mutations", o.mutations}, {"pass", pass},
              {"checks", c}};
}

Json adjoint_json(const StructureFile& s) {
  auto ad = build_adjoint_rep(s.data, s.data.tm);
  Json basis = Json::array();
  for (const auto& sec : ad.rep.basis->sections()) basis.push_back(Json{{"name", sec.name}, {"degree", sec.degree}});
  Json comps = Json::object();
  for (const auto& n : rep3_component_names()) {
    Json v = Json::object();
    const auto& vals = ad.rep.comp(n);
    for (size_t i = 0; i < vals.size(); ++i) v[(*ad.rep.basis)[static_cast<int>(i)].name] = vals[i].str();
    comps[n] = v;
  }
  return Json{{"tool", "l2a"}, {"command", "build adjoint"}, {"structure", s.data.name}, {"basis", basis},
              {"components", comps}};
}

Json cohomology_json(const StructureFile& s, int cutoff, bool* ok) {
  const SplitLie2Data& d = s.data;
  WeilAlgebra w = build_weil(d);
  Json ranks = Json::array();
  *ok = true;
  for (int p = 0; p <= cutoff; ++p) {
    Json row = Json::array();
    for (int q = 0; q <= cutoff; ++q) {
      long f = split_weil_dims(d.nvars(), d.rank_q(), d.rank_b, p, q);
      *ok = *ok && f == weil_monomial_count(w, p, q);
      row.push_back(f);
    }
    ranks.push_back(row);
  }
  Json j{{"tool", "l2a"}, {"command", "cohomology"}, {"structure", d.name}, {"cutoff", cutoff},
         {"weil_ranks", ranks}, {"weil_ranks_match_monomials", *ok}};
  if (d.nvars() == 0 && d.rank_b == 0) {
    auto dims = cohomology_dims(trivial_rep(compile_homological_vf(d), 1), 0, d.rank_q());
    j["lie_algebra_cohomology"] = dims;
  }
  return j;
}

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  std::ostringstream out, err;
  CLI::App app{"l2a: exact checks for split Lie 2-algebroids, their adjoint and coadjoint modules, the Weil "
               "algebra and degree -2 Poisson brackets",
               "l2a"};
  app.footer(kFooter);
  app.require_subcommand(1);

  bool json = false, no_timing = false;
  unsigned long seed = 0;
  int mutations = 0, cutoff = 4;
  std::string file, what, fixture, output;

  auto* check = app.add_subcommand("check", "run checkers on a structure file");
  check->add_option("what", what, "lie2, rep3, weil, poisson or all")
      ->required()
      ->check(CLI::IsMember({"lie2", "rep3", "weil", "poisson", "all"}));
  check->add_option("file", file, "structure file (JSON)")->required();
  check->add_flag("--json", json, "print the structured JSON report");
  auto* seed_opt = check->add_option("--seed", seed, "seed of the randomized spot checks and mutations");
  auto* mut_opt = check->add_option("--mutations", mutations, "run K random single-entry mutations")
                      ->check(CLI::NonNegativeNumber);
  check->add_flag("--no-timing", no_timing, "leave timing_ms out of the JSON report");

  auto* build = app.add_subcommand("build", "build a derived object and print it as JSON");
  build->add_option("what", what, "adjoint")->required()->check(CLI::IsMember({"adjoint"}));
  build->add_option("file", file, "structure file (JSON)")->required();

  auto* exp = app.add_subcommand("export", "write a shipped object as JSON");
  exp->add_option("what", what, "fixture")->required()->check(CLI::IsMember({"fixture"}));
  exp->add_option("name", fixture, "FX-ABELIAN, FX-AFF1DER, FX-STRING-SO3, FX-TANGENT-R2 or FX-SO3-PAIR")
      ->required();
  exp->add_option("-o,--output", output, "write to this file instead of stdout");

  auto* coh = app.add_subcommand("cohomology", "W^{p,q} rank tables and Lie algebra cohomology");
  coh->add_option("file", file, "structure file (JSON)")->required();
  auto* cut_opt = coh->add_option("--cutoff", cutoff, "largest p and q")->check(CLI::Range(0, 12));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    res.exit_code = code == 0 ? 0 : 2;
    res.out = out.str();
    res.err = err.str();
    return res;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    if (*exp) {
      StructureFile s = named_fixture(fixture);
      std::string text = structure_to_json(s).dump(2) + "\n";
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output);
        if (!f) throw InputError("", "cannot write " + output);
        f << text;
      }
    } else if (*build) {
      out << adjoint_json(load_structure_file(file)).dump(2) << "\n";
    } else if (*coh) {
      StructureFile s = load_structure_file(file);
      if (cut_opt->count() == 0) cutoff = s.options.cutoff;
      bool ok = true;
      out << cohomology_json(s, cutoff, &ok).dump(2) << "\n";
      res.exit_code = ok ? 0 : 1;
    } else {
      StructureFile s = load_structure_file(file);
      RunOptions o = s.options;
      if (seed_opt->count()) o.seed = seed;
      if (mut_opt->count()) o.mutations = mutations;
      CheckList checks = run_checks(s, what, o);
      bool pass = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.pass(); });
      res.exit_code = pass ? 0 : 1;
      if (json) {
        Json j = checks_json(s, "check " + what, checks, o);
        if (!no_timing)
          j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        out << j.dump(2) << "\n";
      } else {
        human_report(out, checks);
      }
    }
  } catch (const InputError& e) {
    err << "input error at " << e.what() << "\n";
    res.exit_code = 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    res.exit_code = 2;
  }
  res.out = out.str();
  res.err = err.str();
  return res;
}

}  // namespace l2a
