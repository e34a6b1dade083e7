#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chark/curves.hpp"
#include "chark/demos.hpp"
#include "chark/parse.hpp"
#include "chark/suites.hpp"
#include "chark/twisted.hpp"

using namespace chark;

namespace {

/* Session state shared by the subcommands: presentation (loaded or
 * inferred from the expressions), optional representation library and
 * twist, oracle configuration. */
struct Session {
  std::string presentation_file, reps_file, twist_file;
  std::string field = "fp";
  int samples = 16;
  uint64_t seed = 1;
  bool serial = false;
  bool as_json = false;

  OracleConfig oracle() const {
    OracleConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    if (serial) cfg.policy = ExecPolicy::Serial;
    if (field == "q") {
      cfg.kind = FieldKind::Rationals;
    } else if (field == "fp") {
      cfg.kind = FieldKind::Prime;
    } else if (field.rfind("fp:", 0) == 0) {
      cfg.kind = FieldKind::Prime;
      cfg.prime = std::stoull(field.substr(3));
    } else {
      throw error("bad --field (expected q, fp, or fp:PRIME)");
    }
    return cfg;
  }
};

// smallest free presentation covering the gK / pK tokens that appear
GAPresentation infer_presentation(const std::vector<std::string>& exprs) {
  int gens = 0, orbits = 0;
  std::regex tok("\\b([gp])([0-9]+)\\b");
  for (const std::string& s : exprs) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), tok); it != std::sregex_iterator();
         ++it) {
      int k = std::stoi((*it)[2].str());
      if ((*it)[1].str() == "g")
        gens = std::max(gens, k);
      else
        orbits = std::max(orbits, k);
    }
  }
  return GAPresentation::free_action(gens, orbits);
}

GAPresentation session_presentation(const Session& ses, const std::vector<std::string>& exprs) {
  if (!ses.presentation_file.empty())
    return presentation_from_json(load_json_file(ses.presentation_file));
  return infer_presentation(exprs);
}

json report_to_json(const EqReport& er) {
  json j{{"equal", er.equal},
         {"refutation_only", er.refutation_only},
         {"field", er.field},
         {"samples", er.samples},
         {"seed", er.seed},
         {"degree_bound", er.degree}};
  if (er.equal && !er.refutation_only)
    j["false_equal_probability_bound"] = static_cast<double>(er.fail_bound);
  if (!er.equal) {
    j["witness_index"] = er.witness_index;
    j["witness"] = er.witness;
    j["lhs_value"] = er.lhs_value;
    j["rhs_value"] = er.rhs_value;
  }
  return j;
}

void print_report(const EqReport& er, bool as_json) {
  if (as_json) {
    std::cout << report_to_json(er).dump(2) << "\n";
    return;
  }
  std::cout << "equal: " << (er.equal ? "yes" : "no") << "\n";
  std::cout << "field: " << er.field << "   samples: " << er.samples << "   seed: " << er.seed
            << "\n";
  std::cout << "degree bound: " << er.degree << "\n";
  if (er.equal && !er.refutation_only)
    std::printf("false-equal probability < %.3Lg\n", er.fail_bound);
  if (er.equal && er.refutation_only)
    std::cout << "agreement on all provided representations (no probabilistic claim)\n";
  if (!er.equal) {
    std::cout << "witness: sample " << er.witness_index << " evaluates " << er.lhs_value
              << " vs " << er.rhs_value << "\n";
    std::cout << "witness representation: " << er.witness.dump() << "\n";
  }
}

int cmd_eq(const Session& ses, const std::string& ea, const std::string& eb) {
  EqReport er;
  if (!ses.twist_file.empty()) {
    GAPresentation base = session_presentation(ses, {ea, eb});
    CentralExtSpec E = extension_from_json(load_json_file(ses.twist_file), base);
    GAPresentation ext = E.extended_free();
    NameTable names = E.names();
    CharPoly lhs = parse_charpoly(ea, ext, names);
    CharPoly rhs = parse_charpoly(eb, ext, names);
    er = eq_oracle_twisted(lhs, rhs, E, ses.oracle());
  } else {
    GAPresentation P = session_presentation(ses, {ea, eb});
    CharPoly lhs = parse_charpoly(ea, P);
    CharPoly rhs = parse_charpoly(eb, P);
    if (!ses.reps_file.empty())
      er = eq_oracle_on(lhs, rhs, load_json_file(ses.reps_file), P, ses.oracle());
    else
      er = eq_oracle(lhs, rhs, P, ses.oracle());
  }
  print_report(er, ses.as_json);
  return er.equal ? 0 : 1;
}

int cmd_eq_inv(const Session& ses, const std::string& ea, const std::string& eb, int m_opt,
               int n_opt, int points) {
  ConExpr a = parse_conexpr(ea), b = parse_conexpr(eb);
  ConExpr diff = a - b;
  auto [m, n] = con_arity(diff);
  m = std::max(m, m_opt);
  n = std::max(n, n_opt);
  OracleConfig cfg = ses.oracle();
  bool parallel = cfg.policy == ExecPolicy::Parallel;
  int bad;
  std::string field;
  if (cfg.kind == FieldKind::Rationals) {
    auto K = make_ctx_q(cfg);
    bad = check_zero_con(diff, m, n, K, points, cfg.seed, parallel);
    field = "Q";
  } else {
    auto K = make_ctx_p(cfg);
    bad = check_zero_con(diff, m, n, K, points, cfg.seed, parallel);
    field = "F_" + std::to_string(cfg.prime);
  }
  bool equal = bad < 0;
  if (ses.as_json) {
    json j{{"equal", equal}, {"matrices", m}, {"vectors", n},
           {"field", field}, {"points", points}, {"seed", ses.seed}};
    if (!equal) j["witness_point"] = bad;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "equal: " << (equal ? "yes" : "no") << "\n";
    std::cout << "arity: " << m << " matrices, " << n << " vectors   field: " << field
              << "   points: " << points << "   seed: " << ses.seed << "\n";
    std::cout << "difference: " << to_string(diff) << "\n";
    if (!equal) std::cout << "witness: point " << bad << " evaluates nonzero\n";
  }
  return equal ? 0 : 1;
}

int cmd_reduce(const Session& ses, const std::string& ea) {
  GAPresentation P = session_presentation(ses, {ea});
  CharPoly f;
  if (!ses.twist_file.empty()) {
    CentralExtSpec E = extension_from_json(load_json_file(ses.twist_file), P);
    f = twist_normalize(parse_charpoly(ea, E.extended_free(), E.names()), E);
  } else {
    f = parse_charpoly(ea, P);
  }
  CharPoly r = reduce_heuristic(f, P);
  if (ses.as_json)
    std::cout << json{{"input", ea}, {"reduced", to_string(r, P)}}.dump(2) << "\n";
  else
    std::cout << to_string(r, P) << "\n";
  return 0;
}

int cmd_check(const Session& ses, int instances, int max_word_len, int points, int inv_m,
              int inv_n, const std::string& mutate) {
  GAPresentation P = ses.presentation_file.empty()
                         ? GAPresentation::free_action(2, 2)
                         : presentation_from_json(load_json_file(ses.presentation_file));
  SuiteConfig cfg;
  cfg.oracle = ses.oracle();
  cfg.instances = instances;
  cfg.max_word_len = max_word_len;
  cfg.points = points;
  cfg.inv_m = inv_m;
  cfg.inv_n = inv_n;
  cfg.mutate = mutate;

  std::vector<SchemaReport> rs = run_presentation_suite(P, cfg);
  if (ses.as_json) {
    json arr = json::array();
    for (const SchemaReport& r : rs)
      arr.push_back({{"id", r.id},
                     {"instances", r.instances},
                     {"failures", r.failures},
                     {"detail", r.detail}});
    std::cout << json{{"generators", P.gens},
                      {"orbits", P.orbits},
                      {"free", P.free_form()},
                      {"seed", ses.seed},
                      {"schemas", arr}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "presentation: " << P.gens << " generators, " << P.orbits << " orbits"
              << (P.free_form() ? " (free)" : "") << "\n";
    std::cout << "field: "
              << (cfg.oracle.kind == FieldKind::Rationals
                      ? std::string("Q")
                      : "F_" + std::to_string(cfg.oracle.prime))
              << "   samples: " << cfg.oracle.samples << "   seed: " << ses.seed << "\n";
    if (P.gens == 0) std::cout << "no generators: pure arc (Pluecker) schemas only\n";
    int total = 0, bad = 0;
    for (const SchemaReport& r : rs) {
      total += r.instances;
      bad += r.failures;
      std::cout << "schema " << r.id << ": " << r.instances << " instances, "
                << (r.ok() ? "pass" : "FAIL " + std::to_string(r.failures)) << "\n";
      if (!r.ok()) std::cout << "  " << r.detail << "\n";
    }
    if (bad == 0)
      std::cout << "all " << rs.size() << " schemas pass (" << total << " instances, seed "
                << ses.seed << ")\n";
    else
      std::cout << bad << " failing instances across the battery\n";
  }
  return suite_ok(rs) ? 0 : 1;
}

int cmd_demo(const Session& ses, const std::string& name) {
  DemoReport r = run_demo(name, ses.oracle());
  if (ses.as_json)
    std::cout << json{{"name", r.name}, {"ok", r.ok}, {"transcript", r.transcript}}.dump(2)
              << "\n";
  else
    std::cout << "demo " << r.name << " (seed " << ses.seed << ")\n"
              << r.transcript << (r.ok ? "verified" : "FAILED") << "\n";
  return r.ok ? 0 : 1;
}

int cmd_curves(const Session& ses, const std::string& file, bool check, int sites) {
  json j = load_json_file(file);
  SurfaceSpec S = surface_from_json(j);
  NameTable names = S.names();
  GAPresentation P = S.presentation();
  CurveCollection cs = curves_from_json(j.value("curves", json::array()), S);

  json outc = json::array();
  if (!ses.as_json)
    std::cout << "surface: genus " << S.genus << ", boundary " << S.boundary << ", marked "
              << S.marked << " (rank " << S.rank() << ")\n";
  CharPoly prod = CharPoly::constant(Rational(1));
  for (size_t i = 0; i < cs.size(); ++i) {
    CharPoly f = to_char(cs[i], S);
    prod *= f;
    if (ses.as_json)
      outc.push_back(to_string(f, names));
    else
      std::cout << "curve " << i + 1 << ": " << to_string(f, names) << "\n";
  }
  if (!ses.as_json && !cs.empty()) std::cout << "product: " << to_string(prod, names) << "\n";

  int failures = 0;
  if (check) {
    Rng g(ses.seed);
    OracleConfig cfg = ses.oracle();
    if (!ses.as_json)
      std::cout << "checking rules on random sites (" << cfg.samples << " samples each, seed "
                << ses.seed << ")\n";
    for (int rule = 1; rule <= 7; ++rule) {
      int ok = 0;
      for (int k = 0; k < sites; ++k) {
        CurveSite site;
        site.g = detail::rand_word(g, P.gens, 5);
        site.h = detail::rand_word(g, P.gens, 5);
        if (P.orbits > 0) {
          site.p = detail::rand_pt(g, P, 4);
          site.q = detail::rand_pt(g, P, 4);
          site.p2 = detail::rand_pt(g, P, 4);
          site.q2 = detail::rand_pt(g, P, 4);
        } else if (rule != 1 && rule != 3 && rule != 5) {
          continue;
        }
        auto [lhs, rhs] = graphical_rule(S, rule, site);
        if (eq_oracle(lhs, rhs, P, cfg).equal)
          ++ok;
        else
          ++failures;
      }
      if (!ses.as_json) std::cout << "rule " << rule << ": " << ok << " sites verified\n";
    }
  }
  if (ses.as_json)
    std::cout << json{{"rank", S.rank()},
                      {"curves", outc},
                      {"product", to_string(prod, names)},
                      {"rule_failures", check ? json(failures) : json()}}
                     .dump(2)
              << "\n";
  else if (check)
    std::cout << (failures == 0 ? "all rules hold\n" : "RULE FAILURES\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character algebra workbench for decorated SL2 local systems"};
  app.require_subcommand(1);
  app.fallthrough();  // session flags may follow the subcommand name

  Session ses;
  app.add_option("--presentation", ses.presentation_file, "presentation JSON file");
  app.add_option("--reps", ses.reps_file, "representation library JSON (refutation-only oracle)");
  app.add_option("--twist", ses.twist_file, "central extension JSON (twisted sampling)");
  app.add_option("--field", ses.field, "q, fp, or fp:PRIME")->capture_default_str();
  app.add_option("--samples", ses.samples, "oracle sample count")->capture_default_str();
  app.add_option("--seed", ses.seed, "random seed")->capture_default_str();
  app.add_flag("--serial", ses.serial, "disable parallel sampling");
  app.add_flag("--json", ses.as_json, "machine-readable transcripts");

  std::string ea, eb, demo_name, curve_file;
  std::string mutate;
  int instances = 8, max_word_len = 4, points = 50, inv_m = 2, inv_n = 2, sites = 6;
  bool check = false;

  CLI::App* eq = app.add_subcommand("eq", "test two expressions for equality");
  eq->add_option("lhs", ea, "left expression")->required();
  eq->add_option("rhs", eb, "right expression")->required();

  int ei_m = 0, ei_n = 0, ei_points = 50;
  CLI::App* eqi = app.add_subcommand(
      "eq-inv", "test two matrix-invariant expressions (X/Xi/Th/tr letters) for equality");
  eqi->add_option("lhs", ea, "left expression")->required();
  eqi->add_option("rhs", eb, "right expression")->required();
  eqi->add_option("--inv-m", ei_m, "minimum matrix arity (default: inferred)");
  eqi->add_option("--inv-n", ei_n, "minimum vector arity (default: inferred)");
  eqi->add_option("--points", ei_points, "sample points")->capture_default_str();

  CLI::App* red = app.add_subcommand("reduce", "rewrite an expression to reduced form");
  red->add_option("expr", ea, "expression")->required();

  CLI::App* chk = app.add_subcommand("check-presentation", "run the relation schema battery");
  chk->add_option("--instances", instances, "randomized sites per schema")->capture_default_str();
  chk->add_option("--max-word-len", max_word_len, "word length bound")->capture_default_str();
  chk->add_option("--points", points, "points for the matrix-invariant schemas")
      ->capture_default_str();
  chk->add_option("--inv-m", inv_m, "matrix arity of the invariant schemas")
      ->capture_default_str();
  chk->add_option("--inv-n", inv_n, "vector arity of the invariant schemas")
      ->capture_default_str();
  chk->add_option("--mutate", mutate, "schema id to corrupt (harness soundness check)");

  CLI::App* dem = app.add_subcommand("demo", "run a worked example");
  dem->add_option("name", demo_name, "gr2n | z-two-points | chebyshev | tau-chi")->required();

  CLI::App* cur = app.add_subcommand("curves", "translate a surface curve file");
  cur->add_option("file", curve_file, "surface + curves JSON")->required();
  cur->add_flag("--check", check, "verify the graphical rules on random sites");
  cur->add_option("--sites", sites, "random sites per rule for --check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eq->parsed()) return cmd_eq(ses, ea, eb);
    if (eqi->parsed()) return cmd_eq_inv(ses, ea, eb, ei_m, ei_n, ei_points);
    if (red->parsed()) return cmd_reduce(ses, ea);
    if (chk->parsed())
      return cmd_check(ses, instances, max_word_len, points, inv_m, inv_n, mutate);
    if (dem->parsed()) return cmd_demo(ses, demo_name);
    if (cur->parsed()) return cmd_curves(ses, curve_file, check, sites);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
