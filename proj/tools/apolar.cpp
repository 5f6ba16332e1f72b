// apolar: command-line front end for the inverse-system toolkit.
//
// Exit status: 0 success, 1 a verification failed (construction verdict
// "fail", or a generic sample that could not be realized), 2 usage error.

#include "apolar/apolar.hpp"
#include "apolar/json_io.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace apolar;

enum class OutputFormat { text, json };

struct Globals {
  std::string field;
  bool exact = false;
  std::string out = "text";

  FieldMode mode() const {
    if (exact) return FieldMode::rational();
    if (field.empty()) return FieldMode::two_prime();
    return parse_field_mode(field);
  }
  OutputFormat format() const { return out == "json" ? OutputFormat::json : OutputFormat::text; }
};

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s.empty() ? "none" : s;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

int emit_report(const ConstructionReport& rep, const Globals& g, const std::string& module_out, bool expand) {
  if (!module_out.empty()) write_json(module_out, to_json(rep.module, expand));
  if (g.format() == OutputFormat::json) {
    print_json(to_json(rep));
  } else {
    std::cout << "construction: " << rep.construction << '\n';
    for (const auto& [k, v] : rep.params) std::cout << k << ": " << v << '\n';
    std::cout << "seed: " << rep.seed << '\n';
    std::cout << "retries: " << rep.retries << '\n';
    if (rep.base_h) std::cout << "base_h: " << rep.base_h->to_string() << '\n';
    std::cout << "target_h: " << rep.target_h.to_string() << '\n';
    std::cout << "computed_h: " << rep.computed_h.to_string() << '\n';
    std::cout << "unimodal: " << yes_no(is_unimodal(rep.computed_h)) << '\n';
    std::cout << "maxima: " << count_maxima(rep.computed_h) << '\n';
    for (const auto& [k, v] : rep.notes) std::cout << k << ": " << v << '\n';
    std::cout << "field: " << rep.field << '\n';
    if (!module_out.empty()) std::cout << "module: " << module_out << '\n';
    std::cout << "verdict: " << rep.verdict() << '\n';
  }
  return rep.pass ? 0 : 1;
}

void emit_certificate(const WlpCertificate& c, const Globals& g) {
  if (g.format() == OutputFormat::json) {
    print_json(to_json(c));
    return;
  }
  std::cout << "verdict: " << to_string(c.verdict) << '\n';
  std::cout << "failing: " << join(c.failing) << '\n';
  for (const auto& d : c.degrees) {
    std::cout << "degree " << d.degree << ": dimA_i=" << d.dim_i << " dimA_next=" << d.dim_next
              << " required=" << d.required << " rank=" << d.rank << " mode=" << d.mode << '\n';
  }
  std::cout << "field: " << c.field << '\n';
}

Json analysis_json(const HVector& h) {
  const auto& e = h.entries();
  return Json{{"h", to_json(h)},
              {"unimodal", is_unimodal(h)},
              {"maxima", count_maxima(h)},
              {"plateau_maxima", count_plateau_maxima(e)},
              {"o_sequence", is_O_sequence(h)},
              {"differentiable", is_differentiable(e)},
              {"si", is_si_sequence(e)}};
}

// Forms of I_d in the chosen field. Two-prime mode has no single field to
// print coefficients in, so it falls back to the rationals.
template <ExactField F>
Json annihilator_json(const InverseSystem<F>& m, unsigned d) {
  Json basis = Json::array();
  for (const auto& f : annihilator_component(m, d)) basis.push_back(f.to_string('x'));
  Json j{{"degree", d}, {"dim", basis.size()}};
  if (d >= 1) j["new_generators"] = new_generator_count(m, d);
  j["basis"] = std::move(basis);
  j["field"] = m.field().name();
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact inverse-system toolkit: h-vectors, constructions and WLP certificates"};
  app.fallthrough();
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "Coefficient field: q or fp:P (default: two primes, rational fallback)");
  app.add_flag("--exact", g.exact, "Compute every rank over the rationals");
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"text", "json"}));

  // construct
  auto* construct = app.add_subcommand("construct", "Build a module and verify its h-vector");
  construct->require_subcommand(1);
  std::uint64_t seed = 0;
  std::optional<std::size_t> lift;
  std::string module_out;
  bool expand = false;
  construct->add_option("--seed", seed, "Seed for every random choice");
  construct->add_option("--lift", lift, "Lift the final module to this many variables")->check(CLI::Range(3, 8));
  construct->add_option("--module-out", module_out, "Write the module JSON here");
  construct->add_flag("--expand", expand, "Write every generator as explicit terms");

  unsigned p = 0, e = 0, n = 0, k = 0;
  std::optional<unsigned> e_opt;
  std::size_t t = 0;
  std::string direction = "auto";
  auto* c_ex2 = construct->add_subcommand("example2", "Points on a cubic plus a generic form, socle degree 9");
  auto* c_tail = construct->add_subcommand("tail", "Points on a degree-p curve plus a generic form");
  c_tail->add_option("--p", p, "Curve degree")->required()->check(CLI::PositiveNumber);
  c_tail->add_option("--e", e, "Socle degree")->required();
  auto* c_nmax = construct->add_subcommand("nmaxima", "Level h-vector with exactly N maxima");
  c_nmax->add_option("--n", n, "Number of maxima")->required()->check(CLI::PositiveNumber);
  c_nmax->add_option("--e", e_opt, "Socle degree (default: the smallest that works)");
  auto* c_ex7 = construct->add_subcommand("example7", "Type-e+2 level algebra without WLP");
  c_ex7->add_option("--e", e, "Socle degree")->required()->check(CLI::Range(3, 200));
  auto* c_prop8 = construct->add_subcommand("prop8", "Type-3 level algebra without WLP, h = 1,3,5,7,9,9,6,3");
  auto* c_rem9 = construct->add_subcommand("remark9", "Lex monomials plus two powers of linear forms");
  c_rem9->add_option("--t", t, "Type of the monomial base")->required();
  c_rem9->add_option("--e", e, "Socle degree")->required();
  c_rem9->add_option("--direction", direction, "Lex segment end")
      ->check(CLI::IsMember({"lex-first", "lex-last", "auto"}));
  auto* c_ps = construct->add_subcommand("powersum", "The example2 base plus a sum of k powers of linear forms");
  c_ps->add_option("--k", k, "Number of linear forms")->required()->check(CLI::PositiveNumber);

  // module commands
  std::string module_path;
  unsigned degree = 0;
  auto* hvec = app.add_subcommand("hvector", "h-vector of a module");
  hvec->add_option("--module", module_path, "Module JSON")->required();
  auto* ann = app.add_subcommand("annihilator", "Basis of Ann(M) in one degree");
  ann->add_option("--module", module_path, "Module JSON")->required();
  ann->add_option("--degree", degree, "Degree")->required();

  auto* wlp = app.add_subcommand("wlp", "Weak Lefschetz test of A = R/Ann(M)");
  wlp->require_subcommand(1);
  std::uint64_t wlp_seed = 0;
  auto* probe = wlp->add_subcommand("probe", "Ranks for one random linear form");
  auto* certify = wlp->add_subcommand("certify", "Generic ranks, decided exactly");
  for (auto* sub : {probe, certify}) {
    sub->add_option("--module", module_path, "Module JSON")->required();
    sub->add_option("--seed", wlp_seed, "Seed for the linear form");
  }

  // sequences
  std::string h_text;
  std::size_t r = 3;
  auto* predict = app.add_subcommand("predict", "Predicted h-vectors");
  predict->require_subcommand(1);
  auto* lemma1 = predict->add_subcommand("lemma1", "h-vector after adding a generic form of the socle degree");
  lemma1->add_option("--h", h_text, "Base h-vector, comma separated")->required();
  lemma1->add_option("--r", r, "Number of variables")->required()->check(CLI::Range(1, 8));
  auto* analyze = app.add_subcommand("analyze", "Shape and realizability tests of a sequence");
  analyze->add_option("--h", h_text, "Sequence, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  const FieldMode mode = g.mode();

  if (construct->parsed()) {
    ConstructionReport rep;
    if (c_ex2->parsed()) {
      rep = build_example2(seed, mode);
    } else if (c_tail->parsed()) {
      rep = build_arithmetic_tail(p, e, seed, mode);
    } else if (c_nmax->parsed()) {
      rep = build_n_maxima(n, seed, e_opt, mode);
    } else if (c_ex7->parsed()) {
      rep = build_example7(e, mode);
    } else if (c_prop8->parsed()) {
      rep = build_prop8(mode);
    } else if (c_rem9->parsed()) {
      rep = build_remark9(t, e, seed, parse_lex_end(direction), mode);
    } else {
      rep = build_power_sum(k, seed, mode);
    }
    if (lift) rep = lift_report(std::move(rep), *lift, mode);
    return emit_report(rep, g, module_out, expand);
  }

  if (hvec->parsed()) {
    const auto m = read_module(module_path);
    const auto h = compute_h(m, mode);
    if (g.format() == OutputFormat::json) {
      print_json(Json{{"h", to_json(h.value)}, {"socle_degree", h.value.socle_degree()}, {"field", h.field}});
    } else {
      std::cout << "h: " << h.value.to_string() << '\n';
      std::cout << "socle_degree: " << h.value.socle_degree() << '\n';
      std::cout << "field: " << h.field << '\n';
    }
    return 0;
  }

  if (ann->parsed()) {
    const auto m = read_module(module_path);
    const Json j = mode.kind == FieldMode::Kind::prime ? annihilator_json(m.materialize(PrimeField(mode.prime)), degree)
                                                       : annihilator_json(m.materialize(RationalField{}), degree);
    if (g.format() == OutputFormat::json) {
      print_json(j);
    } else {
      std::cout << "degree: " << degree << '\n';
      std::cout << "dim: " << j["dim"].get<std::size_t>() << '\n';
      if (j.contains("new_generators")) std::cout << "new_generators: " << j["new_generators"].get<std::size_t>() << '\n';
      for (const auto& f : j["basis"]) std::cout << "basis: " << f.get<std::string>() << '\n';
      std::cout << "field: " << j["field"].get<std::string>() << '\n';
    }
    return 0;
  }

  if (wlp->parsed()) {
    const auto m = read_module(module_path);
    if (probe->parsed()) {
      emit_certificate(wlp_probe(m, wlp_seed, mode), g);
    } else {
      const std::uint64_t prime = mode.kind == FieldMode::Kind::prime ? mode.prime : kDefaultPrime;
      emit_certificate(wlp_certify(m, prime), g);
    }
    return 0;
  }

  if (lemma1->parsed()) {
    const auto h = lemma1_predict(parse_hvector(h_text), r);
    if (g.format() == OutputFormat::json) {
      print_json(Json{{"h", to_json(h)}});
    } else {
      std::cout << "h: " << h.to_string() << '\n';
    }
    return 0;
  }

  const auto h = parse_hvector(h_text);
  const Json j = analysis_json(h);
  if (g.format() == OutputFormat::json) {
    print_json(j);
  } else {
    std::cout << "h: " << h.to_string() << '\n';
    for (const auto& [key, v] : j.items()) {
      if (key != "h") std::cout << key << ": " << v.dump() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const apolar::VerificationError& ex) {
    std::cerr << "verification failed: " << ex.what() << '\n';
    if (ex.observed()) std::cerr << "observed: " << ex.observed()->to_string() << '\n';
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::out_of_range& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
