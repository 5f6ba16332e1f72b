#ifndef APOLAR_JSON_IO_HPP
#define APOLAR_JSON_IO_HPP

// JSON encodings of modules, construction reports and WLP certificates.
//
// Module files:
//   {"r": 3, "generators": [{"degree": 9, "terms": [{"exps": [2,0,7], "coeff": "437"}, ...]}, ...]}
// Coefficients are decimal strings ("n" or "a/b"). Two compact generator
// encodings are also accepted and written for large modules:
//   {"degree": e, "power_sum": [["1","-2","3"], ...]}     sum of L^e
//   {"degree": e, "random": {"ambient": r, "seed": "S"}}  random_form(r, e, S)

#include "apolar/constructions.hpp"
#include "apolar/form.hpp"
#include "apolar/hvector.hpp"
#include "apolar/recipe.hpp"
#include "apolar/wlp.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

using Json = nlohmann::ordered_json;

inline Json to_json(const HVector& h) { return Json(h.entries()); }

inline Json to_json(const Form<RationalField>& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back({{"exps", m.exponents()}, {"coeff", c.get_str()}});
  return Json{{"degree", f.degree()}, {"terms", std::move(terms)}};
}

inline Json to_json(const GeneratorRecipe& g, std::size_t ambient, bool expand) {
  if (expand || g.kind == GeneratorRecipe::Kind::literal) return to_json(g.materialize(RationalField{}, ambient));
  if (g.kind == GeneratorRecipe::Kind::power_sum) {
    Json forms = Json::array();
    for (const auto& l : g.linear_forms) {
      Json row = Json::array();
      for (const auto& c : l) row.push_back(c.get_str());
      forms.push_back(std::move(row));
    }
    return Json{{"degree", g.degree}, {"power_sum", std::move(forms)}};
  }
  return Json{{"degree", g.degree}, {"random", {{"ambient", g.source_ambient}, {"seed", std::to_string(g.seed)}}}};
}

/// With `expand`, every generator is written as explicit terms.
inline Json to_json(const ModuleRecipe& m, bool expand = false) {
  Json gens = Json::array();
  for (const auto& g : m.generators) gens.push_back(to_json(g, m.r, expand));
  return Json{{"r", m.r}, {"generators", std::move(gens)}};
}

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("module JSON: missing '") + key + "'");
  return j.at(key);
}

inline mpz_class parse_integer(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (!j.is_string()) throw std::invalid_argument("module JSON: integer expected");
  const mpq_class q = parse_rational(j.get<std::string>());
  if (q.get_den() != 1) throw std::invalid_argument("module JSON: integer expected, got " + j.get<std::string>());
  return q.get_num();
}

inline std::uint64_t parse_u64(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    try {
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("module JSON: unsigned integer expected");
}

}  // namespace detail

inline ModuleRecipe module_from_json(const Json& j) {
  const auto& rj = detail::require(j, "r");
  if (!rj.is_number_unsigned()) throw std::invalid_argument("module JSON: 'r' must be a positive integer");
  const auto r = rj.get<std::size_t>();
  (void)Monomial(r);
  const auto& gens = detail::require(j, "generators");
  if (!gens.is_array() || gens.empty()) throw std::invalid_argument("module JSON: 'generators' must be a nonempty array");
  ModuleRecipe m{r, {}};
  for (const auto& g : gens) {
    const auto& dj = detail::require(g, "degree");
    if (!dj.is_number_unsigned()) throw std::invalid_argument("module JSON: 'degree' must be a non-negative integer");
    const auto degree = dj.get<unsigned>();
    if (g.contains("terms")) {
      std::vector<Form<RationalField>::Term> terms;
      for (const auto& t : g.at("terms")) {
        const auto exps = detail::require(t, "exps").get<std::vector<unsigned>>();
        if (exps.size() != r) throw std::invalid_argument("module JSON: exponent vector of the wrong length");
        const auto& cj = detail::require(t, "coeff");
        const mpq_class c = cj.is_string() ? parse_rational(cj.get<std::string>()) : mpq_class(detail::parse_integer(cj));
        terms.emplace_back(Monomial(exps), c);
      }
      m.generators.push_back(GeneratorRecipe::literal(Form<RationalField>(RationalField{}, r, degree, std::move(terms))));
    } else if (g.contains("power_sum")) {
      std::vector<IntVector> forms;
      for (const auto& row : g.at("power_sum")) {
        IntVector l;
        for (const auto& c : row) l.push_back(detail::parse_integer(c));
        if (l.size() > r) throw std::invalid_argument("module JSON: linear form has too many coefficients");
        forms.push_back(std::move(l));
      }
      m.generators.push_back(GeneratorRecipe::power_sum(std::move(forms), degree));
    } else if (g.contains("random")) {
      const auto& rnd = g.at("random");
      const auto ambient = detail::require(rnd, "ambient").get<std::size_t>();
      if (ambient > r) throw std::invalid_argument("module JSON: random generator needs more variables than 'r'");
      m.generators.push_back(GeneratorRecipe::random(ambient, degree, detail::parse_u64(detail::require(rnd, "seed"))));
    } else {
      throw std::invalid_argument("module JSON: generator needs 'terms', 'power_sum' or 'random'");
    }
  }
  return m;
}

inline ModuleRecipe read_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open module file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& ex) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + ex.what());
  }
  try {
    return module_from_json(j);
  } catch (const Json::exception& ex) {
    throw std::invalid_argument("malformed module in '" + path + "': " + ex.what());
  }
}

inline void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

/// Modules with at most this many explicit terms are embedded expanded.
inline constexpr std::size_t kExpandTermLimit = 20000;

inline std::size_t expanded_term_count(const ModuleRecipe& m) {
  std::size_t n = 0;
  for (const auto& g : m.generators) {
    n += g.kind == GeneratorRecipe::Kind::literal ? g.form->terms().size() : monomial_count(m.r, g.degree);
  }
  return n;
}

inline Json to_json(const ConstructionReport& rep, bool with_module = true) {
  Json params = Json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  Json j{{"construction", rep.construction},
         {"params", std::move(params)},
         {"seed", rep.seed},
         {"retries", rep.retries},
         {"target_h", to_json(rep.target_h)},
         {"computed_h", to_json(rep.computed_h)},
         {"verdict", rep.verdict()},
         {"field", rep.field}};
  if (rep.base_h) j["base_h"] = to_json(*rep.base_h);
  for (const auto& [k, v] : rep.notes) j[k] = v;
  if (with_module) j["module"] = to_json(rep.module, expanded_term_count(rep.module) <= kExpandTermLimit);
  return j;
}

inline Json to_json(const WlpCertificate& c) {
  Json degrees = Json::array();
  for (const auto& d : c.degrees) {
    degrees.push_back({{"i", d.degree},
                       {"dimA_i", d.dim_i},
                       {"dimA_next", d.dim_next},
                       {"required", d.required},
                       {"rank", d.rank},
                       {"mode", d.mode}});
  }
  return Json{{"verdict", to_string(c.verdict)}, {"degrees", std::move(degrees)}, {"failing", c.failing}, {"field", c.field}};
}

}  // namespace apolar

#endif  // APOLAR_JSON_IO_HPP
