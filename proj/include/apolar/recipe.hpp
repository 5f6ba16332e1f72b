#ifndef APOLAR_RECIPE_HPP
#define APOLAR_RECIPE_HPP

// Field-independent descriptions of inverse systems. A recipe lists its
// generators as exact data (literal rational forms, sums of powers of
// integer linear forms, or seeded random forms) and can be materialized
// over any exact field, so the same module is evaluated consistently over
// the rationals and modulo primes.

#include "apolar/field.hpp"
#include "apolar/field_mode.hpp"
#include "apolar/form.hpp"
#include "apolar/hvector.hpp"
#include "apolar/inverse_system.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

/// Computation ran but a verified property did not hold.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what, std::optional<HVector> observed = std::nullopt)
      : std::runtime_error(what), observed_(std::move(observed)) {}
  const std::optional<HVector>& observed() const { return observed_; }

 private:
  std::optional<HVector> observed_;
};

using IntVector = std::vector<mpz_class>;

struct GeneratorRecipe {
  enum class Kind { literal, power_sum, random };

  Kind kind = Kind::literal;
  unsigned degree = 0;
  std::optional<Form<RationalField>> form;
  /// power_sum: the generator is the sum of L^degree over these linear forms
  std::vector<IntVector> linear_forms;
  /// random: random_form(source_ambient, degree, seed), embedded
  std::size_t source_ambient = 0;
  std::uint64_t seed = 0;

  static GeneratorRecipe literal(Form<RationalField> f) {
    GeneratorRecipe g;
    g.kind = Kind::literal;
    g.degree = f.degree();
    g.form = std::move(f);
    return g;
  }
  static GeneratorRecipe power_sum(std::vector<IntVector> forms, unsigned degree) {
    if (forms.empty()) throw std::invalid_argument("power sum needs at least one linear form");
    GeneratorRecipe g;
    g.kind = Kind::power_sum;
    g.degree = degree;
    g.linear_forms = std::move(forms);
    return g;
  }
  static GeneratorRecipe power(IntVector form, unsigned degree) { return power_sum({std::move(form)}, degree); }
  static GeneratorRecipe random(std::size_t ambient, unsigned degree, std::uint64_t seed) {
    GeneratorRecipe g;
    g.kind = Kind::random;
    g.degree = degree;
    g.source_ambient = ambient;
    g.seed = seed;
    return g;
  }

  /// Smallest ambient variable count the generator lives in.
  std::size_t min_ambient() const {
    switch (kind) {
      case Kind::literal:
        return form->ambient();
      case Kind::power_sum: {
        std::size_t n = 0;
        for (const auto& l : linear_forms) n = std::max(n, l.size());
        return n;
      }
      case Kind::random:
        break;
    }
    return source_ambient;
  }

  template <ExactField F>
  Form<F> materialize(const F& field, std::size_t ambient) const {
    if (ambient < min_ambient()) throw std::invalid_argument("generator needs more variables than the module has");
    switch (kind) {
      case Kind::literal:
        return convert(*form, field).embedded(ambient);
      case Kind::power_sum: {
        std::vector<typename F::Element> dense(monomial_count(ambient, degree), field.zero());
        for (const auto& l : linear_forms) {
          std::vector<typename F::Element> c(ambient, field.zero());
          for (std::size_t j = 0; j < l.size(); ++j) c[j] = field.from_integer(l[j]);
          const auto p = power_of_linear(field, c, degree);
          for (const auto& [m, v] : p.terms()) {
            auto& slot = dense[m.index()];
            slot = field.add(slot, v);
          }
        }
        return Form<F>::from_dense(field, ambient, degree, dense, monomials_of_degree(ambient, degree));
      }
      case Kind::random:
        break;
    }
    return random_form(field, source_ambient, degree, seed).embedded(ambient);
  }
};

struct ModuleRecipe {
  std::size_t r = 0;
  std::vector<GeneratorRecipe> generators;

  unsigned socle_degree() const {
    unsigned e = 0;
    for (const auto& g : generators) e = std::max(e, g.degree);
    return e;
  }
  /// All generators share the socle degree.
  bool single_degree() const {
    return std::all_of(generators.begin(), generators.end(), [&](const auto& g) { return g.degree == socle_degree(); });
  }

  template <ExactField F>
  InverseSystem<F> materialize(const F& field) const {
    if (generators.empty()) throw std::invalid_argument("module has no generators");
    std::vector<Form<F>> forms;
    forms.reserve(generators.size());
    for (const auto& g : generators) {
      auto f = g.materialize(field, r);
      if (f.is_zero()) throw std::domain_error("generator vanishes in " + field.name());
      forms.push_back(std::move(f));
    }
    return InverseSystem<F>(field, r, std::move(forms));
  }

  ModuleRecipe with(GeneratorRecipe g) const {
    ModuleRecipe out = *this;
    out.generators.push_back(std::move(g));
    return out;
  }

  /// The same generators in r_new >= r variables.
  ModuleRecipe embedded(std::size_t r_new) const {
    if (r_new < r) throw std::invalid_argument("cannot embed into fewer variables");
    ModuleRecipe out{r_new, {}};
    for (auto g : generators) {
      if (g.kind == GeneratorRecipe::Kind::literal) g.form = g.form->embedded(r_new);
      out.generators.push_back(std::move(g));
    }
    return out;
  }

  static ModuleRecipe from_system(const InverseSystem<RationalField>& m) {
    ModuleRecipe out{m.ambient(), {}};
    for (const auto& g : m.generators()) out.generators.push_back(GeneratorRecipe::literal(g));
    return out;
  }
};

/// h-vector of a recipe in the given field mode.
inline InField<HVector> compute_h(const ModuleRecipe& m, const FieldMode& mode) {
  return run_in_mode(mode, [&](const auto& field) { return h_vector(m.materialize(field)); });
}

struct Extension {
  HVector base;
  HVector extended;
  friend bool operator==(const Extension&, const Extension&) = default;
};

/// h-vectors of M and of M + <extra>, sharing the elimination of M.
inline InField<Extension> compute_extension(const ModuleRecipe& m, const std::vector<GeneratorRecipe>& extra,
                                            const FieldMode& mode) {
  return run_in_mode(mode, [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    const auto sys = m.materialize(field);
    typename DerivativeSpaces<F>::Options opt;
    opt.keep_echelons = true;
    const DerivativeSpaces<F> spaces(sys, opt);
    std::vector<Form<F>> forms;
    for (const auto& g : extra) forms.push_back(g.materialize(field, m.r));
    Sequence ext;
    for (auto d : spaces.extended_dims(forms)) ext.push_back(static_cast<std::int64_t>(d));
    return Extension{spaces.h_vector(), HVector(std::move(ext))};
  });
}

}  // namespace apolar

#endif  // APOLAR_RECIPE_HPP
