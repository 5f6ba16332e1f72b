#ifndef APOLAR_FORM_HPP
#define APOLAR_FORM_HPP

// Homogeneous forms in S = k[y1..yr] and the apolarity action of
// R = k[x1..xr], where x_i acts as the partial derivative d/dy_i.

#include "apolar/field.hpp"
#include "apolar/monomial.hpp"
#include "apolar/random.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apolar {

template <ExactField F>
class Form {
 public:
  using Element = typename F::Element;
  using Term = std::pair<Monomial, Element>;

  Form(F field, std::size_t ambient, unsigned degree) : field_(std::move(field)), ambient_(ambient), degree_(degree) {
    (void)Monomial(ambient);
  }

  /// Combines repeated monomials and drops zero coefficients.
  Form(F field, std::size_t ambient, unsigned degree, std::vector<Term> terms)
      : Form(std::move(field), ambient, degree) {
    for (const auto& [m, c] : terms) {
      if (m.nvars() != ambient_) throw std::invalid_argument("monomial from a different ring");
      if (m.degree() != degree_) throw std::invalid_argument("form is not homogeneous of degree " + std::to_string(degree_));
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return compare(a.first, b.first, MonomialOrder::lex) > 0;
    });
    for (auto& t : terms) {
      if (!terms_.empty() && terms_.back().first == t.first) {
        terms_.back().second = field_.add(terms_.back().second, t.second);
      } else {
        terms_.push_back(std::move(t));
      }
    }
    std::erase_if(terms_, [this](const Term& t) { return field_.is_zero(t.second); });
  }

  /// From a dense coefficient vector in canonical order.
  static Form from_dense(F field, std::size_t ambient, unsigned degree, std::span<const Element> coeffs,
                         const std::vector<Monomial>& basis) {
    if (coeffs.size() != basis.size()) throw std::invalid_argument("dense vector length mismatch");
    Form f(field, ambient, degree);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (!field.is_zero(coeffs[i])) f.terms_.emplace_back(basis[i], coeffs[i]);
    }
    return f;
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  Element coefficient(const Monomial& m) const {
    for (const auto& [mono, c] : terms_) {
      if (mono == m) return c;
    }
    return field_.zero();
  }

  /// Coefficients in canonical order; length C(r-1+d, d).
  std::vector<Element> dense() const {
    std::vector<Element> out(monomial_count(ambient_, degree_), field_.zero());
    for (const auto& [m, c] : terms_) out[m.index()] = c;
    return out;
  }

  Form scaled(const Element& s) const {
    std::vector<Term> t;
    for (const auto& [m, c] : terms_) t.emplace_back(m, field_.mul(c, s));
    return Form(field_, ambient_, degree_, std::move(t));
  }

  friend Form operator+(const Form& a, const Form& b) {
    a.require_compatible(b);
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Form(a.field_, a.ambient_, a.degree_, std::move(t));
  }
  friend Form operator-(const Form& a, const Form& b) { return a + b.scaled(a.field_.neg(a.field_.one())); }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.ambient_ != b.ambient_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].first == b.terms_[i].first) || !a.field_.equal(a.terms_[i].second, b.terms_[i].second)) {
        return false;
      }
    }
    return true;
  }

  /// Copy in r' >= r variables.
  Form embedded(std::size_t ambient) const {
    std::vector<Term> t;
    for (const auto& [m, c] : terms_) t.emplace_back(m.embedded(ambient), c);
    return Form(field_, ambient, degree_, std::move(t));
  }

  /// Text form, e.g. `437*y1^7 - 232*y1^6*y2`; "0" for the zero form.
  std::string to_string(char prefix = 'y') const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string coeff = field_.to_string(c);
      bool negative = false;
      if (!coeff.empty() && coeff[0] == '-') {
        negative = true;
        coeff.erase(0, 1);
      }
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (m.degree() == 0) {
        out += coeff;
      } else if (coeff == "1") {
        out += m.to_string(prefix);
      } else {
        out += coeff + "*" + m.to_string(prefix);
      }
    }
    return out;
  }

 private:
  void require_compatible(const Form& b) const {
    if (ambient_ != b.ambient_ || degree_ != b.degree_) throw std::invalid_argument("forms of different shape");
  }

  F field_;
  std::size_t ambient_;
  unsigned degree_;
  std::vector<Term> terms_;  // lex descending, nonzero coefficients
};

/// Applies the operator x^m to f: prod_i (d/dy_i)^{m_i} f, with the true
/// calculus coefficients.
template <ExactField F>
Form<F> differentiate(const Form<F>& f, const Monomial& m) {
  if (m.nvars() != f.ambient()) throw std::invalid_argument("operator from a different ring");
  if (m.degree() > f.degree()) throw std::invalid_argument("order exceeds degree");
  const F& field = f.field();
  std::vector<typename Form<F>::Term> out;
  for (const auto& [mono, c] : f.terms()) {
    if (!mono.divisible_by(m)) continue;
    auto coeff = c;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      for (unsigned k = 0; k < m[i]; ++k) coeff = field.mul(coeff, field.from_int(static_cast<std::int64_t>(mono[i] - k)));
    }
    out.emplace_back(mono / m, coeff);
  }
  return Form<F>(field, f.ambient(), f.degree() - m.degree(), std::move(out));
}

/// Factorials 0!..n! in the field; p must exceed n for the modular backend.
template <ExactField F>
std::vector<typename F::Element> factorials(const F& field, unsigned n) {
  std::vector<typename F::Element> fact{field.one()};
  for (unsigned k = 1; k <= n; ++k) fact.push_back(field.mul(fact.back(), field.from_int(k)));
  return fact;
}

/// (c1*y1 + ... + cr*yr)^e by the multinomial expansion.
template <ExactField F>
Form<F> power_of_linear(const F& field, std::span<const typename F::Element> coeffs, unsigned e) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [&](const auto& c) { return field.is_zero(c); })) {
    throw std::invalid_argument("linear form must be nonzero");
  }
  const std::size_t r = coeffs.size();
  const auto fact = factorials(field, e);
  std::vector<typename F::Element> inv_fact;
  inv_fact.reserve(fact.size());
  for (const auto& x : fact) inv_fact.push_back(field.inv(x));
  std::vector<std::vector<typename F::Element>> powers(r);
  for (std::size_t j = 0; j < r; ++j) {
    powers[j].push_back(field.one());
    for (unsigned k = 1; k <= e; ++k) powers[j].push_back(field.mul(powers[j].back(), coeffs[j]));
  }
  std::vector<typename Form<F>::Term> terms;
  for (const auto& m : monomials_of_degree(r, e)) {
    auto c = fact[e];
    for (std::size_t j = 0; j < r; ++j) {
      if (m[j] == 0) continue;
      c = field.mul(c, field.mul(inv_fact[m[j]], powers[j][m[j]]));
    }
    if (!field.is_zero(c)) terms.emplace_back(m, c);
  }
  return Form<F>(field, r, e, std::move(terms));
}

template <ExactField F>
Form<F> power_of_linear(const F& field, const std::vector<typename F::Element>& coeffs, unsigned e) {
  return power_of_linear(field, std::span<const typename F::Element>(coeffs), e);
}

/// Integer coefficients of random_form(r, d, seed), one per monomial in
/// canonical order, each uniform in [-10^4, 10^4] \ {0}.
inline std::vector<std::int64_t> random_form_coefficients(std::size_t r, unsigned d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> out(monomial_count(r, d));
  for (auto& c : out) c = rng.nonzero(10000);
  return out;
}

/// Deterministic pseudo-random form with every monomial present.
template <ExactField F>
Form<F> random_form(const F& field, std::size_t r, unsigned d, std::uint64_t seed) {
  const auto coeffs = random_form_coefficients(r, d, seed);
  const auto mons = monomials_of_degree(r, d);
  std::vector<typename Form<F>::Term> terms;
  terms.reserve(mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i) terms.emplace_back(mons[i], field.from_int(coeffs[i]));
  return Form<F>(field, r, d, std::move(terms));
}

/// Image of a rational form in another field.
template <ExactField F>
Form<F> convert(const Form<RationalField>& f, const F& field) {
  std::vector<typename Form<F>::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) terms.emplace_back(m, field.from_rational(c));
  return Form<F>(field, f.ambient(), f.degree(), std::move(terms));
}

/// Parses the text format written by Form::to_string: signed integer or
/// `a/b` coefficients, `*`, variables `<prefix>1..<prefix>r`, `^` powers.
/// A bare "0" needs `degree` to be given.
inline Form<RationalField> parse_form(std::string_view text, std::size_t r, int degree = -1, char prefix = 'y') {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("malformed form at offset " + std::to_string(pos) + ": " + what);
  };
  auto read_uint = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };

  std::vector<std::pair<Monomial, mpq_class>> terms;
  skip();
  if (pos == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    mpq_class coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::string num = read_uint();
      std::string den = "1";
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_uint();
      }
      coeff = parse_rational(num + "/" + den);
      have_coeff = true;
    }
    Monomial mono(r);
    bool have_var = false;
    while (true) {
      skip();
      if (have_coeff || have_var) {
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          skip();
        } else {
          break;
        }
      }
      if (pos >= text.size() || text[pos] != prefix) {
        if (have_coeff || have_var) fail("expected variable after '*'");
        fail("expected coefficient or variable");
      }
      ++pos;
      const auto idx = std::stoul(read_uint());
      if (idx < 1 || idx > r) fail("variable index out of range");
      unsigned power = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        power = static_cast<unsigned>(std::stoul(read_uint()));
      }
      mono.set(idx - 1, mono[idx - 1] + power);
      have_var = true;
    }
    if (!have_coeff && !have_var) fail("empty term");
    terms.emplace_back(mono, sign * coeff);
  }
  int d = degree;
  for (const auto& [m, c] : terms) {
    if (sgn(c) == 0) continue;
    if (d < 0) d = static_cast<int>(m.degree());
    if (static_cast<int>(m.degree()) != d) throw std::invalid_argument("form is not homogeneous");
  }
  if (d < 0) throw std::invalid_argument("degree of the zero form must be given");
  std::erase_if(terms, [](const auto& t) { return sgn(t.second) == 0; });
  return Form<RationalField>(RationalField{}, r, static_cast<unsigned>(d), std::move(terms));
}

}  // namespace apolar

#endif  // APOLAR_FORM_HPP
