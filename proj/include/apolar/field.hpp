#ifndef APOLAR_FIELD_HPP
#define APOLAR_FIELD_HPP

// Exact scalar fields. Both backends expose the same operation set so that
// every algorithm in the library can be instantiated over either of them:
//
//   RationalField   arbitrary-precision rationals (GMP mpq_class)
//   PrimeField      Z/pZ for an explicit prime p < 2^32
//
// Fields are small value objects; elements carry no reference to their field.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace apolar {

/// Default modulus for the modular backend: the Mersenne prime 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;
/// Second modulus used by the two-prime fast path (2^31 - 19).
inline constexpr std::uint64_t kSecondPrime = 2147483629ULL;

namespace detail {

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mul_mod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class RationalField {
 public:
  using Element = mpq_class;
  static constexpr bool is_rational = true;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const {
    Element out;
    mpz_set_si(out.get_num_mpz_t(), static_cast<long>(v));
    return out;
  }
  Element from_integer(const mpz_class& v) const { return Element(v); }
  Element from_rational(const mpq_class& v) const { return v; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (sgn(b) == 0) throw std::domain_error("division by zero");
    return a / b;
  }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
 public:
  using Element = std::uint32_t;
  static constexpr bool is_rational = false;

  explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p >= (1ULL << 32U) || !is_prime(p)) {
      throw std::invalid_argument("modulus must be a prime below 2^32: " + std::to_string(p));
    }
    if (p > (1ULL << 30U)) fold_ = (1ULL << 31U) - p;
    if (p >= (1ULL << 31U) || fold_ >= (1ULL << 12U)) fold_ = 0;
  }

  std::uint64_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Element>(r);
  }
  Element from_integer(const mpz_class& v) const {
    return static_cast<Element>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_)));
  }
  /// Throws std::domain_error when the denominator vanishes mod p.
  Element from_rational(const mpq_class& v) const {
    return div(from_integer(v.get_num()), from_integer(v.get_den()));
  }

  Element add(Element a, Element b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const {
    return static_cast<Element>(a >= b ? a - b : std::uint64_t{a} + p_ - b);
  }
  Element mul(Element a, Element b) const { return reduce(std::uint64_t{a} * b); }
  Element neg(Element a) const { return a == 0 ? 0 : static_cast<Element>(p_ - a); }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return static_cast<Element>(detail::pow_mod_u64(a, p_ - 2, p_));
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  /// Reduces x < 2^62 (a product of two reduced elements plus slack).
  Element reduce(std::uint64_t x) const {
    if (fold_ != 0) {
      // p = 2^31 - c with small c: fold the high part back in three times.
      constexpr std::uint64_t mask = (1ULL << 31U) - 1;
      x = (x & mask) + (x >> 31U) * fold_;
      x = (x & mask) + (x >> 31U) * fold_;
      x = (x & mask) + (x >> 31U) * fold_;
      return static_cast<Element>(x >= p_ ? x - p_ : x);
    }
    return static_cast<Element>(x % p_);
  }
  std::uint64_t fold() const { return fold_; }

  std::string to_string(Element a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  std::uint64_t fold_ = 0;
};

template <class F>
concept ExactField = requires(const F& f, const typename F::Element& a, std::int64_t i,
                              const mpz_class& z, const mpq_class& q) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.from_int(i) } -> std::convertible_to<typename F::Element>;
  { f.from_integer(z) } -> std::convertible_to<typename F::Element>;
  { f.from_rational(q) } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.div(a, a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.name() } -> std::convertible_to<std::string>;
};

static_assert(ExactField<RationalField>);
static_assert(ExactField<PrimeField>);

/// Parses "n" or "a/b" into a canonical rational. Throws std::invalid_argument.
inline mpq_class parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), mpz_class(den));
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace apolar

#endif  // APOLAR_FIELD_HPP
