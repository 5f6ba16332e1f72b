#ifndef APOLAR_FIELD_MODE_HPP
#define APOLAR_FIELD_MODE_HPP

// Choice of field for rank computations. The default two-prime mode runs a
// computation over GF(p1) and GF(p2) and accepts the result when both agree,
// falling back to the rationals otherwise.

#include "apolar/field.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace apolar {

struct FieldMode {
  enum class Kind { rational, prime, two_prime };
  Kind kind = Kind::two_prime;
  std::uint64_t prime = kDefaultPrime;

  static FieldMode rational() { return {Kind::rational, kDefaultPrime}; }
  static FieldMode modular(std::uint64_t p) {
    if (!is_prime(p) || p >= (1ULL << 32U)) throw std::invalid_argument("modulus must be a prime below 2^32");
    return {Kind::prime, p};
  }
  static FieldMode two_prime() { return {Kind::two_prime, kDefaultPrime}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::rational:
        return "q";
      case Kind::prime:
        return "fp:" + std::to_string(prime);
      case Kind::two_prime:
        break;
    }
    return "two-prime";
  }
};

/// Parses "q", "fp:P" or "two-prime".
inline FieldMode parse_field_mode(const std::string& text) {
  if (text == "q" || text == "Q") return FieldMode::rational();
  if (text == "two-prime") return FieldMode::two_prime();
  if (text.rfind("fp:", 0) == 0) {
    std::size_t used = 0;
    unsigned long long p = 0;
    try {
      p = std::stoull(text.substr(3), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad modulus in '" + text + "'");
    }
    if (used != text.size() - 3) throw std::invalid_argument("bad modulus in '" + text + "'");
    return FieldMode::modular(p);
  }
  throw std::invalid_argument("unknown field '" + text + "' (expected q or fp:P)");
}

/// Result of a field-mode computation plus the field that produced it.
template <class T>
struct InField {
  T value;
  std::string field;
};

/// Runs fn(field) according to `mode`. In two-prime mode fn runs over both
/// primes; on disagreement (or when a coefficient has no image mod p) the
/// result is recomputed over the rationals.
template <class Fn>
auto run_in_mode(const FieldMode& mode, Fn&& fn) -> InField<decltype(fn(RationalField{}))> {
  using T = decltype(fn(RationalField{}));
  switch (mode.kind) {
    case FieldMode::Kind::rational:
      return {fn(RationalField{}), "QQ"};
    case FieldMode::Kind::prime: {
      const PrimeField f(mode.prime);
      return {fn(f), f.name()};
    }
    case FieldMode::Kind::two_prime:
      break;
  }
  const PrimeField f1(kDefaultPrime);
  const PrimeField f2(kSecondPrime);
  try {
    T a = fn(f1);
    T b = fn(f2);
    if (a == b) return {std::move(a), f1.name() + "+" + f2.name()};
  } catch (const std::domain_error&) {
    // a denominator vanishes mod p: only the rationals are meaningful
  }
  return {fn(RationalField{}), "QQ"};
}

}  // namespace apolar

#endif  // APOLAR_FIELD_MODE_HPP
