#ifndef APOLAR_MONOMIAL_HPP
#define APOLAR_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

/// Largest ambient variable count supported by Monomial.
inline constexpr std::size_t kMaxVariables = 8;

/// Binomial coefficient C(n, k); zero when k < 0 or k > n. Throws on 64-bit overflow.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto num = static_cast<unsigned __int128>(result) * static_cast<std::uint64_t>(n - k + i);
    const auto next = num / static_cast<std::uint64_t>(i);
    if (next > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

/// Number of monomials of degree d in r variables, C(r-1+d, d).
inline std::size_t monomial_count(std::size_t r, std::int64_t d) {
  if (d < 0) return 0;
  if (r == 0) return d == 0 ? 1 : 0;
  return static_cast<std::size_t>(binomial(static_cast<std::int64_t>(r) - 1 + d, d));
}

enum class MonomialOrder { lex, deglex };

/// Exponent vector in r <= kMaxVariables variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(check_nvars(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : Monomial(std::vector<unsigned>(exps)) {}
  explicit Monomial(std::span<const unsigned> exps) : nvars_(check_nvars(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }
  explicit Monomial(const std::vector<unsigned>& exps) : Monomial(std::span<const unsigned>(exps)) {}

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }

  void set(std::size_t i, unsigned value) {
    if (i >= nvars_) throw std::out_of_range("variable index out of range");
    if (value > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("exponent too large");
    degree_ = degree_ - exps_[i] + value;
    exps_[i] = static_cast<std::uint16_t>(value);
  }

  /// True iff every exponent of `other` is <= the matching exponent here.
  bool divisible_by(const Monomial& other) const {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (other.exps_[i] > exps_[i]) return false;
    }
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    require_same(other);
    Monomial out(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) out.set(i, exps_[i] + other.exps_[i]);
    return out;
  }

  /// Quotient; requires divisible_by(other).
  Monomial operator/(const Monomial& other) const {
    require_same(other);
    if (!divisible_by(other)) throw std::domain_error("monomial not divisible");
    Monomial out(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) out.set(i, exps_[i] - other.exps_[i]);
    return out;
  }

  /// Copy in a larger ambient ring, new exponents zero.
  Monomial embedded(std::size_t nvars) const {
    if (nvars < nvars_) throw std::invalid_argument("cannot embed into fewer variables");
    Monomial out(nvars);
    for (std::size_t i = 0; i < nvars_; ++i) out.set(i, exps_[i]);
    return out;
  }

  std::vector<unsigned> exponents() const { return {exps_.begin(), exps_.begin() + nvars_}; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
  }

  /// -1, 0, 1 according to `order`, with y1 > y2 > ... > yr.
  friend int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
    a.require_same(b);
    if (order == MonomialOrder::deglex && a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
    }
    return 0;
  }

  /// Position among the monomials of the same degree listed lex-descending.
  std::size_t index() const {
    std::size_t idx = 0;
    std::int64_t rem = degree_;
    for (std::size_t k = 0; k + 1 < nvars_; ++k) {
      idx += monomial_count(nvars_ - k, rem - exps_[k] - 1);
      rem -= exps_[k];
    }
    return idx;
  }

  /// `prefix1^a*prefix2^b...`; "1" for the constant monomial.
  std::string to_string(char prefix = 'y') const {
    std::string out;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += prefix;
      out += std::to_string(i + 1);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  static std::uint8_t check_nvars(std::size_t n) {
    if (n == 0 || n > kMaxVariables) {
      throw std::invalid_argument("variable count must be in 1.." + std::to_string(kMaxVariables));
    }
    return static_cast<std::uint8_t>(n);
  }
  void require_same(const Monomial& other) const {
    if (other.nvars_ != nvars_) throw std::invalid_argument("monomials from different rings");
  }

  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t nvars_ = 0;
  unsigned degree_ = 0;
};

/// All C(r-1+d, d) monomials of degree d, sorted descending by `order`
/// (within a fixed degree lex and deglex agree).
inline std::vector<Monomial> monomials_of_degree(std::size_t r, unsigned d,
                                                 MonomialOrder order = MonomialOrder::lex) {
  (void)order;
  std::vector<Monomial> out;
  out.reserve(monomial_count(r, d));
  Monomial m(r);
  // Recursive lex-descending enumeration: largest exponent of y1 first.
  auto rec = [&](auto&& self, std::size_t pos, unsigned rem) -> void {
    if (pos + 1 == r) {
      m.set(pos, rem);
      out.push_back(m);
      return;
    }
    for (unsigned v = rem + 1; v-- > 0;) {
      m.set(pos, v);
      self(self, pos + 1, rem - v);
    }
    m.set(pos, 0);
  };
  rec(rec, 0, d);
  return out;
}

/// Index tables for dense coefficient vectors of forms in r variables of
/// degree 0..max_degree, in canonical (lex-descending) order.
class MonomialTable {
 public:
  MonomialTable(std::size_t r, unsigned max_degree) : r_(r) {
    by_degree_.reserve(max_degree + 1);
    for (unsigned d = 0; d <= max_degree; ++d) by_degree_.push_back(monomials_of_degree(r, d));
    up_.resize(max_degree + 1);
    for (unsigned d = 0; d < max_degree; ++d) {
      const auto& mons = by_degree_[d];
      up_[d].resize(mons.size() * r);
      for (std::size_t idx = 0; idx < mons.size(); ++idx) {
        for (std::size_t j = 0; j < r; ++j) {
          Monomial up = mons[idx];
          up.set(j, up[j] + 1);
          up_[d][idx * r + j] = static_cast<std::uint32_t>(up.index());
        }
      }
    }
  }

  std::size_t nvars() const { return r_; }
  unsigned max_degree() const { return static_cast<unsigned>(by_degree_.size() - 1); }
  const std::vector<Monomial>& monomials(unsigned d) const { return by_degree_.at(d); }
  std::size_t size(unsigned d) const { return by_degree_.at(d).size(); }
  /// Index in degree d+1 of y_j times the idx-th monomial of degree d.
  std::uint32_t up(unsigned d, std::size_t idx, std::size_t j) const { return up_[d][idx * r_ + j]; }

 private:
  std::size_t r_;
  std::vector<std::vector<Monomial>> by_degree_;
  std::vector<std::vector<std::uint32_t>> up_;
};

}  // namespace apolar

#endif  // APOLAR_MONOMIAL_HPP
