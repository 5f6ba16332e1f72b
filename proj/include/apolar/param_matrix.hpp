#ifndef APOLAR_PARAM_MATRIX_HPP
#define APOLAR_PARAM_MATRIX_HPP

// Matrices whose entries are affine-linear in a few parameters, and their
// rank over the field of rational functions in those parameters.

#include "apolar/field.hpp"
#include "apolar/matrix.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

inline constexpr std::size_t kMaxParameters = 4;

/// Sparse multivariate polynomial with integer coefficients in at most
/// kMaxParameters variables. Exponents are packed 16 bits per variable with
/// the first variable in the high bits, so integer order on keys is lex order.
class IntPoly {
 public:
  using Key = std::uint64_t;

  IntPoly() = default;
  static IntPoly constant(const mpz_class& c) {
    IntPoly p;
    if (sgn(c) != 0) p.terms_.emplace_back(0, c);
    return p;
  }
  static IntPoly variable(std::size_t k, const mpz_class& c = 1) {
    IntPoly p;
    if (sgn(c) != 0) p.terms_.emplace_back(unit(k), c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::pair<Key, mpz_class>>& terms() const { return terms_; }

  static Key unit(std::size_t k) {
    if (k >= kMaxParameters) throw std::out_of_range("parameter index out of range");
    return Key{1} << (16U * (kMaxParameters - 1 - k));
  }
  static unsigned exponent(Key key, std::size_t k) {
    return static_cast<unsigned>((key >> (16U * (kMaxParameters - 1 - k))) & 0xFFFFU);
  }
  static bool divides(Key a, Key b) {
    for (std::size_t k = 0; k < kMaxParameters; ++k) {
      if (exponent(a, k) > exponent(b, k)) return false;
    }
    return true;
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) { return combine(a, b, false); }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return combine(a, b, true); }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<Key, mpz_class, std::greater<>> acc;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        auto& slot = acc[ka + kb];
        mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    return from_map(acc);
  }

  /// Exact quotient a / b; throws std::domain_error if b does not divide a.
  friend IntPoly divexact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    std::map<Key, mpz_class, std::greater<>> rem;
    for (const auto& [k, c] : a.terms_) rem.emplace(k, c);
    const auto& [lead_key, lead_coeff] = b.terms_.front();
    IntPoly q;
    while (!rem.empty()) {
      const auto it = rem.begin();
      if (!divides(lead_key, it->first)) throw std::domain_error("inexact polynomial division");
      mpz_class qc;
      if (!mpz_divisible_p(it->second.get_mpz_t(), lead_coeff.get_mpz_t())) {
        throw std::domain_error("inexact polynomial division");
      }
      mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lead_coeff.get_mpz_t());
      const Key qk = it->first - lead_key;
      for (const auto& [kb, cb] : b.terms_) {
        auto& slot = rem[qk + kb];
        mpz_submul(slot.get_mpz_t(), qc.get_mpz_t(), cb.get_mpz_t());
        if (sgn(slot) == 0) rem.erase(qk + kb);
      }
      q.terms_.emplace_back(qk, std::move(qc));
    }
    return q;
  }

  /// Value at an integer point modulo p.
  std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& point, const PrimeField& f) const {
    PrimeField::Element acc = 0;
    for (const auto& [k, c] : terms_) {
      PrimeField::Element t = f.from_integer(c);
      for (std::size_t v = 0; v < point.size(); ++v) {
        for (unsigned e = exponent(k, v); e > 0; --e) t = f.mul(t, f.from_int(static_cast<std::int64_t>(point[v])));
      }
      acc = f.add(acc, t);
    }
    return acc;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

 private:
  static IntPoly from_map(const std::map<Key, mpz_class, std::greater<>>& acc) {
    IntPoly p;
    for (const auto& [k, c] : acc) {
      if (sgn(c) != 0) p.terms_.emplace_back(k, c);
    }
    return p;
  }
  static IntPoly combine(const IntPoly& a, const IntPoly& b, bool subtract) {
    IntPoly out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
        out.terms_.emplace_back(b.terms_[j].first, subtract ? mpz_class(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        mpz_class c = subtract ? mpz_class(a.terms_[i].second - b.terms_[j].second)
                               : mpz_class(a.terms_[i].second + b.terms_[j].second);
        if (sgn(c) != 0) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<std::pair<Key, mpz_class>> terms_;  // descending keys, nonzero coefficients
};

/// Matrix with entries c0 + c1*a1 + ... + cs*as over the rationals.
class ParamMatrix {
 public:
  /// coefficient vector of one entry: [constant, a1, ..., as]
  using Entry = std::vector<mpq_class>;

  ParamMatrix(std::size_t rows, std::size_t cols, std::size_t nparams)
      : rows_(rows), cols_(cols), nparams_(nparams), entries_(rows * cols, Entry(nparams + 1, mpq_class(0))) {
    if (nparams == 0 || nparams > kMaxParameters) {
      throw std::invalid_argument("parameter count must be in 1.." + std::to_string(kMaxParameters));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nparams() const { return nparams_; }

  const Entry& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Entry e) {
    if (e.size() != nparams_ + 1) throw std::invalid_argument("entry must be affine-linear in the parameters");
    entries_[i * cols_ + j] = std::move(e);
  }
  /// Adds `c` times parameter k (k = 0 is the constant term) to entry (i, j).
  void add(std::size_t i, std::size_t j, std::size_t k, const mpq_class& c) {
    entries_[i * cols_ + j].at(k) += c;
  }

  /// Specialization at a rational point.
  Matrix<RationalField> evaluate(const std::vector<mpq_class>& point) const {
    if (point.size() != nparams_) throw std::invalid_argument("point dimension mismatch");
    Matrix<RationalField> m(RationalField{}, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& e = at(i, j);
        mpq_class v = e[0];
        for (std::size_t k = 0; k < nparams_; ++k) v += e[k + 1] * point[k];
        m.at(i, j) = v;
      }
    }
    return m;
  }

  /// Specialization at an integer point, reduced mod p.
  Matrix<PrimeField> evaluate_mod(const std::vector<std::int64_t>& point, const PrimeField& f) const {
    if (point.size() != nparams_) throw std::invalid_argument("point dimension mismatch");
    Matrix<PrimeField> m(f, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& e = at(i, j);
        auto v = f.from_rational(e[0]);
        for (std::size_t k = 0; k < nparams_; ++k) {
          v = f.add(v, f.mul(f.from_rational(e[k + 1]), f.from_int(point[k])));
        }
        m.at(i, j) = v;
      }
    }
    return m;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t nparams_;
  std::vector<Entry> entries_;
};

/// Rank over Q(a1..as) by fraction-free Bareiss elimination over Z[a1..as]
/// with exact zero tests. Rows are first scaled to integer coefficients.
inline std::size_t symbolic_rank(const ParamMatrix& m) {
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  std::vector<std::vector<IntPoly>> a(nrows, std::vector<IntPoly>(ncols));
  for (std::size_t i = 0; i < nrows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < ncols; ++j) {
      for (const auto& c : m.at(i, j)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < ncols; ++j) {
      const auto& e = m.at(i, j);
      IntPoly p = IntPoly::constant(mpz_class(l / e[0].get_den() * e[0].get_num()));
      for (std::size_t k = 0; k < m.nparams(); ++k) {
        p = p + IntPoly::variable(k, mpz_class(l / e[k + 1].get_den() * e[k + 1].get_num()));
      }
      a[i][j] = std::move(p);
    }
  }
  IntPoly prev = IntPoly::constant(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    // Prefer the sparsest nonzero pivot to limit intermediate growth.
    std::size_t p = nrows;
    for (std::size_t i = r; i < nrows; ++i) {
      if (!a[i][c].is_zero() && (p == nrows || a[i][c].size() < a[p][c].size())) p = i;
    }
    if (p == nrows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        IntPoly t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        a[i][j] = divexact(t, prev);
      }
      a[i][c] = IntPoly();
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace apolar

#endif  // APOLAR_PARAM_MATRIX_HPP
