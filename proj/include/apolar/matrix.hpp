#ifndef APOLAR_MATRIX_HPP
#define APOLAR_MATRIX_HPP

#include "apolar/field.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
  }

  /// Builds from integer rows; convenient for tests and literals.
  static Matrix from_ints(F field, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != ncols) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Element& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const Element> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<Element> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  const std::vector<Element>& entries() const { return entries_; }

  Matrix transposed() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    }
    return t;
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[i] = field_.add(out[i], field_.mul(at(i, j), v[j]));
    }
    return out;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

/// Incrementally maintained row-echelon basis of a subspace of F^cols.
/// Pivots are first nonzero entries; a new row is reduced against the
/// stored rows in increasing pivot-column order.
template <ExactField F>
class RowEchelon;

namespace detail {

// v[j] <- v[j] + f * piv[j] for j in [from, n), all values reduced mod p.
inline void axpy_mod(std::uint32_t* v, const std::uint32_t* piv, std::size_t from, std::size_t n,
                     std::uint64_t f, const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t c = field.fold();
  if (c != 0) {
    constexpr std::uint64_t mask = (1ULL << 31U) - 1;
    for (std::size_t j = from; j < n; ++j) {
      std::uint64_t x = v[j] + f * piv[j];
      x = (x & mask) + (x >> 31U) * c;
      x = (x & mask) + (x >> 31U) * c;
      x = (x & mask) + (x >> 31U) * c;
      v[j] = static_cast<std::uint32_t>(x >= p ? x - p : x);
    }
  } else {
    for (std::size_t j = from; j < n; ++j) v[j] = static_cast<std::uint32_t>((v[j] + f * piv[j]) % p);
  }
}

}  // namespace detail

template <>
class RowEchelon<PrimeField> {
 public:
  using Element = PrimeField::Element;

  RowEchelon(PrimeField field, std::size_t cols) : field_(field), cols_(cols), row_of_col_(cols, -1) {}

  const PrimeField& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Reduces v in place; returns true iff v is not in the span.
  bool reduce(std::vector<Element>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    if (rows_.empty()) return std::any_of(v.begin(), v.end(), [](Element x) { return x != 0; });
    // Updates are accumulated in 64 bits and folded back below p only every
    // few steps: entries below p plus three products below p^2 fit in 64 bits
    // whenever p < 2^31.
    const std::uint64_t p = field_.modulus();
    const unsigned lazy = p < (1ULL << 31U) ? 3 : 1;
    thread_local std::vector<std::uint64_t> acc;
    acc.assign(v.begin(), v.end());
    std::uint64_t* a = acc.data();
    unsigned pending = 0;
    bool nonzero = false;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (a[c] == 0) continue;
      const Element x = reduce64(a[c]);
      a[c] = x;
      if (x == 0) continue;
      const auto r = row_of_col_[c];
      if (r < 0) {
        nonzero = true;
        continue;
      }
      if (pending == lazy) {
        fold_range(a, c + 1, cols_);
        pending = 0;
      }
      axpy64(a, rows_[static_cast<std::size_t>(r)].data(), c + 1, cols_, static_cast<std::uint32_t>(p - x));
      a[c] = 0;
      ++pending;
    }
    for (std::size_t j = 0; j < cols_; ++j) v[j] = reduce64(a[j]);
    return nonzero;
  }

  /// Adds v to the basis if independent; returns whether it was added.
  bool insert(std::vector<Element> v) {
    if (!reduce(v)) return false;
    std::size_t c = 0;
    while (v[c] == 0) ++c;
    const Element s = field_.inv(v[c]);
    for (std::size_t j = c; j < cols_; ++j) v[j] = field_.mul(v[j], s);
    row_of_col_[c] = static_cast<std::int64_t>(rows_.size());
    pivot_of_row_.push_back(c);
    rows_.push_back(std::move(v));
    return true;
  }

  /// Inserts a batch of rows; returns how many were independent. Each stored
  /// pivot row is applied to the whole batch at once, which keeps it in cache.
  std::size_t insert_batch(std::vector<std::vector<Element>> batch) {
    for (const auto& v : batch) {
      if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    }
    const std::uint64_t p = field_.modulus();
    const unsigned lazy = p < (1ULL << 31U) ? 3 : 1;
    const std::size_t nb = batch.size();
    std::vector<std::vector<std::uint64_t>> acc(nb);
    for (std::size_t b = 0; b < nb; ++b) acc[b].assign(batch[b].begin(), batch[b].end());
    std::vector<unsigned> pending(nb, 0);
    for (std::size_t c = 0; c < cols_ && !rows_.empty(); ++c) {
      const auto r = row_of_col_[c];
      if (r < 0) continue;
      const std::uint32_t* piv = rows_[static_cast<std::size_t>(r)].data();
      for (std::size_t b = 0; b < nb; ++b) {
        std::uint64_t* a = acc[b].data();
        if (a[c] == 0) continue;
        const Element x = reduce64(a[c]);
        a[c] = 0;
        if (x == 0) continue;
        if (pending[b] == lazy) {
          fold_range(a, c + 1, cols_);
          pending[b] = 0;
        }
        axpy64(a, piv, c + 1, cols_, static_cast<std::uint32_t>(p - x));
        ++pending[b];
      }
    }
    // The batch rows now vanish at every old pivot; finish them among themselves.
    std::size_t added = 0;
    const std::size_t first_new = rows_.size();
    for (std::size_t b = 0; b < nb && !full(); ++b) {
      auto& v = batch[b];
      for (std::size_t j = 0; j < cols_; ++j) v[j] = reduce64(acc[b][j]);
      if (rows_.size() > first_new) {
        for (std::size_t c = 0; c < cols_; ++c) {
          const auto k = row_of_col_[c];
          if (v[c] == 0 || k < static_cast<std::int64_t>(first_new)) continue;
          detail::axpy_mod(v.data(), rows_[static_cast<std::size_t>(k)].data(), c, cols_, p - v[c], field_);
        }
      }
      std::size_t c = 0;
      while (c < cols_ && v[c] == 0) ++c;
      if (c == cols_) continue;
      const Element s = field_.inv(v[c]);
      for (std::size_t j = c; j < cols_; ++j) v[j] = field_.mul(v[j], s);
      row_of_col_[c] = static_cast<std::int64_t>(rows_.size());
      pivot_of_row_.push_back(c);
      rows_.push_back(std::move(v));
      ++added;
    }
    return added;
  }

  /// Stored rows in insertion order, each normalized to pivot 1.
  const std::vector<std::vector<Element>>& rows() const { return rows_; }

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row_of_col_[c] >= 0) out.push_back(c);
    }
    return out;
  }

  /// Reduced row echelon basis, rows sorted by pivot column.
  std::vector<std::vector<Element>> reduced_basis() const {
    const auto piv = pivots();
    std::vector<std::vector<Element>> out;
    out.reserve(piv.size());
    for (auto c : piv) out.push_back(rows_[static_cast<std::size_t>(row_of_col_[c])]);
    for (std::size_t k = out.size(); k-- > 0;) {
      for (std::size_t i = 0; i < k; ++i) {
        const Element x = out[i][piv[k]];
        if (x != 0) detail::axpy_mod(out[i].data(), out[k].data(), piv[k], cols_, field_.modulus() - x, field_);
      }
    }
    return out;
  }

 private:
  // Loop bounds are passed by value so the compiler can vectorize: a member
  // size_t could alias the 64-bit accumulator.
  static void axpy64(std::uint64_t* a, const std::uint32_t* piv, std::size_t from, std::size_t to, std::uint32_t f) {
    for (std::size_t j = from; j < to; ++j) a[j] += static_cast<std::uint64_t>(f) * piv[j];
  }

  /// Brings a[from..to) below 2^32 without changing residues mod p.
  void fold_range(std::uint64_t* a, std::size_t from, std::size_t to) const {
    const std::uint64_t c = field_.fold();
    if (c == 0) {
      const std::uint64_t p = field_.modulus();
      for (std::size_t j = from; j < to; ++j) a[j] %= p;
      return;
    }
    constexpr std::uint64_t mask = (1ULL << 31U) - 1;
    for (std::size_t j = from; j < to; ++j) {
      std::uint64_t x = a[j];
      x = (x & mask) + (x >> 31U) * c;
      a[j] = (x & mask) + (x >> 31U) * c;
    }
  }

  Element reduce64(std::uint64_t x) const {
    const std::uint64_t c = field_.fold();
    if (c == 0) return static_cast<Element>(x % field_.modulus());
    constexpr std::uint64_t mask = (1ULL << 31U) - 1;
    x = (x & mask) + (x >> 31U) * c;
    x = (x & mask) + (x >> 31U) * c;
    x = (x & mask) + (x >> 31U) * c;
    return static_cast<Element>(x >= field_.modulus() ? x - field_.modulus() : x);
  }

  PrimeField field_;
  std::size_t cols_;
  std::vector<std::vector<Element>> rows_;
  std::vector<std::int64_t> row_of_col_;
  std::vector<std::size_t> pivot_of_row_;
};

namespace detail {

inline void make_primitive(std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

/// Scales a rational row by the lcm of its denominators.
inline std::vector<mpz_class> clear_denominators(std::span<const mpq_class> row) {
  mpz_class l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    mpz_class t = l / row[j].get_den();
    out[j] = t * row[j].get_num();
  }
  return out;
}

}  // namespace detail

/// Rational backend: rows are kept as primitive integer vectors and all
/// eliminations are fraction-free.
template <>
class RowEchelon<RationalField> {
 public:
  using Element = mpq_class;

  RowEchelon(RationalField field, std::size_t cols) : field_(field), cols_(cols), row_of_col_(cols, -1) {}

  const RationalField& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  bool reduce(std::vector<Element>& v) const {
    auto z = detail::clear_denominators(v);
    const bool nonzero = reduce_integer(z);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = z[j];
    return nonzero;
  }

  bool insert(const std::vector<Element>& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    return insert_integer(detail::clear_denominators(v));
  }

  bool insert_integer(std::vector<mpz_class> z) {
    if (!reduce_integer(z)) return false;
    detail::make_primitive(z);
    std::size_t c = 0;
    while (sgn(z[c]) == 0) ++c;
    if (sgn(z[c]) < 0) {
      for (auto& x : z) x = -x;
    }
    row_of_col_[c] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(z));
    return true;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row_of_col_[c] >= 0) out.push_back(c);
    }
    return out;
  }

  /// Stored primitive integer rows in insertion order.
  const std::vector<std::vector<mpz_class>>& rows() const { return rows_; }

  /// Integer variant of reduce; z is kept primitive.
  bool reduce_integer(std::vector<mpz_class>& z) const {
    if (z.size() != cols_) throw std::invalid_argument("row length mismatch");
    bool nonzero = false;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(z[c]) == 0) continue;
      const auto r = row_of_col_[c];
      if (r < 0) {
        nonzero = true;
        continue;
      }
      eliminate(z, rows_[static_cast<std::size_t>(r)], c);
      detail::make_primitive(z);
    }
    return nonzero;
  }

  std::vector<std::vector<Element>> reduced_basis() const {
    const auto piv = pivots();
    std::vector<std::vector<mpz_class>> work;
    work.reserve(piv.size());
    for (auto c : piv) work.push_back(rows_[static_cast<std::size_t>(row_of_col_[c])]);
    for (std::size_t k = work.size(); k-- > 0;) {
      for (std::size_t i = 0; i < k; ++i) {
        if (sgn(work[i][piv[k]]) == 0) continue;
        eliminate(work[i], work[k], piv[k]);
        detail::make_primitive(work[i]);
        if (sgn(work[i][piv[i]]) < 0) {
          for (auto& x : work[i]) x = -x;
        }
      }
    }
    std::vector<std::vector<Element>> out;
    out.reserve(work.size());
    for (std::size_t k = 0; k < work.size(); ++k) {
      std::vector<Element> row(cols_);
      for (std::size_t j = 0; j < cols_; ++j) {
        row[j] = mpq_class(work[k][j], work[k][piv[k]]);
        row[j].canonicalize();
      }
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  // v <- piv[c] * v - v[c] * piv, both divided by gcd(piv[c], v[c]).
  static void eliminate(std::vector<mpz_class>& v, const std::vector<mpz_class>& piv, std::size_t c) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), v[c].get_mpz_t(), piv[c].get_mpz_t());
    const mpz_class a = piv[c] / g;
    const mpz_class b = v[c] / g;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (sgn(piv[j]) == 0) {
        if (sgn(v[j]) != 0) v[j] *= a;
      } else {
        v[j] = a * v[j] - b * piv[j];
      }
    }
  }


  RationalField field_;
  std::size_t cols_;
  std::vector<std::vector<mpz_class>> rows_;
  std::vector<std::int64_t> row_of_col_;
};

/// Fraction-free (Bareiss) rank of an integer matrix; consumes its argument.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  if (a.empty()) return 0;
  const std::size_t nrows = a.size();
  const std::size_t ncols = a.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && sgn(a[p][c]) == 0) ++p;
    if (p == nrows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Dimension of the row space. Rationals use Bareiss elimination on the
/// denominator-cleared matrix; the modular backend uses Gaussian elimination.
template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  if constexpr (F::is_rational) {
    std::vector<std::vector<mpz_class>> a;
    a.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(detail::clear_denominators(m.row(i)));
    return bareiss_rank(std::move(a));
  } else {
    RowEchelon<F> ech(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows() && !ech.full(); ++i) {
      ech.insert({m.row(i).begin(), m.row(i).end()});
    }
    return ech.rank();
  }
}

/// Reduced row echelon form: basis rows sorted by pivot plus the pivot columns.
template <ExactField F>
struct ReducedEchelon {
  std::vector<std::vector<typename F::Element>> rows;
  std::vector<std::size_t> pivots;
};

template <ExactField F>
ReducedEchelon<F> reduced_echelon(const Matrix<F>& m) {
  RowEchelon<F> ech(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows() && !ech.full(); ++i) {
    ech.insert(std::vector<typename F::Element>(m.row(i).begin(), m.row(i).end()));
  }
  return {ech.reduced_basis(), ech.pivots()};
}

/// Canonical null-space basis: one vector per non-pivot column f of the
/// reduced echelon form, with a 1 in position f.
template <ExactField F>
std::vector<std::vector<typename F::Element>> kernel_basis(const Matrix<F>& m) {
  const F& field = m.field();
  const auto rref = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rref.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Element>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename F::Element> v(m.cols(), field.zero());
    v[f] = field.one();
    for (std::size_t k = 0; k < rref.pivots.size(); ++k) v[rref.pivots[k]] = field.neg(rref.rows[k][f]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Entrywise image of a rational matrix in another field (e.g. reduction mod p).
template <ExactField F>
Matrix<F> convert(const Matrix<RationalField>& m, const F& field) {
  Matrix<F> out(field, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = field.from_rational(m.at(i, j));
  }
  return out;
}

}  // namespace apolar

#endif  // APOLAR_MATRIX_HPP
