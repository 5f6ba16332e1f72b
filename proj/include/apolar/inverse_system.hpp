#ifndef APOLAR_INVERSE_SYSTEM_HPP
#define APOLAR_INVERSE_SYSTEM_HPP

// Inverse systems M = <F_1, ..., F_s> in S = k[y1..yr], their graded
// derivative spaces (M)_i, h-vectors and graded annihilator components.
//
// (M)_i is spanned by all derivatives of order deg(F) - i of the generators.
// It is computed from the top degree down: the span of one generator in
// degree i is spanned by the first partials of its span in degree i + 1, so
// each generator is tracked separately and only its independent derivatives
// enter the module-wide elimination. Once (M)_i = S_i every lower degree is
// full as well and no further elimination is needed.

#include "apolar/field.hpp"
#include "apolar/form.hpp"
#include "apolar/hvector.hpp"
#include "apolar/matrix.hpp"
#include "apolar/monomial.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

template <ExactField F>
class InverseSystem {
 public:
  InverseSystem(F field, std::size_t ambient, std::vector<Form<F>> generators)
      : field_(std::move(field)), ambient_(ambient), generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("inverse system needs at least one generator");
    for (const auto& g : generators_) {
      if (g.ambient() != ambient_) throw std::invalid_argument("generator from a different ring");
      if (g.is_zero()) throw std::invalid_argument("generators must be nonzero");
    }
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  const std::vector<Form<F>>& generators() const { return generators_; }
  unsigned socle_degree() const {
    unsigned e = 0;
    for (const auto& g : generators_) e = std::max(e, g.degree());
    return e;
  }

  InverseSystem with_generators(std::span<const Form<F>> extra) const {
    auto gens = generators_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return InverseSystem(field_, ambient_, std::move(gens));
  }

 private:
  F field_;
  std::size_t ambient_;
  std::vector<Form<F>> generators_;
};

template <ExactField F>
InverseSystem<F> convert(const InverseSystem<RationalField>& m, const F& field) {
  std::vector<Form<F>> gens;
  for (const auto& g : m.generators()) gens.push_back(convert(g, field));
  return InverseSystem<F>(field, m.ambient(), std::move(gens));
}

namespace detail {

// Storage rows of RowEchelon: integers for Q, residues for GF(p).
template <ExactField F>
using StorageRow = std::conditional_t<F::is_rational, std::vector<mpz_class>, std::vector<typename F::Element>>;

template <ExactField F>
StorageRow<F> to_storage(const std::vector<typename F::Element>& dense) {
  if constexpr (F::is_rational) {
    return clear_denominators(dense);
  } else {
    return dense;
  }
}

template <ExactField F>
bool insert_storage(RowEchelon<F>& ech, StorageRow<F> row) {
  if constexpr (F::is_rational) {
    return ech.insert_integer(std::move(row));
  } else {
    return ech.insert(std::move(row));
  }
}

// Feeds rows into an echelon; over GF(p) they are inserted in batches.
template <ExactField F>
class BatchInserter {
 public:
  static constexpr std::size_t kBatch = 32;

  explicit BatchInserter(RowEchelon<F>& ech) : ech_(ech) {}
  ~BatchInserter() { flush(); }
  BatchInserter(const BatchInserter&) = delete;
  BatchInserter& operator=(const BatchInserter&) = delete;

  bool full() const { return ech_.full(); }

  void add(StorageRow<F> row) {
    if constexpr (F::is_rational) {
      ech_.insert_integer(std::move(row));
    } else {
      buf_.push_back(std::move(row));
      if (buf_.size() == kBatch) flush();
    }
  }

  void flush() {
    if constexpr (!F::is_rational) {
      if (!buf_.empty() && !ech_.full()) ech_.insert_batch(std::move(buf_));
      buf_.clear();
    }
  }

 private:
  RowEchelon<F>& ech_;
  std::vector<StorageRow<F>> buf_;
};

template <ExactField F>
bool reduce_storage(const RowEchelon<F>& ech, StorageRow<F>& row) {
  if constexpr (F::is_rational) {
    return ech.reduce_integer(row);
  } else {
    return ech.reduce(row);
  }
}

// d/dy_j of a dense row of degree d + 1, giving a dense row of degree d.
template <ExactField F>
StorageRow<F> partial(const F& field, const MonomialTable& table, unsigned d, const StorageRow<F>& v, std::size_t j) {
  const auto& mons = table.monomials(d);
  StorageRow<F> out(mons.size());
  for (std::size_t idx = 0; idx < mons.size(); ++idx) {
    const auto& src = v[table.up(d, idx, j)];
    const unsigned mult = mons[idx][j] + 1;
    if constexpr (F::is_rational) {
      if (sgn(src) != 0) out[idx] = src * mult;
    } else {
      out[idx] = field.mul(src, field.from_int(mult));
    }
  }
  return out;
}

template <ExactField F>
bool is_zero_row(const StorageRow<F>& v) {
  if constexpr (F::is_rational) {
    return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) == 0; });
  } else {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
  }
}

// Span of the derivatives of one generator, tracked degree by degree.
template <ExactField F>
class GeneratorStream {
 public:
  GeneratorStream(const F& field, const Form<F>& g) : field_(field), degree_(g.degree()), span_(field, monomial_count(g.ambient(), g.degree())) {
    insert_storage(span_, to_storage<F>(g.dense()));
  }

  unsigned degree() const { return degree_; }
  const RowEchelon<F>& span() const { return span_; }

  /// Moves the span one degree down: new span = first partials of the old one.
  void descend(const MonomialTable& table) {
    if (degree_ == 0) throw std::logic_error("cannot descend below degree 0");
    const unsigned d = degree_ - 1;
    RowEchelon<F> next(field_, table.size(d));
    {
      BatchInserter<F> in(next);
      for (const auto& row : span_.rows()) {
        for (std::size_t j = 0; j < table.nvars() && !in.full(); ++j) {
          auto der = partial(field_, table, d, row, j);
          if (!is_zero_row<F>(der)) in.add(std::move(der));
        }
        if (in.full()) break;
      }
    }
    span_ = std::move(next);
    degree_ = d;
  }

 private:
  F field_;
  unsigned degree_;
  RowEchelon<F> span_;
};

}  // namespace detail

/// Per-degree derivative spaces of an inverse system.
template <ExactField F>
class DerivativeSpaces {
 public:
  struct Options {
    /// Keep the echelon basis of every computed degree (needed for bases,
    /// multiplication maps and extensions).
    bool keep_echelons = false;
    /// Stop eliminating below this degree.
    unsigned lowest_degree = 0;
  };

  explicit DerivativeSpaces(const InverseSystem<F>& m) : DerivativeSpaces(m, Options{}) {}

  DerivativeSpaces(const InverseSystem<F>& m, Options opt)
      : field_(m.field()),
        ambient_(m.ambient()),
        top_(m.socle_degree()),
        table_(std::make_shared<MonomialTable>(m.ambient(), m.socle_degree())),
        dims_(m.socle_degree() + 1, 0),
        echelons_(m.socle_degree() + 1) {
    std::vector<const Form<F>*> pending;
    for (const auto& g : m.generators()) pending.push_back(&g);
    std::vector<detail::GeneratorStream<F>> streams;
    for (unsigned i = top_ + 1; i-- > opt.lowest_degree;) {
      for (auto& s : streams) s.descend(*table_);
      for (auto* g : pending) {
        if (g->degree() == i) streams.emplace_back(field_, *g);
      }
      RowEchelon<F> ech(field_, table_->size(i));
      {
        detail::BatchInserter<F> in(ech);
        for (const auto& s : streams) {
          for (const auto& row : s.span().rows()) {
            if (in.full()) break;
            in.add(row);
          }
        }
      }
      dims_[i] = ech.rank();
      computed_low_ = i;
      if (ech.full()) {
        full_from_ = i;
        if (opt.keep_echelons) echelons_[i] = std::make_shared<RowEchelon<F>>(std::move(ech));
        for (unsigned k = i; k-- > 0;) dims_[k] = monomial_count(ambient_, k);
        computed_low_ = 0;
        break;
      }
      if (opt.keep_echelons) echelons_[i] = std::make_shared<RowEchelon<F>>(std::move(ech));
    }
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  unsigned socle_degree() const { return top_; }
  const MonomialTable& table() const { return *table_; }

  /// dim (M)_i; zero above the socle degree.
  std::size_t dim(unsigned i) const {
    if (i > top_) return 0;
    if (i < computed_low_) throw std::out_of_range("degree below the computed range");
    return dims_[i];
  }
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// (M)_i = S_i.
  bool full(unsigned i) const { return i <= top_ && full_from_ && i <= *full_from_; }

  /// Echelon basis of (M)_i, or nullptr when not kept or implied full.
  const RowEchelon<F>* echelon(unsigned i) const { return i <= top_ ? echelons_[i].get() : nullptr; }

  HVector h_vector() const {
    Sequence s;
    for (auto d : dims_) s.push_back(static_cast<std::int64_t>(d));
    return HVector(std::move(s));
  }

  /// Dimensions of the derivative spaces of M + <extra>, reusing the kept
  /// echelons of M. Requires keep_echelons.
  std::vector<std::size_t> extended_dims(std::span<const Form<F>> extra) const {
    unsigned top = top_;
    for (const auto& g : extra) {
      if (g.ambient() != ambient_) throw std::invalid_argument("generator from a different ring");
      top = std::max(top, g.degree());
    }
    const MonomialTable table(ambient_, top);
    std::vector<std::size_t> out(top + 1, 0);
    std::vector<detail::GeneratorStream<F>> streams;
    for (unsigned i = top + 1; i-- > 0;) {
      for (auto& s : streams) s.descend(table);
      for (const auto& g : extra) {
        if (g.degree() == i) streams.emplace_back(field_, g);
      }
      if (full(i)) {
        for (unsigned k = i + 1; k-- > 0;) out[k] = monomial_count(ambient_, k);
        break;
      }
      const RowEchelon<F>* base = i <= top_ ? echelons_[i].get() : nullptr;
      if (i <= top_ && base == nullptr) throw std::logic_error("extended_dims requires keep_echelons");
      const std::size_t base_rank = base ? base->rank() : 0;
      RowEchelon<F> delta(field_, table.size(i));
      for (const auto& s : streams) {
        for (auto row : s.span().rows()) {
          if (base_rank + delta.rank() == table.size(i)) break;
          if (base && !detail::reduce_storage(*base, row)) continue;
          detail::insert_storage(delta, std::move(row));
        }
      }
      out[i] = base_rank + delta.rank();
      if (out[i] == table.size(i)) {
        for (unsigned k = i; k-- > 0;) out[k] = monomial_count(ambient_, k);
        break;
      }
    }
    return out;
  }

 private:
  F field_;
  std::size_t ambient_;
  unsigned top_;
  std::shared_ptr<const MonomialTable> table_;
  std::vector<std::size_t> dims_;
  std::vector<std::shared_ptr<const RowEchelon<F>>> echelons_;
  std::optional<unsigned> full_from_;
  unsigned computed_low_ = 0;
};

/// Canonical basis of (M)_i: reduced echelon rows over the monomials of
/// degree i, sorted by pivot column.
template <ExactField F>
struct GradedBasis {
  unsigned degree = 0;
  std::vector<std::vector<typename F::Element>> rows;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return rows.size(); }

  std::vector<Form<F>> forms(const F& field, std::size_t ambient) const {
    const auto mons = monomials_of_degree(ambient, degree);
    std::vector<Form<F>> out;
    for (const auto& row : rows) out.push_back(Form<F>::from_dense(field, ambient, degree, row, mons));
    return out;
  }
};

/// Basis of (M)_i from a DerivativeSpaces computed with keep_echelons.
template <ExactField F>
GradedBasis<F> graded_basis(const DerivativeSpaces<F>& spaces, unsigned i) {
  GradedBasis<F> b;
  b.degree = i;
  if (i > spaces.socle_degree()) return b;
  const F& field = spaces.field();
  if (spaces.full(i) && (spaces.echelon(i) == nullptr || i < spaces.socle_degree())) {
    const std::size_t n = monomial_count(spaces.ambient(), i);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<typename F::Element> row(n, field.zero());
      row[k] = field.one();
      b.rows.push_back(std::move(row));
      b.pivots.push_back(k);
    }
    return b;
  }
  const auto* ech = spaces.echelon(i);
  if (ech == nullptr) throw std::logic_error("graded_basis requires keep_echelons");
  b.rows = ech->reduced_basis();
  b.pivots = ech->pivots();
  return b;
}

/// Basis of (M)_i; empty above the socle degree.
template <ExactField F>
GradedBasis<F> derivative_space(const InverseSystem<F>& m, unsigned i) {
  if (i > m.socle_degree()) return GradedBasis<F>{i, {}, {}};
  typename DerivativeSpaces<F>::Options opt;
  opt.keep_echelons = true;
  opt.lowest_degree = i;
  return graded_basis(DerivativeSpaces<F>(m, opt), i);
}

/// h_i = dim (M)_i for i = 0..e.
template <ExactField F>
HVector h_vector(const InverseSystem<F>& m) {
  return DerivativeSpaces<F>(m).h_vector();
}

/// Matrix of g -> g o f from R_d to S_{e-d}: rows are the monomials of
/// degree e - d, columns the monomials of degree d.
template <ExactField F>
Matrix<F> catalecticant(const Form<F>& f, unsigned d) {
  if (d > f.degree()) throw std::invalid_argument("catalecticant degree exceeds form degree");
  const F& field = f.field();
  const auto cols = monomials_of_degree(f.ambient(), d);
  const std::size_t nrows = monomial_count(f.ambient(), f.degree() - d);
  Matrix<F> m(field, nrows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto der = differentiate(f, cols[j]);
    for (const auto& [mono, c] : der.terms()) m.at(mono.index(), j) = c;
  }
  return m;
}

/// Basis of I_d = Ann(M)_d as forms in the x-variables (print with prefix 'x').
template <ExactField F>
std::vector<Form<F>> annihilator_component(const InverseSystem<F>& m, unsigned d) {
  const F& field = m.field();
  const auto mons = monomials_of_degree(m.ambient(), d);
  std::size_t nrows = 0;
  for (const auto& g : m.generators()) {
    if (g.degree() >= d) nrows += monomial_count(m.ambient(), g.degree() - d);
  }
  Matrix<F> stacked(field, nrows, mons.size());
  std::size_t offset = 0;
  for (const auto& g : m.generators()) {
    if (g.degree() < d) continue;
    const auto cat = catalecticant(g, d);
    for (std::size_t i = 0; i < cat.rows(); ++i) {
      for (std::size_t j = 0; j < cat.cols(); ++j) stacked.at(offset + i, j) = cat.at(i, j);
    }
    offset += cat.rows();
  }
  std::vector<Form<F>> out;
  for (const auto& v : kernel_basis(stacked)) out.push_back(Form<F>::from_dense(field, m.ambient(), d, v, mons));
  return out;
}

/// Minimal generators of Ann(M) in degree d >= 1: dim I_d - dim(R_1 * I_{d-1}).
template <ExactField F>
std::size_t new_generator_count(const InverseSystem<F>& m, unsigned d) {
  if (d == 0) throw std::invalid_argument("degree must be positive");
  const F& field = m.field();
  const auto current = annihilator_component(m, d);
  const auto below = annihilator_component(m, d - 1);
  const std::size_t n = monomial_count(m.ambient(), d);
  RowEchelon<F> ech(field, n);
  for (const auto& g : below) {
    for (std::size_t j = 0; j < m.ambient(); ++j) {
      std::vector<typename F::Element> row(n, field.zero());
      for (const auto& [mono, c] : g.terms()) {
        Monomial up = mono;
        up.set(j, up[j] + 1);
        row[up.index()] = c;
      }
      detail::insert_storage(ech, detail::to_storage<F>(row));
    }
  }
  return current.size() - ech.rank();
}

/// Type t of a level presentation: dim (M)_e, which must equal the number
/// of generators, all of degree e.
template <ExactField F>
std::size_t level_type(const InverseSystem<F>& m) {
  const unsigned e = m.socle_degree();
  for (const auto& g : m.generators()) {
    if (g.degree() != e) throw std::invalid_argument("not a level presentation");
  }
  RowEchelon<F> ech(m.field(), monomial_count(m.ambient(), e));
  for (const auto& g : m.generators()) detail::insert_storage(ech, detail::to_storage<F>(g.dense()));
  if (ech.rank() != m.generators().size()) throw std::invalid_argument("non-minimal generating set");
  return ech.rank();
}

}  // namespace apolar

#endif  // APOLAR_INVERSE_SYSTEM_HPP
