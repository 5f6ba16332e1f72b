#ifndef APOLAR_WLP_HPP
#define APOLAR_WLP_HPP

// Weak Lefschetz testing through the dual picture. For A = R/Ann(M) the map
// .L : A_i -> A_{i+1} is dual to contraction by L, f -> sum_j L_j df/dy_j,
// from (M)_{i+1} to (M)_i, so both have the same rank. The public matrices
// are written in the canonical reduced-echelon bases of the derivative
// spaces; the certifier also builds an integral copy with smaller entries.

#include "apolar/field.hpp"
#include "apolar/field_mode.hpp"
#include "apolar/inverse_system.hpp"
#include "apolar/matrix.hpp"
#include "apolar/param_matrix.hpp"
#include "apolar/random.hpp"
#include "apolar/recipe.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

struct DegreeRankReport {
  unsigned degree = 0;
  std::size_t dim_i = 0;
  std::size_t dim_next = 0;
  std::size_t required = 0;
  std::size_t rank = 0;
  /// "probe", "symbolic", "kernel", or "specialized" (maximal rank shown by
  /// one integer specialization, which bounds the generic rank from below)
  std::string mode;

  bool maximal() const { return rank == required; }
  friend bool operator==(const DegreeRankReport&, const DegreeRankReport&) = default;
};

enum class WlpVerdict { holds_certified, fails_certified, holds_probabilistic, fails_probable };

inline std::string to_string(WlpVerdict v) {
  switch (v) {
    case WlpVerdict::holds_certified:
      return "holds-certified";
    case WlpVerdict::fails_certified:
      return "fails-certified";
    case WlpVerdict::holds_probabilistic:
      return "holds-probabilistic";
    case WlpVerdict::fails_probable:
      break;
  }
  return "fails-probable";
}

struct WlpCertificate {
  WlpVerdict verdict = WlpVerdict::holds_probabilistic;
  std::vector<DegreeRankReport> degrees;
  std::vector<unsigned> failing;
  std::string field;

  bool holds() const { return failing.empty(); }
  friend bool operator==(const WlpCertificate& a, const WlpCertificate& b) {
    return a.verdict == b.verdict && a.degrees == b.degrees && a.failing == b.failing;
  }
};

namespace detail {

template <ExactField F>
DerivativeSpaces<F> full_spaces(const InverseSystem<F>& m) {
  typename DerivativeSpaces<F>::Options opt;
  opt.keep_echelons = true;
  return DerivativeSpaces<F>(m, opt);
}

inline WlpCertificate assemble(std::vector<DegreeRankReport> degrees, bool certified) {
  WlpCertificate cert;
  for (const auto& d : degrees) {
    if (!d.maximal()) cert.failing.push_back(d.degree);
  }
  if (certified) {
    cert.verdict = cert.failing.empty() ? WlpVerdict::holds_certified : WlpVerdict::fails_certified;
  } else {
    cert.verdict = cert.failing.empty() ? WlpVerdict::holds_probabilistic : WlpVerdict::fails_probable;
  }
  cert.degrees = std::move(degrees);
  return cert;
}

}  // namespace detail

/// Matrix of contraction by L from (M)_{i+1} to (M)_i: column k holds the
/// coordinates of L.d(b_k) for the k-th basis form b_k of (M)_{i+1}. Its rank
/// is the rank of .L : A_i -> A_{i+1}. `spaces` must keep echelons.
template <ExactField F>
Matrix<F> mult_map_matrix(const DerivativeSpaces<F>& spaces, const std::vector<typename F::Element>& L, unsigned i) {
  if (i >= spaces.socle_degree()) throw std::out_of_range("degree out of range for the multiplication map");
  if (L.size() != spaces.ambient()) throw std::invalid_argument("linear form has the wrong number of coefficients");
  const F& field = spaces.field();
  const auto& table = spaces.table();
  const auto src = graded_basis(spaces, i + 1);
  const auto dst = graded_basis(spaces, i);
  const auto& mons = table.monomials(i);
  Matrix<F> out(field, dst.dim(), src.dim());
  for (std::size_t k = 0; k < src.dim(); ++k) {
    const auto& b = src.rows[k];
    for (std::size_t row = 0; row < dst.dim(); ++row) {
      const std::size_t idx = dst.pivots[row];
      auto acc = field.zero();
      for (std::size_t j = 0; j < table.nvars(); ++j) {
        const auto& v = b[table.up(i, idx, j)];
        if (field.is_zero(v) || field.is_zero(L[j])) continue;
        acc = field.add(acc, field.mul(field.mul(L[j], field.from_int(mons[idx][j] + 1)), v));
      }
      out.at(row, k) = acc;
    }
  }
  return out;
}

template <ExactField F>
Matrix<F> mult_map_matrix(const InverseSystem<F>& m, const std::vector<typename F::Element>& L, unsigned i) {
  return mult_map_matrix(detail::full_spaces(m), L, i);
}

/// The same map with L = (a_1, ..., a_r) symbolic.
inline ParamMatrix mult_map_param(const DerivativeSpaces<RationalField>& spaces, unsigned i) {
  if (i >= spaces.socle_degree()) throw std::out_of_range("degree out of range for the multiplication map");
  const auto& table = spaces.table();
  const auto src = graded_basis(spaces, i + 1);
  const auto dst = graded_basis(spaces, i);
  const auto& mons = table.monomials(i);
  ParamMatrix out(dst.dim(), src.dim(), table.nvars());
  for (std::size_t k = 0; k < src.dim(); ++k) {
    for (std::size_t row = 0; row < dst.dim(); ++row) {
      const std::size_t idx = dst.pivots[row];
      for (std::size_t j = 0; j < table.nvars(); ++j) {
        const auto& v = src.rows[k][table.up(i, idx, j)];
        if (sgn(v) != 0) out.add(row, k, j + 1, v * static_cast<unsigned long>(mons[idx][j] + 1));
      }
    }
  }
  return out;
}

/// Random integer linear form with coefficients in [-1000, 1000] \ {0}.
inline std::vector<std::int64_t> random_linear_form(std::size_t r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> out(r);
  for (auto& c : out) c = rng.nonzero(1000);
  return out;
}

/// Ranks of .L for one random L in every degree 0..e-1.
template <ExactField F>
WlpCertificate wlp_probe(const InverseSystem<F>& m, std::uint64_t seed) {
  const F& field = m.field();
  const auto spaces = detail::full_spaces(m);
  std::vector<typename F::Element> L;
  for (auto c : random_linear_form(m.ambient(), derive_seed(seed, "wlp-probe"))) L.push_back(field.from_int(c));
  std::vector<DegreeRankReport> degrees;
  for (unsigned i = 0; i < spaces.socle_degree(); ++i) {
    DegreeRankReport d{i, spaces.dim(i), spaces.dim(i + 1), std::min(spaces.dim(i), spaces.dim(i + 1)), 0, "probe"};
    d.rank = rank(mult_map_matrix(spaces, L, i));
    degrees.push_back(d);
  }
  auto cert = detail::assemble(std::move(degrees), false);
  cert.field = field.name();
  return cert;
}

inline WlpCertificate wlp_probe(const ModuleRecipe& m, std::uint64_t seed, const FieldMode& mode) {
  auto res = run_in_mode(mode, [&](const auto& field) { return wlp_probe(m.materialize(field), seed); });
  res.value.field = res.field;
  return res.value;
}

/// Largest ambient size accepted by wlp_certify.
inline constexpr std::size_t kMaxCertifyVariables = 4;

namespace detail {

/// Contraction (M)_{i+1} -> (M)_i with integer entries. Columns are a basis
/// of (M)_{i+1} taken among scaled derivatives of the generators, rows are
/// monomials of degree i on which (M)_i projects injectively. Both choices
/// are justified by ranks mod p, since independence mod p implies
/// independence over Q; nullopt means this prime was unlucky.
inline std::optional<ParamMatrix> integral_contraction(const InverseSystem<RationalField>& m, const MonomialTable& table,
                                                       unsigned i, std::size_t dim_src, std::size_t dim_dst,
                                                       const PrimeField& fp) {
  const std::size_t r = m.ambient();
  const auto& src_mons = table.monomials(i + 1);
  const auto& dst_mons = table.monomials(i);
  std::vector<std::vector<mpz_class>> basis;
  RowEchelon<PrimeField> src(fp, src_mons.size());
  // (M)_i is spanned by derivatives of the generators of degree >= i
  RowEchelon<PrimeField> dst(fp, dst_mons.size());
  for (const auto& g : m.generators()) {
    if (g.degree() < i) continue;
    mpz_class den = 1;
    for (const auto& [mono, c] : g.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    const unsigned target = g.degree() > i ? i + 1 : i;
    const auto& target_mons = target == i ? dst_mons : src_mons;
    for (const auto& mu : monomials_of_degree(r, g.degree() - target)) {
      if (target > i && basis.size() == dim_src) break;
      std::vector<mpz_class> row(target_mons.size());
      const auto der = differentiate(g, mu);
      for (const auto& [mono, c] : der.terms()) row[mono.index()] = mpq_class(c * den).get_num();
      if (target == i) {
        std::vector<PrimeField::Element> rp(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) rp[k] = fp.from_integer(row[k]);
        dst.insert(std::move(rp));
        continue;
      }
      std::vector<PrimeField::Element> rp(row.size());
      for (std::size_t k = 0; k < row.size(); ++k) rp[k] = fp.from_integer(row[k]);
      if (basis.size() < dim_src && src.insert(std::move(rp))) {
        make_primitive(row);
        basis.push_back(std::move(row));
      }
    }
  }
  if (basis.size() != dim_src) return std::nullopt;
  for (const auto& b : basis) {
    for (std::size_t j = 0; j < r && !dst.full(); ++j) {
      std::vector<PrimeField::Element> down(dst_mons.size());
      for (std::size_t k = 0; k < dst_mons.size(); ++k) {
        down[k] = fp.mul(fp.from_integer(b[table.up(i, k, j)]), fp.from_int(dst_mons[k][j] + 1));
      }
      dst.insert(std::move(down));
    }
  }
  auto rows = dst.pivots();
  if (rows.size() != dim_dst) return std::nullopt;
  std::sort(rows.begin(), rows.end());
  ParamMatrix out(rows.size(), basis.size(), r);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (std::size_t row = 0; row < rows.size(); ++row) {
      for (std::size_t j = 0; j < r; ++j) {
        const auto& v = basis[c][table.up(i, rows[row], j)];
        if (sgn(v) != 0) out.add(row, c, j + 1, mpq_class(v * (dst_mons[rows[row]][j] + 1)));
      }
    }
  }
  return out;
}

/// Coefficient system for kernel vectors v(a) homogeneous of degree delta
/// in the parameters: v^T M(a) = 0 on the left side, M(a) v = 0 on the
/// right. Unknown block m holds the coefficient vector of a^m.
template <ExactField F>
Matrix<F> kernel_system(const ParamMatrix& pm, bool left, unsigned delta, const F& field) {
  const std::size_t s = pm.nparams();
  const std::size_t n = left ? pm.rows() : pm.cols();
  const std::size_t eqs = left ? pm.cols() : pm.rows();
  const auto lower = monomials_of_degree(s, delta);
  Matrix<F> out(field, eqs * monomial_count(s, delta + 1), n * lower.size());
  for (std::size_t a = 0; a < lower.size(); ++a) {
    for (std::size_t k = 0; k < s; ++k) {
      Monomial up = lower[a];
      up.set(k, lower[a][k] + 1);
      const std::size_t b = up.index();
      for (std::size_t row = 0; row < pm.rows(); ++row) {
        for (std::size_t col = 0; col < pm.cols(); ++col) {
          const auto& c = pm.at(row, col)[k + 1];
          if (sgn(c) == 0) continue;
          const std::size_t eq = left ? col : row;
          const std::size_t var = left ? row : col;
          auto& slot = out.at(b * eqs + eq, a * n + var);
          slot = field.add(slot, field.from_rational(c));
        }
      }
    }
  }
  return out;
}

/// Kernel vectors v(a) evaluated at an integer point, one row each.
template <ExactField F>
Matrix<F> evaluate_kernel(const std::vector<std::vector<typename F::Element>>& ker, std::size_t s, unsigned delta,
                          std::size_t n, const std::vector<std::int64_t>& point, const F& field) {
  const auto lower = monomials_of_degree(s, delta);
  std::vector<typename F::Element> weights;
  for (const auto& mono : lower) {
    auto w = field.one();
    for (std::size_t k = 0; k < s; ++k) {
      for (unsigned e = 0; e < mono[k]; ++e) w = field.mul(w, field.from_int(point[k]));
    }
    weights.push_back(w);
  }
  Matrix<F> out(field, ker.size(), n);
  for (std::size_t v = 0; v < ker.size(); ++v) {
    for (std::size_t a = 0; a < lower.size(); ++a) {
      for (std::size_t x = 0; x < n; ++x) {
        const auto& c = ker[v][a * n + x];
        if (!field.is_zero(c)) out.at(v, x) = field.add(out.at(v, x), field.mul(weights[a], c));
      }
    }
  }
  return out;
}

inline constexpr unsigned kMaxKernelDegree = 8;
inline constexpr std::size_t kMaxKernelUnknowns = 2400;

/// Proves that the generic rank of pm equals `low`, a rank already reached
/// by some specialization. Kernel vectors of low degree are solved exactly
/// over Q; if `want` = n - low of them stay independent at one point they
/// are independent over Q(a), so the generic rank is at most low. Each
/// candidate degree is screened mod p first.
inline bool kernel_certificate(const ParamMatrix& pm, std::size_t low, const PrimeField& fp) {
  const std::size_t s = pm.nparams();
  const auto point = random_linear_form(s, derive_seed(0, "wlp-kernel-point"));
  const RationalField qq;
  for (unsigned delta = 0; delta <= kMaxKernelDegree; ++delta) {
    for (const bool left : {true, false}) {
      const std::size_t n = left ? pm.rows() : pm.cols();
      if (n <= low) continue;
      const std::size_t want = n - low;
      if (n * monomial_count(s, delta) > kMaxKernelUnknowns) continue;
      const auto modp = kernel_basis(kernel_system(pm, left, delta, fp));
      if (modp.size() < want || rank(evaluate_kernel(modp, s, delta, n, point, fp)) < want) continue;
      const auto exact = kernel_basis(kernel_system(pm, left, delta, qq));
      if (exact.size() >= want && rank(evaluate_kernel(exact, s, delta, n, point, qq)) >= want) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Decides WLP at the generic linear form. In each degree an integer
/// specialization of L is tried first; when it reaches the required rank
/// the generic rank is maximal as well. Otherwise the best specialization
/// rank is shown to be the generic one by exact polynomial kernel vectors
/// ("kernel"), and failing that the rank of the symbolic matrix over
/// Q(a_1..a_r) is computed by fraction-free elimination ("symbolic"). The
/// verdict is a proof in both directions.
inline WlpCertificate wlp_certify(const InverseSystem<RationalField>& m, std::uint64_t prime = kDefaultPrime) {
  if (m.ambient() > kMaxCertifyVariables) {
    throw std::invalid_argument("wlp certify supports at most " + std::to_string(kMaxCertifyVariables) + " variables");
  }
  const PrimeField fp(prime);
  const auto spaces = detail::full_spaces(m);
  std::vector<DegreeRankReport> degrees;
  for (unsigned i = 0; i < spaces.socle_degree(); ++i) {
    DegreeRankReport d{i, spaces.dim(i), spaces.dim(i + 1), std::min(spaces.dim(i), spaces.dim(i + 1)), 0, ""};
    const auto pm = mult_map_param(spaces, i);
    std::size_t low = 0;
    for (std::uint64_t attempt = 0; attempt < 2 && d.mode.empty(); ++attempt) {
      const auto L = random_linear_form(m.ambient(), derive_seed(attempt, "wlp-certify"));
      try {
        low = std::max(low, rank(pm.evaluate_mod(L, fp)));
        if (low == d.required) {
          d.rank = d.required;
          d.mode = "specialized";
        }
      } catch (const std::domain_error&) {
        break;  // a coefficient has no image mod p; decide symbolically
      }
    }
    if (d.mode.empty() && low > 0) {
      for (const std::uint64_t p : {prime, kDefaultPrime, kSecondPrime}) {
        const PrimeField fq(p);
        const auto integral = detail::integral_contraction(m, spaces.table(), i, d.dim_next, d.dim_i, fq);
        if (!integral) continue;
        if (detail::kernel_certificate(*integral, low, fq)) {
          d.rank = low;
          d.mode = "kernel";
        }
        break;
      }
    }
    if (d.mode.empty()) {
      d.rank = symbolic_rank(pm);
      d.mode = "symbolic";
    }
    degrees.push_back(d);
  }
  auto cert = detail::assemble(std::move(degrees), true);
  cert.field = "QQ";
  return cert;
}

inline WlpCertificate wlp_certify(const ModuleRecipe& m, std::uint64_t prime = kDefaultPrime) {
  if (m.r > kMaxCertifyVariables) {
    throw std::invalid_argument("wlp certify supports at most " + std::to_string(kMaxCertifyVariables) + " variables");
  }
  return wlp_certify(m.materialize(RationalField{}), prime);
}

}  // namespace apolar

#endif  // APOLAR_WLP_HPP
