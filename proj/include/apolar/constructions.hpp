#ifndef APOLAR_CONSTRUCTIONS_HPP
#define APOLAR_CONSTRUCTIONS_HPP

// Builders for level inverse systems with prescribed h-vectors.
//
// Point configurations are turned into level modules <L_1^e, ..., L_s^e>;
// the degree-i derivative space of such a module is spanned by the L_j^i,
// so its h-vector is the Hilbert function of the points up to degree e.
// Genericity is realized by seeded sampling followed by verification of the
// property that characterizes it, with a bounded number of resamples.

#include "apolar/field.hpp"
#include "apolar/field_mode.hpp"
#include "apolar/form.hpp"
#include "apolar/hvector.hpp"
#include "apolar/inverse_system.hpp"
#include "apolar/matrix.hpp"
#include "apolar/monomial.hpp"
#include "apolar/random.hpp"
#include "apolar/recipe.hpp"
#include "apolar/wlp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

/// Number of resamples allowed after the first attempt.
inline constexpr unsigned kMaxRetries = 5;

using Point = std::array<mpz_class, 3>;

/// Points of P^2 given by integer coordinates, pairwise non-proportional.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    std::set<std::array<std::string, 3>> seen;
    for (const auto& p : points_) {
      if (!seen.insert(key(p)).second) throw std::invalid_argument("duplicate point " + to_string(p));
    }
  }

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// Representative with coprime coordinates and positive first nonzero entry.
  static Point normalized(const Point& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw std::invalid_argument("the zero vector is not a point");
    Point out = p;
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    const auto first = std::find_if(out.begin(), out.end(), [](const mpz_class& c) { return sgn(c) != 0; });
    if (sgn(*first) < 0) {
      for (auto& c : out) c = -c;
    }
    return out;
  }

  static std::string to_string(const Point& p) {
    return "(" + p[0].get_str() + ":" + p[1].get_str() + ":" + p[2].get_str() + ")";
  }

 private:
  static std::array<std::string, 3> key(const Point& p) {
    const auto n = normalized(p);
    return {n[0].get_str(), n[1].get_str(), n[2].get_str()};
  }

  std::vector<Point> points_;
};

/// Hilbert function of the points in degree i: rank of the evaluation matrix
/// of all degree-i monomials.
template <ExactField F>
std::size_t hilbert_function(const PointSet& pts, unsigned i, const F& field) {
  const auto mons = monomials_of_degree(3, i);
  Matrix<F> m(field, pts.size(), mons.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::array<std::vector<typename F::Element>, 3> powers;
    for (std::size_t j = 0; j < 3; ++j) {
      powers[j].push_back(field.one());
      const auto c = field.from_integer(pts.points()[k][j]);
      for (unsigned d = 1; d <= i; ++d) powers[j].push_back(field.mul(powers[j].back(), c));
    }
    for (std::size_t c = 0; c < mons.size(); ++c) {
      m.at(k, c) = field.mul(field.mul(powers[0][mons[c][0]], powers[1][mons[c][1]]), powers[2][mons[c][2]]);
    }
  }
  return rank(m);
}

/// Level module <L_1^e, ..., L_s^e> with L_j = sum_k P_jk y_k.
inline ModuleRecipe powers_module(const PointSet& pts, unsigned e) {
  if (e < 1) throw std::invalid_argument("socle degree must be at least 1");
  if (pts.size() == 0) throw std::invalid_argument("empty point set");
  ModuleRecipe m{3, {}};
  for (const auto& p : pts.points()) m.generators.push_back(GeneratorRecipe::power({p[0], p[1], p[2]}, e));
  return m;
}

/// Hilbert function of a degree-p plane curve in degree i: C(i+2,2) - C(i-p+2,2).
inline std::int64_t curve_hilbert_function(unsigned p, std::int64_t i) {
  const auto full = static_cast<std::int64_t>(monomial_count(3, i));
  const auto cut = static_cast<std::int64_t>(monomial_count(3, i - static_cast<std::int64_t>(p)));
  return full - cut;
}

/// s points on a random rational curve t -> (f_1(t), f_2(t), f_3(t)) with
/// f_k binary forms of degree p. The caller verifies the Hilbert function.
inline PointSet points_on_rational_curve(std::size_t s, unsigned p, std::uint64_t seed) {
  if (p < 3) throw std::invalid_argument("curve degree must be at least 3");
  if (s < binomial(p + 1, 2)) throw std::invalid_argument("need at least C(p+1,2) points on a degree-p curve");
  Rng rng(derive_seed(seed, "rational-curve"));
  std::array<std::vector<std::int64_t>, 3> forms;
  for (auto& f : forms) {
    for (unsigned k = 0; k <= p; ++k) f.push_back(rng.uniform(-3, 3));
  }
  std::int64_t bound = 4;
  while (static_cast<std::size_t>(bound * bound) < 2 * s + 8) ++bound;
  std::set<std::pair<std::int64_t, std::int64_t>> params;
  std::set<std::array<std::string, 3>> seen;
  std::vector<Point> pts;
  for (std::size_t attempts = 0; pts.size() < s; ++attempts) {
    if (attempts > 200 * s + 1000) throw VerificationError("could not place distinct points on the curve");
    std::int64_t u = rng.uniform(-bound, bound);
    std::int64_t v = rng.uniform(0, bound);
    const std::int64_t g = std::gcd(u, v);
    if (g == 0) continue;
    u /= g;
    v /= g;
    if (v == 0) u = 1;
    if (!params.insert({u, v}).second) continue;
    Point pt;
    for (std::size_t k = 0; k < 3; ++k) {
      mpz_class acc = 0;
      mpz_class upow = 1;
      for (unsigned a = 0; a <= p; ++a) {
        mpz_class vpow;
        mpz_pow_ui(vpow.get_mpz_t(), mpz_class(v).get_mpz_t(), p - a);
        acc += forms[k][a] * upow * vpow;
        upow *= u;
      }
      pt[k] = acc;
    }
    if (sgn(pt[0]) == 0 && sgn(pt[1]) == 0 && sgn(pt[2]) == 0) continue;
    pt = PointSet::normalized(pt);
    if (!seen.insert({pt[0].get_str(), pt[1].get_str(), pt[2].get_str()}).second) continue;
    pts.push_back(std::move(pt));
  }
  return PointSet(std::move(pts));
}

/// First differences of Hilbert functions of reduced points in P^2:
/// 1, 2, ..., m up to a peak, then non-increasing (zeros allowed at the end).
inline bool is_points_staircase(const Sequence& delta) {
  if (delta.empty() || delta[0] != 1) return false;
  std::size_t i = 1;
  while (i < delta.size() && delta[i] == delta[i - 1] + 1) ++i;
  for (; i < delta.size(); ++i) {
    if (delta[i] < 0 || delta[i] > delta[i - 1]) return false;
  }
  return true;
}

/// Points whose Hilbert function has first difference `delta`: for
/// j = 1..max(delta), line j carries #{i : delta_i >= j} points. Lines and
/// points are random; no point lies on two lines. With `verify` the Hilbert
/// function is checked by evaluation-matrix ranks (resampling on mismatch).
inline PointSet points_from_staircase(const Sequence& delta, std::uint64_t seed, bool verify = true,
                                      const FieldMode& mode = FieldMode::two_prime()) {
  if (!is_points_staircase(delta)) {
    throw std::invalid_argument("not a points staircase: delta must be 1,2,...,m then non-increasing");
  }
  const std::int64_t peak = *std::max_element(delta.begin(), delta.end());
  std::vector<std::size_t> counts;
  for (std::int64_t j = 1; j <= peak; ++j) {
    counts.push_back(static_cast<std::size_t>(std::count_if(delta.begin(), delta.end(), [&](auto d) { return d >= j; })));
  }
  std::int64_t total = 0;
  for (auto d : delta) total += d;

  std::optional<std::vector<std::int64_t>> last_hf;
  for (unsigned attempt = 0; attempt <= kMaxRetries; ++attempt) {
    Rng rng(derive_seed(seed, "staircase/" + std::to_string(attempt)));
    using Vec = std::array<std::int64_t, 3>;
    auto cross = [](const Vec& a, const Vec& b) {
      return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    auto dot = [](const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    auto primitive = [](Vec v) {
      const std::int64_t g = std::gcd(std::gcd(v[0], v[1]), v[2]);
      for (auto& c : v) c /= g;
      const auto first = std::find_if(v.begin(), v.end(), [](auto c) { return c != 0; });
      if (*first < 0) {
        for (auto& c : v) c = -c;
      }
      return v;
    };
    std::vector<std::pair<Vec, Vec>> spans;
    std::vector<Vec> normals;
    std::set<Vec> normal_set;
    while (normals.size() < counts.size()) {
      Vec a{};
      Vec b{};
      for (auto& c : a) c = rng.uniform(-10, 10);
      for (auto& c : b) c = rng.uniform(-10, 10);
      const Vec n = cross(a, b);
      if (n == Vec{0, 0, 0}) continue;
      const Vec pn = primitive(n);
      if (!normal_set.insert(pn).second) continue;
      spans.emplace_back(a, b);
      normals.push_back(pn);
    }
    std::vector<Point> pts;
    std::set<Vec> seen;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      std::set<std::pair<std::int64_t, std::int64_t>> params;
      std::size_t placed = 0;
      for (std::size_t tries = 0; placed < counts[j]; ++tries) {
        if (tries > 100000) throw VerificationError("could not place points on a line");
        std::int64_t u = rng.uniform(-40, 40);
        std::int64_t v = rng.uniform(-40, 40);
        const std::int64_t g = std::gcd(u, v);
        if (g == 0) continue;
        u /= g;
        v /= g;
        if (v < 0 || (v == 0 && u < 0)) {
          u = -u;
          v = -v;
        }
        if (!params.insert({u, v}).second) continue;
        const auto& [a, b] = spans[j];
        Vec pt{u * a[0] + v * b[0], u * a[1] + v * b[1], u * a[2] + v * b[2]};
        if (std::any_of(pt.begin(), pt.end(), [](auto c) { return c > 1000 || c < -1000; })) continue;
        bool on_other = false;
        for (std::size_t k = 0; k < normals.size() && !on_other; ++k) on_other = k != j && dot(normals[k], pt) == 0;
        if (on_other) continue;
        pt = primitive(pt);
        if (!seen.insert(pt).second) continue;
        pts.push_back({mpz_class(pt[0]), mpz_class(pt[1]), mpz_class(pt[2])});
        ++placed;
      }
    }
    PointSet set(std::move(pts));
    if (!verify) return set;
    std::vector<std::int64_t> expected;
    std::int64_t acc = 0;
    for (auto d : delta) expected.push_back(acc += d);
    expected.push_back(total);
    const auto observed = run_in_mode(mode, [&](const auto& field) {
      std::vector<std::int64_t> hf;
      for (unsigned i = 0; i < expected.size(); ++i) hf.push_back(static_cast<std::int64_t>(hilbert_function(set, i, field)));
      return hf;
    });
    if (observed.value == expected) return set;
    last_hf = observed.value;
  }
  std::string hf;
  for (auto v : *last_hf) hf += (hf.empty() ? "" : ",") + std::to_string(v);
  throw VerificationError("staircase points failed verification after retries; observed Hilbert function " + hf);
}

struct GenericExtension {
  ModuleRecipe module;
  HVector base_h;
  HVector h;
  unsigned retries = 0;
  std::string field;
};

/// M + <F> for a random form F of degree e, verified against lemma1_predict.
inline GenericExtension add_generic_form(const ModuleRecipe& m, std::uint64_t seed,
                                         const FieldMode& mode = FieldMode::two_prime()) {
  if (!m.single_degree()) throw std::invalid_argument("module is not a level presentation");
  const unsigned e = m.socle_degree();
  std::optional<Extension> last;
  for (unsigned attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const auto g = GeneratorRecipe::random(m.r, e, derive_seed(seed, "generic-form/" + std::to_string(attempt)));
    const auto res = compute_extension(m, {g}, mode);
    const auto target = lemma1_predict(res.value.base, m.r);
    if (res.value.extended == target) return {m.with(g), res.value.base, res.value.extended, attempt, res.field};
    last = res.value;
  }
  throw VerificationError("generic form did not reach the predicted h-vector: base " + last->base.to_string() +
                              ", predicted " + lemma1_predict(last->base, m.r).to_string() + ", observed " +
                              last->extended.to_string(),
                          last->extended);
}

/// M + <L_1^e + ... + L_k^e> for random linear forms L_j; no prediction.
inline GenericExtension add_power_sum(const ModuleRecipe& m, unsigned k, std::uint64_t seed,
                                      const FieldMode& mode = FieldMode::two_prime()) {
  if (k < 1) throw std::invalid_argument("power sum needs k >= 1");
  if (!m.single_degree()) throw std::invalid_argument("module is not a level presentation");
  Rng rng(derive_seed(seed, "power-sum"));
  std::vector<IntVector> forms;
  for (unsigned j = 0; j < k; ++j) {
    IntVector l;
    for (std::size_t v = 0; v < m.r; ++v) l.emplace_back(rng.nonzero(1000));
    forms.push_back(std::move(l));
  }
  const auto g = GeneratorRecipe::power_sum(std::move(forms), m.socle_degree());
  const auto res = compute_extension(m, {g}, mode);
  return {m.with(g), res.value.base, res.value.extended, 0, res.field};
}

/// Adjoins y_4^e, ..., y_{r_new}^e to a three-variable level module.
inline ModuleRecipe lift_codim(const ModuleRecipe& m, std::size_t r_new) {
  if (m.r != 3) throw std::invalid_argument("lift needs a module in 3 variables");
  if (!m.single_degree()) throw std::invalid_argument("module is not a level presentation");
  if (r_new < 3) throw std::invalid_argument("target variable count must be at least 3");
  if (r_new > kMaxVariables) throw std::invalid_argument("target variable count exceeds " + std::to_string(kMaxVariables));
  auto out = m.embedded(r_new);
  const unsigned e = m.socle_degree();
  for (std::size_t j = 3; j < r_new; ++j) {
    IntVector l(r_new, mpz_class(0));
    l[j] = 1;
    out.generators.push_back(GeneratorRecipe::power(std::move(l), e));
  }
  return out;
}

struct ConstructionReport {
  std::string construction;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  unsigned retries = 0;
  std::optional<HVector> base_h;
  HVector target_h;
  HVector computed_h;
  bool pass = false;
  std::string field;
  ModuleRecipe module;
  /// Extra reported facts that are not part of the verdict.
  std::vector<std::pair<std::string, std::string>> notes;

  std::string verdict() const { return pass ? "pass" : "fail"; }
};

namespace detail {

/// Samples points, builds <L^e>, adds a generic form, and retries the point
/// sample until the base h-vector matches `target_base`.
template <class Sampler>
ConstructionReport points_plus_generic(const std::string& name, const HVector& target_base, Sampler&& sample,
                                       std::uint64_t seed, const FieldMode& mode) {
  const unsigned e = static_cast<unsigned>(target_base.socle_degree());
  std::optional<HVector> observed;
  for (unsigned attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const PointSet pts = sample(derive_seed(seed, name + "/points/" + std::to_string(attempt)));
    const auto base = powers_module(pts, e);
    auto ext = add_generic_form(base, derive_seed(seed, name + "/form"), mode);
    if (!(ext.base_h == target_base)) {
      observed = ext.base_h;
      continue;
    }
    ConstructionReport rep;
    rep.construction = name;
    rep.seed = seed;
    rep.retries = attempt + ext.retries;
    rep.base_h = ext.base_h;
    rep.target_h = lemma1_predict(target_base, 3);
    rep.computed_h = ext.h;
    rep.pass = ext.h == rep.target_h;
    rep.field = ext.field;
    rep.module = std::move(ext.module);
    return rep;
  }
  throw VerificationError("point sample did not realize the base h-vector " + target_base.to_string() +
                              " (observed " + observed->to_string() + ")",
                          observed);
}

}  // namespace detail

/// Base h-vector of the arithmetic-tail construction: the Hilbert function
/// of t = p*e - p(p-3)/2 points on a degree-p curve, up to degree e.
inline HVector arithmetic_tail_base(unsigned p, unsigned e) {
  if (p < 3) throw std::invalid_argument("p must be at least 3");
  if (e < 2 * p - 1) throw std::invalid_argument("e must be at least 2p - 1 for the progression to be visible");
  Sequence h;
  for (unsigned i = 0; i <= e; ++i) h.push_back(curve_hilbert_function(p, i));
  return HVector(std::move(h));
}

inline ConstructionReport build_arithmetic_tail(unsigned p, unsigned e, std::uint64_t seed,
                                                const FieldMode& mode = FieldMode::two_prime(),
                                                const std::string& name = "tail") {
  const HVector base = arithmetic_tail_base(p, e);
  const auto t = static_cast<std::size_t>(base.back());
  const HVector predicted = lemma1_predict(base, 3);
  const auto witness = [&](const HVector& h) { return h[e - p] == h[e - p + 1] + 1 && !is_unimodal(h); };
  if (!witness(predicted)) {
    throw std::invalid_argument("for p = " + std::to_string(p) + ", e = " + std::to_string(e) +
                                " the predicted h-vector has no descent at degree e - p");
  }
  auto rep = detail::points_plus_generic(
      name, base, [&](std::uint64_t s) { return points_on_rational_curve(t, p, s); }, seed, mode);
  rep.params = {{"p", std::to_string(p)}, {"e", std::to_string(e)}, {"t", std::to_string(t)}};
  rep.pass = rep.pass && witness(rep.computed_h);
  return rep;
}

/// 27 points on a cubic, socle degree 9, plus a generic form.
inline ConstructionReport build_example2(std::uint64_t seed, const FieldMode& mode = FieldMode::two_prime()) {
  auto rep = build_arithmetic_tail(3, 9, seed, mode, "example2");
  rep.params.clear();
  return rep;
}

/// Base h-vector with N maxima after adding a generic form, or nullopt when
/// (N, e) is not admissible. Entries are C(i+2,2) up to degree e-3N+2; the
/// top 3N-2 entries are t - D(d) at degree e-d with
/// D(d) = sum_{k<=d} 3*ceil(k/3), and the step into the top block is 3(N-1).
inline std::optional<HVector> n_maxima_base(unsigned n, unsigned e) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  const std::int64_t split = static_cast<std::int64_t>(e) - 3 * static_cast<std::int64_t>(n) + 2;
  if (split < 0) return std::nullopt;
  const std::int64_t gap = 3 * (static_cast<std::int64_t>(n) - 1);
  const std::int64_t top_block = 3 * static_cast<std::int64_t>(n) - 3;
  std::vector<std::int64_t> drop(static_cast<std::size_t>(top_block) + 1, 0);
  for (std::int64_t d = 1; d <= top_block; ++d) drop[d] = drop[d - 1] + 3 * ((d + 2) / 3);
  const auto at_split = static_cast<std::int64_t>(monomial_count(3, split));
  const std::int64_t t = at_split + gap + drop[top_block];
  Sequence h;
  for (std::int64_t i = 0; i <= static_cast<std::int64_t>(e); ++i) {
    if (i <= split) {
      h.push_back(static_cast<std::int64_t>(monomial_count(3, i)));
    } else {
      h.push_back(t - drop[static_cast<std::size_t>(static_cast<std::int64_t>(e) - i)]);
    }
  }
  if (std::any_of(h.begin(), h.end(), [](auto v) { return v < 1; })) return std::nullopt;
  if (h.size() > 1 && h[1] != 3) return std::nullopt;
  if (!is_points_staircase(first_difference(h))) return std::nullopt;
  HVector base(std::move(h));
  if (count_maxima(lemma1_predict(base, 3)) != n) return std::nullopt;
  return base;
}

/// Smallest socle degree admitted by n_maxima_base.
inline unsigned minimal_n_maxima_degree(unsigned n, unsigned limit = 2000) {
  for (unsigned e = 1; e <= limit; ++e) {
    if (n_maxima_base(n, e)) return e;
  }
  throw std::invalid_argument("no admissible socle degree up to " + std::to_string(limit));
}

inline ConstructionReport build_n_maxima(unsigned n, std::uint64_t seed, std::optional<unsigned> e = std::nullopt,
                                         const FieldMode& mode = FieldMode::two_prime()) {
  const unsigned degree = e ? *e : minimal_n_maxima_degree(n);
  const auto base = n_maxima_base(n, degree);
  if (!base) {
    throw std::invalid_argument("N = " + std::to_string(n) + " is not attainable at e = " + std::to_string(degree));
  }
  const Sequence delta = first_difference(base->entries());
  auto rep = detail::points_plus_generic(
      "nmaxima", *base, [&](std::uint64_t s) { return points_from_staircase(delta, s, false); }, seed, mode);
  rep.params = {{"n", std::to_string(n)}, {"e", std::to_string(degree)}, {"t", std::to_string(base->back())}};
  rep.notes.emplace_back("maxima", std::to_string(count_maxima(rep.computed_h)));
  rep.pass = rep.pass && count_maxima(rep.computed_h) == n;
  return rep;
}

/// <y1^{e-1} y2, y2^e, y2^{e-1} y3, ..., y3^e>.
inline ModuleRecipe example7_module(unsigned e) {
  if (e < 3) throw std::invalid_argument("e must be at least 3");
  ModuleRecipe m{3, {}};
  auto mono = [&](unsigned a, unsigned b, unsigned c) {
    return GeneratorRecipe::literal(Form<RationalField>(RationalField{}, 3, e, {{Monomial{a, b, c}, mpq_class(1)}}));
  };
  m.generators.push_back(mono(e - 1, 1, 0));
  for (unsigned c = 0; c <= e; ++c) m.generators.push_back(mono(0, e - c, c));
  return m;
}

/// (1, 3, 5, 6, ..., e+1, e+2, e+2): h_i = i + 3 for 2 <= i < e, h_e = e + 2.
inline HVector example7_hvector(unsigned e) {
  if (e < 3) throw std::invalid_argument("e must be at least 3");
  Sequence h{1, 3};
  for (unsigned i = 2; i < e; ++i) h.push_back(i + 3);
  h.push_back(e + 2);
  return HVector(std::move(h));
}

inline ConstructionReport build_example7(unsigned e, const FieldMode& mode = FieldMode::two_prime()) {
  ConstructionReport rep;
  rep.construction = "example7";
  rep.params = {{"e", std::to_string(e)}};
  rep.module = example7_module(e);
  rep.target_h = example7_hvector(e);
  auto h = compute_h(rep.module, mode);
  rep.computed_h = h.value;
  rep.field = h.field;
  rep.pass = rep.computed_h == rep.target_h;
  return rep;
}

/// Type-3 level module of socle degree 7: two binomials in y1, y3 and one
/// binary form in y1, y2.
inline ModuleRecipe prop8_module() {
  ModuleRecipe m{3, {}};
  m.generators.push_back(GeneratorRecipe::literal(parse_form("y1^2*y3^5 - y1*y3^6", 3)));
  m.generators.push_back(GeneratorRecipe::literal(parse_form("y1^3*y3^4 - y1^5*y3^2", 3)));
  m.generators.push_back(GeneratorRecipe::literal(
      parse_form("437*y1^7 - 232*y1^6*y2 - 423*y1^5*y2^2 - 567*y1^4*y2^3 - 769*y1^3*y2^4 + 831*y1^2*y2^5 "
                 "- 916*y1*y2^6 - 202*y2^7",
                 3)));
  return m;
}

inline ConstructionReport build_prop8(const FieldMode& mode = FieldMode::two_prime()) {
  ConstructionReport rep;
  rep.construction = "prop8";
  rep.module = prop8_module();
  rep.target_h = HVector({1, 3, 5, 7, 9, 9, 6, 3});
  auto h = compute_h(rep.module, mode);
  rep.computed_h = h.value;
  rep.field = h.field;
  rep.pass = rep.computed_h == rep.target_h;
  return rep;
}

enum class LexEnd { first, last, automatic };

inline std::string to_string(LexEnd d) {
  switch (d) {
    case LexEnd::first:
      return "lex-first";
    case LexEnd::last:
      return "lex-last";
    case LexEnd::automatic:
      break;
  }
  return "auto";
}

inline LexEnd parse_lex_end(const std::string& s) {
  if (s == "lex-first") return LexEnd::first;
  if (s == "lex-last") return LexEnd::last;
  if (s == "auto") return LexEnd::automatic;
  throw std::invalid_argument("direction must be lex-first, lex-last or auto");
}

/// Module generated by the first or last t monomials of degree e in lex order.
inline ModuleRecipe lex_segment_module(std::size_t t, unsigned e, LexEnd end) {
  const auto mons = monomials_of_degree(3, e);
  if (t < 1 || t > mons.size()) throw std::invalid_argument("t must be between 1 and C(e+2,2)");
  ModuleRecipe m{3, {}};
  const std::size_t start = end == LexEnd::first ? 0 : mons.size() - t;
  for (std::size_t k = start; k < start + t; ++k) {
    m.generators.push_back(
        GeneratorRecipe::literal(Form<RationalField>(RationalField{}, 3, e, {{mons[k], mpq_class(1)}})));
  }
  return m;
}

/// Monomial base (1, 3, 4, ..., t) plus L_1^e + L_2^e, giving
/// (1, 3, 6, 7, ..., t, t+1, t+1). A WLP probe of the result is reported.
inline ConstructionReport build_remark9(std::size_t t, unsigned e, std::uint64_t seed, LexEnd direction,
                                        const FieldMode& mode = FieldMode::two_prime()) {
  if (e < 3) throw std::invalid_argument("e must be at least 3");
  if (t != e + 2) throw std::invalid_argument("the base (1,3,4,...,t) of socle degree e needs t = e + 2");
  Sequence base_seq{1, 3};
  for (unsigned i = 2; i <= e; ++i) base_seq.push_back(i + 2);
  const HVector target_base(base_seq);
  Sequence final_seq{1, 3};
  for (unsigned i = 2; i < e; ++i) final_seq.push_back(std::min<std::int64_t>(i + 4, monomial_count(3, i)));
  final_seq.push_back(static_cast<std::int64_t>(t) + 1);
  const HVector target(final_seq);

  std::vector<LexEnd> candidates;
  if (direction == LexEnd::automatic) {
    candidates = {LexEnd::first, LexEnd::last};
  } else {
    candidates = {direction};
  }
  std::optional<ModuleRecipe> base;
  LexEnd chosen = LexEnd::automatic;
  std::string tried;
  for (auto d : candidates) {
    auto m = lex_segment_module(t, e, d);
    const auto h = compute_h(m, mode).value;
    tried += (tried.empty() ? "" : "; ") + to_string(d) + " -> " + h.to_string();
    if (h == target_base && !base) {
      base = std::move(m);
      chosen = d;
    }
  }
  if (!base) {
    throw VerificationError("no lex segment realizes the base " + target_base.to_string() + " (" + tried + ")");
  }

  ConstructionReport rep;
  rep.construction = "remark9";
  rep.params = {{"t", std::to_string(t)}, {"e", std::to_string(e)}, {"direction", to_string(chosen)}};
  rep.seed = seed;
  rep.base_h = target_base;
  rep.target_h = target;
  for (unsigned attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const auto ext = add_power_sum(*base, 2, derive_seed(seed, "remark9/" + std::to_string(attempt)), mode);
    rep.retries = attempt;
    rep.computed_h = ext.h;
    rep.field = ext.field;
    rep.module = ext.module;
    if (ext.h == target) break;
  }
  rep.pass = rep.computed_h == rep.target_h;
  rep.notes.emplace_back("directions_tried", tried);
  const auto probe = wlp_probe(rep.module, seed, mode);
  rep.notes.emplace_back("wlp_probe", to_string(probe.verdict) + " (reported, unasserted)");
  return rep;
}

/// Extension of Example-2 style bases by a sum of k powers of linear forms.
inline ConstructionReport build_power_sum(unsigned k, std::uint64_t seed, const FieldMode& mode = FieldMode::two_prime()) {
  const HVector base = arithmetic_tail_base(3, 9);
  std::optional<HVector> observed;
  for (unsigned attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const auto pts = points_on_rational_curve(27, 3, derive_seed(seed, "powersum/points/" + std::to_string(attempt)));
    auto ext = add_power_sum(powers_module(pts, 9), k, derive_seed(seed, "powersum/form"), mode);
    if (!(ext.base_h == base)) {
      observed = ext.base_h;
      continue;
    }
    ConstructionReport rep;
    rep.construction = "powersum";
    rep.params = {{"k", std::to_string(k)}};
    rep.seed = seed;
    rep.retries = attempt;
    rep.base_h = ext.base_h;
    // the derivatives of F in degree i span min(k, C(e-i+2,2)) dimensions
    Sequence target{1};
    for (std::size_t i = 1; i < base.size(); ++i) {
      const auto added = std::min<std::int64_t>(k, monomial_count(3, 9 - i));
      target.push_back(std::min<std::int64_t>(monomial_count(3, i), base[i] + added));
    }
    rep.target_h = HVector(target);
    rep.computed_h = ext.h;
    rep.pass = rep.computed_h == rep.target_h;
    rep.field = ext.field;
    rep.module = std::move(ext.module);
    return rep;
  }
  throw VerificationError("point sample did not realize the base h-vector " + base.to_string(), observed);
}

/// Replaces the report's module by its lift to r_new variables.
inline ConstructionReport lift_report(ConstructionReport rep, std::size_t r_new,
                                      const FieldMode& mode = FieldMode::two_prime()) {
  rep.module = lift_codim(rep.module, r_new);
  rep.target_h = lift_hvector(rep.computed_h, r_new);
  const auto h = compute_h(rep.module, mode);
  rep.params.emplace_back("lift", std::to_string(r_new));
  rep.pass = rep.pass && h.value == rep.target_h;
  rep.computed_h = h.value;
  rep.field = h.field;
  return rep;
}

}  // namespace apolar

#endif  // APOLAR_CONSTRUCTIONS_HPP
