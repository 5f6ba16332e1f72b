#include "apolar/field.hpp"
#include "apolar/matrix.hpp"
#include "apolar/param_matrix.hpp"
#include "apolar/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace apolar;

namespace {

template <class F>
Matrix<F> ints(const F& f, const std::vector<std::vector<std::int64_t>>& rows) {
  return Matrix<F>::from_ints(f, rows);
}

std::vector<std::vector<std::int64_t>> random_int_matrix(Rng& rng, std::size_t n, std::size_t m, std::int64_t bound,
                                                         std::size_t dependent) {
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(m));
  for (auto& row : a) {
    for (auto& x : row) x = rng.uniform(-bound, bound);
  }
  // overwrite a few rows with combinations of earlier ones
  for (std::size_t k = 0; k < dependent && n > 2; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(n) - 1));
    const auto c1 = rng.uniform(-3, 3), c2 = rng.uniform(-3, 3);
    for (std::size_t j = 0; j < m; ++j) a[i][j] = c1 * a[i - 1][j] + c2 * a[i - 2][j];
  }
  return a;
}

}  // namespace

TEST(PrimeField, ArithmeticMatchesWideIntegers) {
  for (std::uint64_t p : std::initializer_list<std::uint64_t>{kDefaultPrime, kSecondPrime, 65537ULL, 5ULL, 4294967291ULL}) {
    const PrimeField f(p);
    Rng rng(p);
    for (int k = 0; k < 2000; ++k) {
      const auto a = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p - 1)));
      const auto b = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p - 1)));
      const auto fa = f.from_int(static_cast<std::int64_t>(a)), fb = f.from_int(static_cast<std::int64_t>(b));
      EXPECT_EQ(f.mul(fa, fb), static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p));
      EXPECT_EQ(f.add(fa, fb), (a + b) % p);
      EXPECT_EQ(f.sub(fa, fb), (a + p - b) % p);
      if (a != 0) EXPECT_EQ(f.mul(fa, f.inv(fa)), 1U);
    }
  }
}

TEST(PrimeField, ReducesNegativesAndRationals) {
  const PrimeField f(7);
  EXPECT_EQ(f.from_int(-1), 6U);
  EXPECT_EQ(f.from_rational(mpq_class(1, 3)), 5U);  // 3 * 5 = 15 = 1 mod 7
  EXPECT_THROW(f.from_rational(mpq_class(1, 7)), std::domain_error);
  EXPECT_THROW(f.inv(0), std::domain_error);
  EXPECT_THROW(PrimeField(15), std::invalid_argument);
}

TEST(RationalField, ExactOperationsAndDivisionByZero) {
  const RationalField q;
  EXPECT_EQ(q.add(mpq_class(1, 2), mpq_class(1, 3)), mpq_class(5, 6));
  EXPECT_EQ(q.mul(mpq_class(2, 3), mpq_class(3, 4)), mpq_class(1, 2));
  EXPECT_THROW(q.inv(mpq_class(0)), std::domain_error);
  EXPECT_THROW(q.div(mpq_class(1), mpq_class(0)), std::domain_error);
  EXPECT_EQ(parse_rational("-6/4"), mpq_class(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(Rank, SmallExamplesInBothFields) {
  const RationalField q;
  const PrimeField p;
  const std::vector<std::vector<std::int64_t>> id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(rank(ints(q, id)), 3U);
  EXPECT_EQ(rank(ints(p, id)), 3U);
  EXPECT_EQ(rank(ints(q, {{0, 0}, {0, 0}})), 0U);
  EXPECT_EQ(rank(ints(p, {{0, 0}, {0, 0}})), 0U);
  EXPECT_EQ(rank(ints(q, {{1, 2}, {2, 4}})), 1U);
  EXPECT_EQ(rank(ints(p, {{1, 2}, {2, 4}})), 1U);
  EXPECT_EQ(rank(Matrix<RationalField>(q, 0, 4)), 0U);
}

TEST(Rank, AgreesWithTextbookEliminationModP) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 30));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 30));
    const auto a = random_int_matrix(rng, n, m, 1'000'000, static_cast<std::size_t>(rng.uniform(0, 5)));
    for (std::uint64_t p : std::initializer_list<std::uint64_t>{kDefaultPrime, kSecondPrime, 101ULL}) {
      EXPECT_EQ(rank(ints(PrimeField(p), a)), oracle::rank_mod(a, static_cast<std::int64_t>(p)));
    }
  }
}

TEST(Rank, AgreesWithGaussJordanOverQ) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 12));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 12));
    const auto a = random_int_matrix(rng, n, m, 50, static_cast<std::size_t>(rng.uniform(0, 4)));
    std::vector<std::vector<mpq_class>> qa;
    Matrix<RationalField> mq(RationalField{}, n, m);
    for (std::size_t i = 0; i < n; ++i) {
      qa.emplace_back();
      for (std::size_t j = 0; j < m; ++j) {
        const mpq_class v(a[i][j], static_cast<unsigned long>(1 + (i + j) % 3));
        qa.back().push_back(v);
        mq.at(i, j) = v;
      }
    }
    EXPECT_EQ(rank(mq), oracle::rank_q(qa));
  }
}

TEST(Rank, InvariantUnderRowPermutationAndScaling) {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = random_int_matrix(rng, 12, 9, 100, 4);
    const auto base = rank(ints(RationalField{}, a));
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(static_cast<std::uint64_t>(trial)));
    std::vector<std::vector<std::int64_t>> b;
    for (auto i : perm) {
      auto row = a[i];
      const auto s = rng.nonzero(9);
      for (auto& x : row) x *= s;
      b.push_back(std::move(row));
    }
    EXPECT_EQ(rank(ints(RationalField{}, b)), base);
    EXPECT_EQ(rank(ints(PrimeField{}, b)), rank(ints(PrimeField{}, a)));
  }
}

TEST(Rank, RationalRankBoundsEveryReduction) {
  // det = 5: full rank over Q and mod 2^31-1, rank 1 mod 5
  const std::vector<std::vector<std::int64_t>> a{{1, 2}, {3, 11}};
  EXPECT_EQ(rank(ints(RationalField{}, a)), 2U);
  EXPECT_EQ(rank(ints(PrimeField{}, a)), 2U);
  EXPECT_EQ(rank(ints(PrimeField(5), a)), 1U);
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_int_matrix(rng, 8, 8, 4, 2);
    const auto rq = rank(ints(RationalField{}, m));
    for (std::uint64_t p : std::initializer_list<std::uint64_t>{2ULL, 3ULL, 5ULL, kDefaultPrime}) EXPECT_GE(rq, rank(ints(PrimeField(p), m)));
  }
}

TEST(Kernel, SmallExamples) {
  const RationalField q;
  const auto k1 = kernel_basis(ints(q, {{1, 1}}));
  ASSERT_EQ(k1.size(), 1U);
  EXPECT_EQ(k1[0][0], -k1[0][1]);
  EXPECT_NE(k1[0][0], 0);
  EXPECT_TRUE(kernel_basis(ints(q, {{1, 0}, {0, 1}})).empty());
}

TEST(Kernel, ExhaustiveNullSpaceOverF5) {
  const PrimeField f5(5);
  const auto m = ints(f5, {{1, 2, 3}, {4, 5, 6}});
  const auto basis = kernel_basis(m);
  ASSERT_EQ(basis.size(), 1U);
  // enumerate F_5^3: the null space has 5 elements, all multiples of the basis vector
  std::size_t count = 0;
  for (std::uint64_t a = 0; a < 5; ++a) {
    for (std::uint64_t b = 0; b < 5; ++b) {
      for (std::uint64_t c = 0; c < 5; ++c) {
        if ((a + 2 * b + 3 * c) % 5 != 0 || (4 * a + 5 * b + 6 * c) % 5 != 0) continue;
        ++count;
        bool multiple = false;
        for (std::uint64_t s = 0; s < 5; ++s) {
          multiple |= f5.mul(s, basis[0][0]) == a && f5.mul(s, basis[0][1]) == b && f5.mul(s, basis[0][2]) == c;
        }
        EXPECT_TRUE(multiple);
      }
    }
  }
  EXPECT_EQ(count, 5U);
}

TEST(Kernel, RankNullityAndAnnihilation) {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_int_matrix(rng, 7, 10, 20, 3);
    const auto mq = ints(RationalField{}, a);
    const auto basis = kernel_basis(mq);
    EXPECT_EQ(basis.size() + rank(mq), mq.cols());
    for (const auto& v : basis) {
      for (const auto& x : mq.apply(v)) EXPECT_EQ(x, 0);
    }
    Matrix<RationalField> stacked(RationalField{}, basis.size(), mq.cols());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < mq.cols(); ++j) stacked.at(i, j) = basis[i][j];
    }
    EXPECT_EQ(rank(stacked), basis.size());
    EXPECT_EQ(kernel_basis(mq), basis);  // deterministic
  }
}

TEST(RowEchelon, BatchInsertionMatchesSingleInsertion) {
  Rng rng(16);
  const PrimeField f;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t cols = 60;
    std::vector<std::vector<std::uint32_t>> rows;
    for (int i = 0; i < 90; ++i) {
      std::vector<std::uint32_t> v(cols, 0);
      // sparse rows with many dependencies
      for (int k = 0; k < 4; ++k) v[static_cast<std::size_t>(rng.uniform(0, cols - 1))] = static_cast<std::uint32_t>(rng.uniform(1, 1000));
      if (i > 3 && i % 3 == 0) {
        for (std::size_t j = 0; j < cols; ++j) v[j] = f.add(rows[i - 1][j], f.mul(7, rows[i - 3][j]));
      }
      rows.push_back(v);
    }
    RowEchelon<PrimeField> one(f, cols), batched(f, cols);
    for (const auto& v : rows) one.insert(v);
    for (std::size_t i = 0; i < rows.size(); i += 16) {
      batched.insert_batch({rows.begin() + static_cast<std::ptrdiff_t>(i),
                            rows.begin() + static_cast<std::ptrdiff_t>(std::min(rows.size(), i + 16))});
    }
    EXPECT_EQ(one.rank(), batched.rank());
    EXPECT_EQ(one.reduced_basis(), batched.reduced_basis());
  }
}

TEST(SymbolicRank, SmallExamples) {
  // [[a, b], [2a, 2b]]
  ParamMatrix m1(2, 2, 2);
  m1.add(0, 0, 1, 1);
  m1.add(0, 1, 2, 1);
  m1.add(1, 0, 1, 2);
  m1.add(1, 1, 2, 2);
  EXPECT_EQ(symbolic_rank(m1), 1U);
  // [[a, b], [b, a]]
  ParamMatrix m2(2, 2, 2);
  m2.add(0, 0, 1, 1);
  m2.add(0, 1, 2, 1);
  m2.add(1, 0, 2, 1);
  m2.add(1, 1, 1, 1);
  EXPECT_EQ(symbolic_rank(m2), 2U);
  // rational coefficients and constants
  ParamMatrix m3(2, 3, 1);
  m3.add(0, 0, 0, mpq_class(1, 2));
  m3.add(0, 1, 1, mpq_class(1, 3));
  m3.add(1, 0, 0, 1);
  m3.add(1, 1, 1, mpq_class(2, 3));
  EXPECT_EQ(symbolic_rank(m3), 1U);
}

TEST(SymbolicRank, DominatesSpecializationsAndSchwartzZippelBound) {
  // 4x4 matrix of affine-linear entries in 2 parameters with a built-in
  // dependency: generic rank 3, and a minor of degree <= 3 decides it.
  Rng rng(17);
  ParamMatrix m(4, 4, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k <= 2; ++k) m.add(i, j, k, rng.uniform(-3, 3));
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k <= 2; ++k) m.add(3, j, k, m.at(0, j)[k] - m.at(2, j)[k]);
  }
  const auto generic = symbolic_rank(m);
  ASSERT_EQ(generic, 3U);
  // points drawn from S = {0..9}: P(rank drops) <= deg/|S| = 3/10
  const double bound = 3.0 / 10.0;
  int below = 0;
  const int samples = 1000;
  for (int s = 0; s < samples; ++s) {
    const std::vector<mpq_class> pt{rng.uniform(0, 9), rng.uniform(0, 9)};
    const auto r = rank(m.evaluate(pt));
    EXPECT_LE(r, generic);
    below += r < generic ? 1 : 0;
  }
  // three standard deviations of a Bernoulli(0.3) mean over 1000 samples
  const double slack = 3.0 * std::sqrt(bound * (1 - bound) / samples);
  EXPECT_LE(static_cast<double>(below) / samples, bound + slack);
}

TEST(SymbolicRank, EvaluateModMatchesRationalEvaluation) {
  Rng rng(18);
  ParamMatrix m(3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k <= 3; ++k) m.add(i, j, k, mpq_class(rng.uniform(-5, 5), 1 + k));
    }
  }
  const std::vector<std::int64_t> pt{3, -7, 11};
  const auto q = m.evaluate({3, -7, 11});
  const auto fp = m.evaluate_mod(pt, PrimeField{});
  const auto conv = convert(q, PrimeField{});
  EXPECT_EQ(fp.entries(), conv.entries());
}
