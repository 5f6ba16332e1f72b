#include "apolar/apolar.hpp"
#include "apolar/json_io.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace apolar;

namespace {

const RationalField QQ;

std::vector<std::size_t> ranks(const WlpCertificate& c) {
  std::vector<std::size_t> out;
  for (const auto& d : c.degrees) out.push_back(d.rank);
  return out;
}

}  // namespace

TEST(MultMap, SmallExamples) {
  const auto ci = corpus::literal(3, {"y1*y2*y3"}).materialize(QQ);
  const std::vector<mpq_class> ones{1, 1, 1};
  EXPECT_EQ(rank(mult_map_matrix(ci, ones, 0)), 1U);
  EXPECT_EQ(rank(mult_map_matrix(ci, ones, 1)), 3U);
  EXPECT_THROW(mult_map_matrix(ci, ones, 3), std::out_of_range);
  EXPECT_THROW(mult_map_matrix(ci, std::vector<mpq_class>{1, 1}, 0), std::invalid_argument);

  const auto ex7 = example7_module(3).materialize(QQ);
  for (std::uint64_t s = 0; s < 5; ++s) {
    std::vector<mpq_class> L;
    for (auto c : random_linear_form(3, s)) L.emplace_back(c);
    EXPECT_EQ(rank(mult_map_matrix(ex7, L, 2)), 4U);
  }
  const auto p8 = prop8_module().materialize(QQ);
  std::vector<mpq_class> L;
  for (auto c : random_linear_form(3, 9)) L.emplace_back(c);
  EXPECT_LE(rank(mult_map_matrix(p8, L, 4)), 8U);
}

TEST(MultMap, DualContractionMatchesTheQuotient) {
  std::size_t checked = 0;
  for (const auto& entry : corpus::modules()) {
    if (entry.module.socle_degree() > 5) continue;
    const auto m = entry.module.materialize(QQ);
    for (std::uint64_t seed : {1, 2}) {
      const auto Lint = random_linear_form(m.ambient(), seed);
      std::vector<mpq_class> L(Lint.begin(), Lint.end());
      for (unsigned i = 0; i < m.socle_degree(); ++i) {
        EXPECT_EQ(rank(mult_map_matrix(m, L, i)), corpus::quotient_rank(m, Lint, i)) << entry.name << " degree " << i;
        ++checked;
      }
    }
    // special, non-generic forms too
    const std::vector<std::int64_t> axis(m.ambient(), 0);
    auto e1 = axis;
    e1[0] = 1;
    std::vector<mpq_class> L(e1.begin(), e1.end());
    for (unsigned i = 0; i < m.socle_degree(); ++i) EXPECT_EQ(rank(mult_map_matrix(m, L, i)), corpus::quotient_rank(m, e1, i));
  }
  EXPECT_GT(checked, 40U);
}

TEST(MultMap, PrimeFieldMatchesRationals) {
  const auto m = prop8_module();
  const auto q = m.materialize(QQ);
  const auto p = m.materialize(PrimeField{});
  const auto Lint = random_linear_form(3, 4);
  std::vector<mpq_class> Lq(Lint.begin(), Lint.end());
  std::vector<PrimeField::Element> Lp;
  for (auto c : Lint) Lp.push_back(PrimeField{}.from_int(c));
  for (unsigned i = 0; i < 7; ++i) EXPECT_EQ(rank(mult_map_matrix(q, Lq, i)), rank(mult_map_matrix(p, Lp, i)));
}

TEST(Probe, Examples) {
  const auto ci = wlp_probe(corpus::literal(3, {"y1*y2*y3"}), 1, FieldMode::two_prime());
  EXPECT_EQ(ci.verdict, WlpVerdict::holds_probabilistic);
  const auto ex7 = wlp_probe(example7_module(3), 1, FieldMode::two_prime());
  EXPECT_EQ(ex7.verdict, WlpVerdict::fails_probable);
  EXPECT_EQ(ex7.failing, std::vector<unsigned>{2});
  const auto ex2 = wlp_probe(build_example2(7).module, 1, FieldMode::two_prime());
  EXPECT_EQ(ex2.verdict, WlpVerdict::fails_probable);
  EXPECT_FALSE(ex2.failing.empty());
  EXPECT_EQ(ex2.field, "GF(2147483647)+GF(2147483629)");
  for (const auto& d : ex2.degrees) {
    EXPECT_LE(d.rank, d.required);
    EXPECT_EQ(d.mode, "probe");
  }
}

TEST(Certify, Examples) {
  const auto ex7 = wlp_certify(example7_module(3));
  EXPECT_EQ(ex7.verdict, WlpVerdict::fails_certified);
  ASSERT_EQ(ex7.failing, std::vector<unsigned>{2});
  EXPECT_EQ(ex7.degrees[2].rank, 4U);
  EXPECT_EQ(ex7.degrees[2].required, 5U);
  EXPECT_NE(ex7.degrees[2].mode, "specialized");

  const auto p8 = wlp_certify(prop8_module());
  EXPECT_EQ(p8.verdict, WlpVerdict::fails_certified);
  ASSERT_EQ(p8.failing, std::vector<unsigned>{4});
  EXPECT_EQ(p8.degrees[4].rank, 8U);
  EXPECT_EQ(p8.degrees[4].required, 9U);

  const auto ci = wlp_certify(corpus::literal(3, {"y1*y2*y3"}));
  EXPECT_EQ(ci.verdict, WlpVerdict::holds_certified);
  for (const auto& d : ci.degrees) EXPECT_NE(d.mode, "probe");

  EXPECT_THROW(wlp_certify(corpus::literal(5, {"y1*y5"})), std::invalid_argument);
}

TEST(Certify, Prop8GenericRankIsTheMaximumOverSpecializations) {
  typename DerivativeSpaces<RationalField>::Options opt;
  opt.keep_echelons = true;
  const DerivativeSpaces<RationalField> spaces(prop8_module().materialize(QQ), opt);
  const auto pm = mult_map_param(spaces, 4);
  ASSERT_EQ(pm.rows(), 9U);
  ASSERT_EQ(pm.cols(), 9U);
  std::size_t best = 0;
  Rng rng(17);
  for (std::uint64_t p : {kDefaultPrime, kSecondPrime}) {
    const PrimeField fp(p);
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<std::int64_t> L{rng.uniform(-100000, 100000), rng.uniform(-100000, 100000),
                                        rng.uniform(-100000, 100000)};
      best = std::max(best, rank(pm.evaluate_mod(L, fp)));
    }
  }
  EXPECT_EQ(best, 8U);
  EXPECT_EQ(symbolic_rank(pm), best);
}

TEST(Certify, KernelRanksAgreeWithBareiss) {
  std::size_t kernel = 0;
  for (const auto& m : {prop8_module(), example7_module(3), example7_module(5), lex_segment_module(5, 3, LexEnd::last),
                        lift_codim(example7_module(3), 4)}) {
    const auto spaces = detail::full_spaces(m.materialize(QQ));
    for (const auto& d : wlp_certify(m).degrees) {
      if (d.mode != "kernel") continue;
      ++kernel;
      EXPECT_EQ(d.rank, symbolic_rank(mult_map_param(spaces, d.degree))) << d.degree;
    }
  }
  EXPECT_GE(kernel, 4U);
}

TEST(Certify, Example7FailsForEveryDegreeUpToEight) {
  for (unsigned e = 3; e <= 8; ++e) {
    const auto c = wlp_certify(example7_module(e));
    EXPECT_EQ(c.verdict, WlpVerdict::fails_certified) << e;
    EXPECT_EQ(c.failing, std::vector<unsigned>{e - 1}) << e;
    EXPECT_EQ(c.degrees[e - 1].rank, e + 1) << e;
  }
}

TEST(Certify, IndependentOfPrime) {
  for (const auto& m : {prop8_module(), example7_module(4), corpus::literal(3, {"y1*y2*y3"}), build_example2(7).module}) {
    const auto a = wlp_certify(m, kDefaultPrime);
    const auto b = wlp_certify(m, kSecondPrime);
    const auto c = wlp_certify(m, 1000003);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.failing, b.failing);
    EXPECT_EQ(ranks(a), ranks(b));
    EXPECT_EQ(a.verdict, c.verdict);
    EXPECT_EQ(ranks(a), ranks(c));
  }
}

TEST(Certify, NonUnimodalMeansCertifiedFailure) {
  for (const auto& entry : corpus::modules()) {
    if (entry.module.r > kMaxCertifyVariables) continue;
    const auto h = compute_h(entry.module, FieldMode::two_prime()).value;
    if (is_unimodal(h)) continue;
    const auto c = wlp_certify(entry.module);
    EXPECT_EQ(c.verdict, WlpVerdict::fails_certified) << entry.name;
  }
}

TEST(Certify, ProbeHoldsImpliesCertifyHolds) {
  std::size_t holds = 0;
  for (const auto& entry : corpus::modules()) {
    if (entry.module.r > kMaxCertifyVariables) continue;
    const auto probe = wlp_probe(entry.module, 3, FieldMode::two_prime());
    if (probe.verdict != WlpVerdict::holds_probabilistic) continue;
    ++holds;
    EXPECT_EQ(wlp_certify(entry.module).verdict, WlpVerdict::holds_certified) << entry.name;
  }
  EXPECT_GE(holds, 3U);
}

TEST(Probe, DeterministicAndSerializable) {
  const auto a = wlp_probe(prop8_module(), 5, FieldMode::two_prime());
  const auto b = wlp_probe(prop8_module(), 5, FieldMode::two_prime());
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  const auto j = to_json(wlp_certify(example7_module(3)));
  EXPECT_EQ(j["verdict"], "fails-certified");
  EXPECT_EQ(j["failing"], Json::array({2}));
  ASSERT_EQ(j["degrees"].size(), 3U);
  for (const char* key : {"i", "dimA_i", "dimA_next", "required", "rank", "mode"}) EXPECT_TRUE(j["degrees"][0].contains(key));
}
