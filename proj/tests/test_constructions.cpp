#include "apolar/apolar.hpp"
#include "apolar/json_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace apolar;

namespace {

const PrimeField FP;

std::vector<std::vector<std::int64_t>> residues(const PointSet& pts, std::uint64_t p) {
  std::vector<std::vector<std::int64_t>> out;
  const mpz_class mod(static_cast<unsigned long>(p));
  for (const auto& pt : pts.points()) {
    std::vector<std::int64_t> row;
    for (const auto& c : pt) {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
      row.push_back(r.get_si());
    }
    out.push_back(std::move(row));
  }
  return out;
}

Sequence oracle_hilbert(const PointSet& pts, unsigned top) {
  Sequence hf;
  const auto res = residues(pts, kDefaultPrime);
  for (unsigned i = 0; i <= top; ++i) {
    hf.push_back(static_cast<std::int64_t>(oracle::points_hilbert(res, i, static_cast<std::int64_t>(kDefaultPrime))));
  }
  return hf;
}

Point pt(std::int64_t a, std::int64_t b, std::int64_t c) { return {mpz_class(a), mpz_class(b), mpz_class(c)}; }

}  // namespace

TEST(PointSets, RejectProportionalAndZeroPoints) {
  EXPECT_THROW(PointSet({pt(1, 2, 3), pt(-2, -4, -6)}), std::invalid_argument);
  EXPECT_THROW(PointSet({pt(0, 0, 0)}), std::invalid_argument);
  EXPECT_NO_THROW(PointSet({pt(1, 2, 3), pt(1, 2, 4)}));
}

TEST(PowersModule, SmallExamples) {
  const auto one = powers_module(PointSet({pt(2, -1, 5)}), 4);
  EXPECT_EQ(compute_h(one, FieldMode::rational()).value.to_string(), "1,1,1,1,1");
  const auto three = powers_module(PointSet({pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 1)}), 3);
  EXPECT_EQ(compute_h(three, FieldMode::rational()).value.to_string(), "1,3,3,3");
  EXPECT_THROW(powers_module(PointSet({pt(1, 0, 0)}), 0), std::invalid_argument);
}

TEST(PowersModule, HVectorIsThePointsHilbertFunction) {
  const auto pts = points_from_staircase({1, 2, 3, 2}, 11);
  const auto h = compute_h(powers_module(pts, 6), FieldMode::rational()).value;
  EXPECT_EQ(h.entries(), oracle_hilbert(pts, 6));
  EXPECT_EQ(h.to_string(), "1,3,6,8,8,8,8");
}

TEST(RationalCurve, CubicAndQuinticHilbertFunctions) {
  const auto cubic = points_on_rational_curve(27, 3, 1);
  ASSERT_EQ(cubic.size(), 27U);
  const auto hf = oracle_hilbert(cubic, 11);
  EXPECT_EQ(hf, parse_sequence("1,3,6,9,12,15,18,21,24,27,27,27"));
  const auto quintic = points_on_rational_curve(70, 5, 1);
  Sequence q;
  for (unsigned i = 0; i <= 15; ++i) q.push_back(static_cast<std::int64_t>(hilbert_function(quintic, i, FP)));
  EXPECT_EQ(q, parse_sequence("1,3,6,10,15,20,25,30,35,40,45,50,55,60,65,70"));
  EXPECT_EQ(curve_hilbert_function(5, 15), 70);
}

TEST(RationalCurve, Preconditions) {
  EXPECT_THROW(points_on_rational_curve(9, 4, 1), std::invalid_argument);
  EXPECT_THROW(points_on_rational_curve(30, 2, 1), std::invalid_argument);
}

TEST(Staircase, RealizesPrescribedDifferences) {
  const std::vector<std::pair<Sequence, Sequence>> cases{
      {{1, 2, 3}, {1, 3, 6, 6, 6}},
      {{1, 2, 2}, {1, 3, 5, 5, 5}},
      {{1, 2, 3, 3, 3}, {1, 3, 6, 9, 12, 12, 12}},
      {{1, 2, 3, 4, 2, 1, 0}, {1, 3, 6, 10, 12, 13, 13, 13}},
  };
  for (const auto& [delta, hf] : cases) {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto pts = points_from_staircase(delta, seed);
      EXPECT_EQ(oracle_hilbert(pts, static_cast<unsigned>(hf.size() - 1)), hf);
    }
  }
}

TEST(Staircase, RejectsInvalidDifferences) {
  EXPECT_FALSE(is_points_staircase({1, 3}));
  EXPECT_FALSE(is_points_staircase({2}));
  EXPECT_FALSE(is_points_staircase({1, 2, 1, 2}));
  EXPECT_TRUE(is_points_staircase({1, 2, 2, 1}));
  EXPECT_THROW(points_from_staircase({1, 2, 1, 2}, 1), std::invalid_argument);
  EXPECT_THROW(points_from_staircase({}, 1), std::invalid_argument);
}

TEST(GenericForm, PurePowerFollowsTheFormula) {
  for (unsigned e = 2; e <= 8; ++e) {
    ModuleRecipe m{3, {GeneratorRecipe::power({1, 0, 0}, e)}};
    const auto ext = add_generic_form(m, 5, FieldMode::rational());
    Sequence expect{1};
    for (unsigned i = 1; i <= e; ++i) {
      expect.push_back(std::min<std::int64_t>(1 + monomial_count(3, e - i), monomial_count(3, i)));
    }
    EXPECT_EQ(ext.h.entries(), expect);
    EXPECT_EQ(ext.base_h.entries(), Sequence(e + 1, 1));
    EXPECT_EQ(ext.module.generators.size(), 2U);
  }
  ModuleRecipe mixed{3, {GeneratorRecipe::power({1, 0, 0}, 3), GeneratorRecipe::power({0, 1, 0}, 2)}};
  EXPECT_THROW(add_generic_form(mixed, 1), std::invalid_argument);
}

TEST(GenericForm, RemarkFiveBaseMatchesPrediction) {
  const auto base = arithmetic_tail_base(5, 15);
  EXPECT_EQ(base.to_string(), "1,3,6,10,15,20,25,30,35,40,45,50,55,60,65,70");
  const auto rep = build_arithmetic_tail(5, 15, 3);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.computed_h.to_string(), "1,3,6,10,15,21,28,36,45,55,66,65,65,66,68,71");
  EXPECT_EQ(*rep.base_h, base);
}

TEST(PowerSum, ExampleTwoBase) {
  const auto six = build_power_sum(6, 7);
  EXPECT_TRUE(six.pass);
  EXPECT_EQ(six.computed_h.to_string(), "1,3,6,10,15,21,24,27,27,28");
  const auto ten = build_power_sum(10, 7);
  EXPECT_TRUE(ten.pass);
  EXPECT_EQ(ten.computed_h.to_string(), "1,3,6,10,15,21,28,27,27,28");
  EXPECT_THROW(add_power_sum(example7_module(3), 0, 1), std::invalid_argument);
  // k = 1 is reported only
  const auto one = add_power_sum(example7_module(4), 1, 1);
  EXPECT_EQ(one.base_h, example7_hvector(4));
  EXPECT_EQ(one.module.generators.size(), example7_module(4).generators.size() + 1);
}

TEST(Example2, AnySeedGivesTheNonUnimodalVector) {
  for (std::uint64_t seed : {0, 1, 2, 99}) {
    const auto rep = build_example2(seed);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.computed_h.to_string(), "1,3,6,10,15,21,28,27,27,28");
    EXPECT_EQ(rep.base_h->to_string(), "1,3,6,9,12,15,18,21,24,27");
    EXPECT_FALSE(is_unimodal(rep.computed_h));
    EXPECT_EQ(rep.module.generators.size(), 28U);
  }
}

TEST(ArithmeticTail, StepFourWitness) {
  // independent prediction from h_i = min(C(i+2,2), 4i-2) for i >= 2
  Sequence base{1, 3};
  for (std::int64_t i = 2; i <= 12; ++i) base.push_back(std::min<std::int64_t>((i + 1) * (i + 2) / 2, 4 * i - 2));
  Sequence predicted{1};
  for (std::int64_t i = 1; i <= 12; ++i) {
    const std::int64_t k = 12 - i;
    predicted.push_back(std::min<std::int64_t>(base[i] + (k + 1) * (k + 2) / 2, (i + 1) * (i + 2) / 2));
  }
  const auto rep = build_arithmetic_tail(4, 12, 7);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.base_h->entries(), base);
  EXPECT_EQ(rep.computed_h.entries(), predicted);
  EXPECT_EQ(rep.computed_h[8], rep.computed_h[9] + 1);
  EXPECT_FALSE(is_unimodal(rep.computed_h));
  EXPECT_THROW(build_arithmetic_tail(2, 12, 7), std::invalid_argument);
  EXPECT_THROW(build_arithmetic_tail(4, 6, 7), std::invalid_argument);
}

TEST(NMaxima, SmallCountsAreRealized) {
  EXPECT_EQ(minimal_n_maxima_degree(1), 2U);
  EXPECT_EQ(minimal_n_maxima_degree(2), 15U);
  EXPECT_EQ(minimal_n_maxima_degree(3), 39U);
  for (unsigned n = 1; n <= 3; ++n) {
    const auto rep = build_n_maxima(n, 7);
    EXPECT_TRUE(rep.pass) << n;
    EXPECT_EQ(count_maxima(rep.computed_h), n);
    if (n >= 2) {
      EXPECT_FALSE(is_unimodal(rep.computed_h));
    }
  }
  EXPECT_THROW(build_n_maxima(2, 7, 5U), std::invalid_argument);
  EXPECT_THROW(n_maxima_base(0, 10), std::invalid_argument);
}

TEST(NMaxima, FourMaximaTargetMatchesTheHundredDegreeInstance) {
  const auto base = n_maxima_base(4, 100);
  ASSERT_TRUE(base.has_value());
  const std::int64_t a = 92 * 91 / 2;
  for (unsigned i = 0; i <= 90; ++i) EXPECT_EQ((*base)[i], static_cast<std::int64_t>(monomial_count(3, i)));
  const std::vector<std::int64_t> steps{9, 18, 27, 36, 42, 48, 54, 57, 60, 63};
  for (std::size_t k = 0; k < steps.size(); ++k) EXPECT_EQ((*base)[91 + k], a + steps[k]);
  const auto h = lemma1_predict(*base, 3);
  const std::int64_t t = a + 63;
  const Sequence tail(h.entries().end() - 10, h.entries().end());
  EXPECT_EQ(tail, (Sequence{t + 1, t, t, t + 1, t, t, t + 1, t, t, t + 1}));
  EXPECT_EQ(count_maxima(h), 4U);
}

TEST(Example7, HVectorPattern) {
  EXPECT_EQ(build_example7(3).computed_h.to_string(), "1,3,5,5");
  EXPECT_EQ(build_example7(4).computed_h.to_string(), "1,3,5,6,6");
  EXPECT_EQ(build_example7(5).computed_h.to_string(), "1,3,5,6,7,7");
  for (unsigned e = 3; e <= 8; ++e) {
    const auto rep = build_example7(e);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.computed_h, example7_hvector(e));
  }
  EXPECT_THROW(example7_module(2), std::invalid_argument);
}

TEST(Prop8, PrintedModule) {
  const auto rep = build_prop8();
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.computed_h.to_string(), "1,3,5,7,9,9,6,3");
  const auto m = rep.module.materialize(RationalField{});
  EXPECT_EQ(level_type(m), 3U);
  const auto i2 = annihilator_component(m, 2);
  ASSERT_EQ(i2.size(), 1U);
  EXPECT_EQ(i2[0].to_string('x'), "x2*x3");
  EXPECT_EQ(m.generators()[2].coefficient(Monomial(std::vector<unsigned>{7, 0, 0})), 437);
  EXPECT_EQ(m.generators()[2].coefficient(Monomial(std::vector<unsigned>{0, 7, 0})), -202);
}

TEST(Remark9, LastMonomialsGiveTheStatedVectors) {
  for (auto [t, e] : {std::pair<std::size_t, unsigned>{5, 3}, {8, 6}, {10, 8}}) {
    const auto rep = build_remark9(t, e, 7, LexEnd::automatic);
    EXPECT_TRUE(rep.pass) << t;
    Sequence base{1, 3};
    for (std::size_t v = 4; v <= t; ++v) base.push_back(static_cast<std::int64_t>(v));
    EXPECT_EQ(rep.base_h->entries(), base);
    EXPECT_EQ(rep.computed_h.back(), static_cast<std::int64_t>(t) + 1);
    EXPECT_EQ(rep.computed_h[e - 1], static_cast<std::int64_t>(t) + 1);
    EXPECT_EQ(rep.params[2].second, "lex-last");
    bool reported = false;
    for (const auto& [k, v] : rep.notes) reported = reported || (k == "wlp_probe" && v.find("unasserted") != std::string::npos);
    EXPECT_TRUE(reported);
  }
  EXPECT_EQ(build_remark9(8, 6, 7, LexEnd::automatic).computed_h.to_string(), "1,3,6,7,8,9,9");
  EXPECT_THROW(build_remark9(8, 6, 7, LexEnd::first), VerificationError);
  EXPECT_THROW(build_remark9(7, 6, 7, LexEnd::last), std::invalid_argument);
  EXPECT_THROW(parse_lex_end("middle"), std::invalid_argument);
}

TEST(Lift, CodimensionLiftMatchesTheShiftedVector) {
  EXPECT_EQ(compute_h(lift_codim(example7_module(3), 4), FieldMode::rational()).value.to_string(), "1,4,6,6");
  const auto ex2 = build_example2(7);
  const auto lifted = compute_h(lift_codim(ex2.module, 4), FieldMode::two_prime()).value;
  EXPECT_EQ(lifted.to_string(), "1,4,7,11,16,22,29,28,28,29");
  EXPECT_FALSE(is_unimodal(lifted));
  for (std::size_t r = 5; r <= 6; ++r) {
    EXPECT_EQ(compute_h(lift_codim(example7_module(5), r), FieldMode::two_prime()).value,
              lift_hvector(example7_hvector(5), r));
  }
  EXPECT_EQ(compute_h(lift_codim(prop8_module(), 3), FieldMode::rational()).value.to_string(), "1,3,5,7,9,9,6,3");
  EXPECT_THROW(lift_codim(example7_module(3), 9), std::invalid_argument);
  EXPECT_THROW(lift_codim(lift_codim(example7_module(3), 4), 5), std::invalid_argument);
  const auto rep = lift_report(build_example7(4), 5);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.computed_h.to_string(), "1,5,7,8,8");
}

TEST(Reports, LevelTypeIsTheLastEntry) {
  std::vector<ConstructionReport> reps{build_example2(3), build_arithmetic_tail(4, 12, 3), build_example7(6),
                                       build_prop8(), build_remark9(8, 6, 3, LexEnd::automatic), build_power_sum(6, 3)};
  for (const auto& rep : reps) {
    EXPECT_EQ(static_cast<std::int64_t>(level_type(rep.module.materialize(FP))), rep.computed_h.back())
        << rep.construction;
  }
}

TEST(Reports, DeterministicForFixedSeed) {
  const auto a = to_json(build_arithmetic_tail(4, 12, 21)).dump();
  const auto b = to_json(build_arithmetic_tail(4, 12, 21)).dump();
  EXPECT_EQ(a, b);
  const auto j = to_json(build_example7(3));
  for (const char* key : {"construction", "params", "seed", "retries", "target_h", "computed_h", "verdict"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "pass");
}
