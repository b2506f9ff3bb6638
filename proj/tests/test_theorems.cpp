#include <gtest/gtest.h>

#include "nonadditive/theorems.hpp"
#include "support.hpp"

using namespace nonadditive;

namespace {

std::array<PhiMap, 3> powers(double p1, double p2, double p3) {
  const auto u = ValueScale::unit();
  return {PhiMap::power(p1, u), PhiMap::power(p2, u), PhiMap::power(p3, u)};
}

Ctw7Instance c54_instance(const Fn& f, const Fn& g, const MonotoneMeasure& mu, double p1, double p2, double p3) {
  const auto s = ops::probabilistic_sum();
  const auto prod = ops::product();
  return Ctw7Instance{f, g, mu, f.space().full(), s, s, {prod, prod, prod}, powers(p1, p2, p3)};
}

}  // namespace

TEST(Ctw7, SufficiencyWhenFirstExponentSmallest) {
  Rng rng(71);
  int held = 0;
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    const auto [f, g] = testgen::comonotone_pair(rng, n, ValueScale::unit());
    const auto r = verify_ctw7(c54_instance(f, g, mu, 1.0, 2.0, 2.0));
    EXPECT_NE(r.verdict, Verdict::violated) << r.note;
    held += r.holds();
  }
  EXPECT_EQ(held, 150);
}

TEST(Ctw7, NecessityExhibitsViolationWhenConditionFails) {
  Rng rng(72);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 5);
    const auto mu = testgen::unit_measure(rng, n);
    const auto f = testgen::unit_fn(rng, n), g = testgen::unit_fn(rng, n);
    const auto r = verify_ctw7(c54_instance(f, g, mu, 2.0, 1.0, 1.0), Direction::necessity);
    // The inequality never holds where the condition fails.
    EXPECT_TRUE(r.holds()) << r.note;
    bool interior = false;
    for (const double c : measure_values(mu, mu.space().full())) interior |= c > 0.0 && c < 1.0;
    if (!interior) continue;  // c in {0, 1} never breaks the condition
    ASSERT_TRUE(r.exhibit) << r.note;
    const auto& w = r.exhibit->values;
    EXPECT_GT(w[3], w[4]);
  }
}

TEST(Ctw7, UnassociatedPairIsHypothesisFailure) {
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  const Fn f(std::vector<double>{0.0, 1.0}, ValueScale::extended_half_line());
  const Fn g(std::vector<double>{1.0, 0.0}, ValueScale::extended_half_line());
  const auto y = ValueScale::extended_half_line();
  const Ctw7Instance in{f, g, mu, 3, ops::sum(y), ops::sum(y), {ops::product(y), ops::product(y), ops::product(y)}};
  EXPECT_EQ(verify_ctw7(in).verdict, Verdict::hypothesis_failed);
}

TEST(Ctw7, SameSetIndicatorsReduceToCondition) {
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.4, 0.7, 1.0});
  const auto f = indicator(2, 1, 0.5, ValueScale::unit()), g = indicator(2, 1, 0.75, ValueScale::unit());
  const auto in = c54_instance(f, g, mu, 1.0, 2.0, 2.0);
  const auto s = ctw7_sides(in);
  const auto c = c52_sides(in, 0.5, 0.75, 0.4);
  EXPECT_NEAR(s.lhs, c.lhs, 1e-15);
  EXPECT_NEAR(s.rhs, c.rhs, 1e-15);
  EXPECT_LE(s.lhs, s.rhs);
}

TEST(Ctw7, AnnihilatorsRequired) {
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  const auto f = Fn(std::vector<double>{0.2, 0.4}, ValueScale::unit());
  auto in = c54_instance(f, f, mu, 1.0, 1.0, 1.0);
  in.circ[1] = ops::bounded_sum();
  EXPECT_EQ(verify_ctw7(in).verdict, Verdict::hypothesis_failed);
}

TEST(Seminormed, MinWithMaxHolds) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    const auto [f, g] = testgen::comonotone_pair(rng, n, ValueScale::unit());
    const SeminormedInstance in{f, g, mu, f.space().full(), ops::minimum(), ops::maximum(), 1.0};
    EXPECT_TRUE(verify_seminormed_minkowski(in).holds());
  }
}

TEST(Seminormed, CounterexampleOperatorsFailCondition) {
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.75, 0.75, 1.0});
  const auto f = indicator(2, 3, 0.25, ValueScale::unit());
  const SeminormedInstance in{f, f, mu, 3, ops::lukasiewicz_tnorm(), ops::bounded_sum(), 1.0};
  const auto suf = verify_seminormed_minkowski(in);
  EXPECT_EQ(suf.verdict, Verdict::hypothesis_failed);
  const auto nec = verify_seminormed_minkowski(in, Direction::necessity);
  EXPECT_TRUE(nec.holds());
  EXPECT_TRUE(nec.exhibit);
}

TEST(Seminormed, EqualFunctionsAndReadings) {
  const auto mu = MonotoneMeasure::possibility({0.5, 0.9});
  const auto f = Fn(std::vector<double>{0.3, 0.8}, ValueScale::unit());
  SeminormedInstance in{f, f, mu, 3, ops::product(), ops::maximum(), 2.0};
  EXPECT_TRUE(verify_seminormed_minkowski(in).holds());
  in.reading = SeminormedReading::total_one;
  EXPECT_EQ(verify_seminormed_minkowski(in).verdict, Verdict::hypothesis_failed);
  in.reading = SeminormedReading::range_unit;
  EXPECT_TRUE(verify_seminormed_minkowski(in).holds());
}

TEST(Counterexample, ExactAndGridValues) {
  const auto r = reproduce_counterexample();
  EXPECT_EQ(r.lhs, 0.25);
  EXPECT_EQ(r.rhs_each, 0.0625);
  EXPECT_EQ(r.rhs_sum, 0.125);
  EXPECT_TRUE(r.violated);
  EXPECT_NEAR(r.grid_lhs.value, 0.25, 1e-3);
  EXPECT_NEAR(r.grid_rhs_each.value, 0.0625, 1e-3);
  EXPECT_NEAR(r.grid_rhs_sum, 0.125, 1e-3);
  EXPECT_TRUE(r.claimed_condition.holds());
}

TEST(ComonotoneSubadditivity, SugenoAndShilkret) {
  Rng rng(40);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    auto [f, g] = testgen::comonotone_pair(rng, n, ValueScale::unit(), 0.5);
    for (const auto& op : {ops::minimum(), ops::product()}) {
      const auto r = verify_comonotone_subadditivity({f, g, mu, op});
      EXPECT_TRUE(r.holds()) << op.name() << " " << r.note;
    }
  }
  const auto catalog = cwn1_catalog();
  ASSERT_EQ(catalog.size(), 3u);
  EXPECT_TRUE(catalog[0].condition.holds());
  EXPECT_TRUE(catalog[1].condition.holds());
  EXPECT_EQ(catalog[2].condition.verdict, Verdict::violated);
}

TEST(ComonotoneSubadditivity, NonComonotonePairRejected) {
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  const Fn f(std::vector<double>{0.1, 0.4}, ValueScale::unit()), g(std::vector<double>{0.4, 0.1}, ValueScale::unit());
  EXPECT_EQ(verify_comonotone_subadditivity({f, g, mu, ops::minimum()}).verdict, Verdict::hypothesis_failed);
}

TEST(TwSubad, CatalogOperatorsOnSubadditiveMeasures) {
  Rng rng(50);
  const auto y = ValueScale::extended_half_line();
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
    std::vector<double> f(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = rng.grid_value(4.0, 0.125) - 2.0;
      g[k] = rng.grid_value(4.0, 0.125) - 2.0;
    }
    EXPECT_TRUE(verify_tw_subad({f, g, mu, ops::minimum(y), 1.0, 1.0, 1.0}).holds());
    EXPECT_TRUE(verify_tw_subad({f, g, mu, ops::product(y), 2.0, 1.0, 1.0}).holds());
    EXPECT_TRUE(verify_tw_subad({f, g, mu, ops::modified_shilkret(0.5, y), 2.0, 0.5, 1.0}).holds());
  }
}

TEST(TwSubad, HypothesesGate) {
  const auto y = ValueScale::extended_half_line();
  const auto bad_mu = MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0});
  EXPECT_EQ(verify_tw_subad({{1.0, 0.0}, {0.0, 1.0}, bad_mu, ops::minimum(y), 1.0, 1.0, 1.0}).verdict, Verdict::hypothesis_failed);
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  EXPECT_EQ(verify_tw_subad({{1.0, 0.0}, {0.0, 1.0}, mu, ops::power_min(1.0, 2.0, y), 1.0, 1.0, 1.0}).verdict,
            Verdict::hypothesis_failed);
}

TEST(SubShi, PossibilityMeasuresAreClean) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto mu = generate_measure(seed, MeasureFamily::possibility, 2 + seed % 5);
    const auto rep = verify_subShi(mu, seed);
    EXPECT_TRUE(rep.property);
    EXPECT_TRUE(rep.forward_clean);
    EXPECT_FALSE(rep.backward_violated);
    EXPECT_TRUE(rep.consistent);
    EXPECT_TRUE(rep.result.holds());
  }
}

TEST(SubShi, NonMaxitiveMeasuresGiveStrictWitness) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto mu = generate_measure(seed, MeasureFamily::non_maxitive, 2 + seed % 5);
    const auto rep = verify_subShi(mu, seed);
    EXPECT_FALSE(rep.property);
    EXPECT_TRUE(rep.backward_violated);
    EXPECT_GT(rep.backward_margin, 1e-9);
    EXPECT_TRUE(rep.consistent);
    ASSERT_TRUE(rep.backward_witness);
  }
  // An additive measure with two positive atoms is not maxitive.
  const auto additive = MonotoneMeasure::distortion(DistortionMap::power(1.0), {0.5, 0.5});
  EXPECT_TRUE(verify_subShi(additive).backward_violated);
}

TEST(DolTwsub, ForwardBackwardAndBoundary) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rep = verify_dol_twsub(generate_measure(seed, MeasureFamily::possibility, 2 + seed % 5), seed);
    EXPECT_TRUE(rep.property);
    EXPECT_TRUE(rep.consistent);
    EXPECT_TRUE(rep.result.holds());
  }
  const auto planted = MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0});
  const auto rep = verify_dol_twsub(planted);
  EXPECT_FALSE(rep.property);
  EXPECT_TRUE(rep.backward_violated);
  EXPECT_TRUE(rep.consistent);
  ASSERT_TRUE(rep.backward_witness);
  EXPECT_EQ(rep.backward_witness->sets[0] | rep.backward_witness->sets[1], 3u);

  const auto inf = with_infinite_total(MonotoneMeasure::possibility({0.3, 0.5}));
  EXPECT_EQ(verify_dol_twsub(inf).result.verdict, Verdict::hypothesis_failed);
  const auto probe = dol_twsub_boundary(inf);
  EXPECT_TRUE(probe.violated);
  EXPECT_GT(probe.height, probe.mu_a + probe.mu_b);
  EXPECT_GT(probe.lhs, probe.rhs);
  EXPECT_THROW(dol_twsub_boundary(MonotoneMeasure::possibility({0.3, 0.5})), std::invalid_argument);
}

TEST(Cdtw1, LowerSugenoSubadditivity) {
  Rng rng(12);
  const auto y = ValueScale::extended_half_line();
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
    const auto f = testgen::extended_fn(rng, n), g = testgen::extended_fn(rng, n);
    const auto plus = ops::sum(y), mx = ops::maximum(y);
    const Cdtw1Instance in{f, g, mu, f.space().full(), plus, plus, plus, {mx, mx, mx}};
    const auto r = verify_cdtw1(in);
    EXPECT_TRUE(r.holds()) << r.note;
  }
}

TEST(Cdtw1, TruncatedSumUnderProbabilisticBoxplus) {
  Rng rng(14);
  int held = 0;
  for (int i = 0; i < 80; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 5);
    const auto mu = generate_measure(rng, MeasureFamily::distortion_concave, n);
    const auto [f, g] = testgen::comonotone_pair(rng, n, ValueScale::unit());
    const auto bs = ops::bounded_sum(), mx = ops::maximum();
    const Cdtw1Instance in{f, g, mu, f.space().full(), bs, bs, ops::probabilistic_sum(), {mx, mx, mx}};
    const auto r = verify_cdtw1(in);
    EXPECT_NE(r.verdict, Verdict::violated) << r.note;
    held += r.holds();
  }
  EXPECT_GT(held, 0);
}

TEST(Duality, HarmonicMinkowskiForComonotonePairs) {
  Rng rng(21);
  const auto y = ValueScale::extended_half_line();
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = with_infinite_total(generate_measure(rng, MeasureFamily::monotonized_random, n));
    const auto [f, g] = testgen::comonotone_pair(rng, n, y, 4.0);
    const DualityInstance in{f, g, mu, ops::sum(y), ops::sum(y), DualityMap::reciprocal(), std::nullopt};
    const auto r = verify_duality_corollaries(in, DualityCorollary::colh);
    EXPECT_TRUE(r.holds()) << r.note;
  }
}

TEST(Duality, ReciprocalSugeno) {
  Rng rng(22);
  const auto y = ValueScale::extended_half_line();
  int held = 0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = with_infinite_total(generate_measure(rng, MeasureFamily::monotonized_random, n));
    const auto f = testgen::extended_fn(rng, n), g = testgen::extended_fn(rng, n);
    const DualityInstance in{f, g, mu, ops::sum(y), ops::minimum(y), DualityMap::reciprocal(), ops::sum(y)};
    const auto r = verify_duality_corollaries(in, DualityCorollary::colh2);
    EXPECT_NE(r.verdict, Verdict::violated) << r.note;
    held += r.holds();
  }
  EXPECT_GT(held, 0);
}

TEST(Duality, TotalMustMatchHAtZero) {
  const auto y = ValueScale::extended_half_line();
  const auto mu = MonotoneMeasure::possibility({0.5, 1.0});
  const Fn f(std::vector<double>{1.0, 1.0}, y);
  const DualityInstance in{f, f, mu, ops::sum(y), ops::sum(y), DualityMap::reciprocal(), std::nullopt};
  EXPECT_EQ(verify_dol_colh(in).verdict, Verdict::hypothesis_failed);
}
