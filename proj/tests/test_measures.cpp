#include <gtest/gtest.h>

#include "nonadditive/measures.hpp"
#include "support.hpp"

using namespace nonadditive;

TEST(MeasureEval, Possibility) {
  const auto mu = MonotoneMeasure::possibility({0.2, 0.9});
  EXPECT_EQ(mu(3), XReal(0.9));
  EXPECT_EQ(mu(1), XReal(0.2));
  EXPECT_EQ(mu(0), XReal(0.0));
}

TEST(MeasureEval, DistortionSqrt) {
  const auto mu = MonotoneMeasure::distortion(DistortionMap::power(0.5), {0.25, 0.75});
  EXPECT_DOUBLE_EQ(mu(1).value(), 0.5);
  EXPECT_DOUBLE_EQ(mu(3).value(), 1.0);
  EXPECT_EQ(mu(0), XReal(0.0));
}

TEST(MeasureEval, LambdaSugenoComposesMultiplicatively) {
  const double lambda = -0.5;
  const auto mu = MonotoneMeasure::lambda_sugeno(lambda, {0.3, 0.4, 0.5});
  const double ab = mu(3).value();
  EXPECT_NEAR(ab, 0.3 + 0.4 + lambda * 0.3 * 0.4, 1e-12);
  EXPECT_NEAR(mu(7).value(), ab + 0.5 + lambda * ab * 0.5, 1e-12);
}

TEST(MeasureEval, InvalidMask) {
  const auto mu = MonotoneMeasure::possibility({0.2, 0.9});
  EXPECT_THROW(mu(4), std::invalid_argument);
}

TEST(MeasureEval, ExplicitTableMustBeMonotone) {
  EXPECT_THROW(MonotoneMeasure::explicit_table({0.0, 0.5, 0.3, 0.4}), std::invalid_argument);
  EXPECT_THROW(MonotoneMeasure::explicit_table({0.1, 0.5, 0.6, 0.7}), std::invalid_argument);
}

TEST(MeasureProperties, PossibilityIsMaxitiveAndSubadditive) {
  const auto mu = MonotoneMeasure::possibility({0.2, 0.9, 0.4});
  EXPECT_TRUE(check_measure_property(mu, MeasureProperty::maxitive).holds());
  EXPECT_TRUE(check_measure_property(mu, MeasureProperty::subadditive).holds());
  EXPECT_TRUE(check_measure_property(mu, MeasureProperty::null_additive).holds());
}

TEST(MeasureProperties, PlantedSubadditivityViolation) {
  // mu({0,1}) = 1 > mu{0} + mu{1} = 0.4
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0});
  const auto r = check_measure_property(mu, MeasureProperty::subadditive);
  EXPECT_EQ(r.verdict, Verdict::violated);
  ASSERT_TRUE(r.witness);
  ASSERT_EQ(r.witness->sets.size(), 2u);
  const Mask a = r.witness->sets[0], b = r.witness->sets[1];
  EXPECT_GT(mu(a | b).value(), mu(a).value() + mu(b).value());
  EXPECT_NEAR(r.margin, 0.6, 1e-15);
}

TEST(MeasureProperties, SubmodularAndNullAdditive) {
  const auto concave = MonotoneMeasure::distortion(DistortionMap::power(0.5), {0.2, 0.3, 0.5});
  EXPECT_TRUE(check_measure_property(concave, MeasureProperty::submodular).holds());
  const auto convex = MonotoneMeasure::distortion(DistortionMap::power(2.0), {0.2, 0.3, 0.5});
  EXPECT_EQ(check_measure_property(convex, MeasureProperty::submodular).verdict, Verdict::violated);
  // {0} is null but adjoining it to {1} changes the measure.
  const auto not_na = MonotoneMeasure::explicit_table({0.0, 0.0, 0.3, 0.6});
  EXPECT_EQ(check_measure_property(not_na, MeasureProperty::null_additive).verdict, Verdict::violated);
  EXPECT_TRUE(check_measure_property(not_na, MeasureProperty::finite).holds());
  EXPECT_EQ(check_measure_property(with_infinite_total(not_na), MeasureProperty::finite).verdict, Verdict::violated);
}

TEST(MeasureProperties, PairwiseChecksCapped) {
  const auto mu = MonotoneMeasure::possibility(std::vector<double>(13, 0.5));
  EXPECT_THROW(check_measure_property(mu, MeasureProperty::subadditive), std::invalid_argument);
  EXPECT_TRUE(check_measure_property(mu, MeasureProperty::monotone).holds());
}

TEST(DualMeasure, OneMinusOnPossibility) {
  const auto mu = MonotoneMeasure::possibility({0.2, 1.0});
  const auto h = DualityMap::one_minus();
  const auto mu_h = dual_measure_h(mu, h);
  EXPECT_EQ(mu_h(3), XReal(1.0));
  EXPECT_EQ(mu_h(0), XReal(0.0));
  EXPECT_DOUBLE_EQ(mu_h(1).value(), 0.0);  // 1 - mu({1})
  EXPECT_DOUBLE_EQ(mu_h(2).value(), 0.8);  // 1 - mu({0})
  EXPECT_TRUE(check_measure_property(mu_h, MeasureProperty::monotone).holds());
  const auto back = dual_measure_h(mu_h, h);
  for (Mask a = 0; a < 4; ++a) EXPECT_DOUBLE_EQ(back(a).value(), mu(a).value());
}

TEST(DualMeasure, TotalMustMatchHAtZero) {
  const auto mu = MonotoneMeasure::possibility({0.2, 0.9});
  EXPECT_THROW(dual_measure_h(mu, DualityMap::one_minus()), std::invalid_argument);
}

TEST(DualMeasure, ReciprocalGivesInfinityOnNullComplement) {
  const auto mu = with_infinite_total(MonotoneMeasure::explicit_table({0.0, 0.0, 2.0, 3.0}));
  const auto mu_h = dual_measure_h(mu, DualityMap::reciprocal());
  // mu(X \ {1}) = mu({0}) = 0, so mu_h({1}) = 1/0.
  EXPECT_EQ(mu_h(2), XReal::infinity());
  EXPECT_DOUBLE_EQ(mu_h(1).value(), 0.5);
  EXPECT_EQ(mu_h(3), XReal::infinity());
}

TEST(Generators, FamiliesHaveTheirProperties) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const auto poss = generate_measure(seed, MeasureFamily::possibility, n);
    EXPECT_TRUE(check_measure_property(poss, MeasureProperty::maxitive).holds());
    const auto mono = generate_measure(seed, MeasureFamily::monotonized_random, n);
    EXPECT_TRUE(check_measure_property(mono, MeasureProperty::monotone).holds());
    EXPECT_EQ(mono(0), XReal(0.0));
    const auto nm = generate_measure(seed, MeasureFamily::non_maxitive, n);
    const auto r = check_measure_property(nm, MeasureProperty::maxitive);
    ASSERT_EQ(r.verdict, Verdict::violated);
    ASSERT_TRUE(r.witness);
    const Mask a = r.witness->sets[0], b = r.witness->sets[1];
    EXPECT_EQ(a & b, 0u);
    EXPECT_GT(nm(a | b).value(), std::max(nm(a).value(), nm(b).value()));
    EXPECT_TRUE(check_measure_property(generate_measure(seed, MeasureFamily::distortion_concave, n), MeasureProperty::subadditive).holds());
    EXPECT_TRUE(check_measure_property(generate_measure(seed, MeasureFamily::lambda_sugeno, n), MeasureProperty::subadditive).holds());
  }
}

TEST(Generators, DeterministicPerSeed) {
  const auto a = generate_measure(9, MeasureFamily::monotonized_random, 5);
  const auto b = generate_measure(9, MeasureFamily::monotonized_random, 5);
  for (Mask m = 0; m < 32; ++m) EXPECT_EQ(a(m), b(m));
}

TEST(Generators, ImplicationsAcrossFamilies) {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const auto mu = generate_measure(rng, testgen::any_family(rng), testgen::size_between(rng, 2, 7));
    EXPECT_TRUE(check_measure_property(mu, MeasureProperty::monotone).holds());
    if (check_measure_property(mu, MeasureProperty::maxitive).holds()) {
      EXPECT_TRUE(check_measure_property(mu, MeasureProperty::subadditive).holds());
    }
    if (check_measure_property(mu, MeasureProperty::subadditive).holds()) {
      EXPECT_TRUE(check_measure_property(mu, MeasureProperty::null_additive).holds());
    }
    if (mu.total().value() == 1.0) {
      EXPECT_TRUE(check_measure_property(dual_measure_h(mu, DualityMap::one_minus()), MeasureProperty::monotone).holds());
    }
  }
}
