#include <gtest/gtest.h>

#include "nonadditive/relations.hpp"
#include "support.hpp"

using namespace nonadditive;

TEST(Comonotone, DetectsOppositeOrder) {
  const Fn f(std::vector<double>{0.1, 0.5, 0.3}, ValueScale::unit());
  const Fn g(std::vector<double>{0.2, 0.9, 0.4}, ValueScale::unit());
  const Fn h(std::vector<double>{0.9, 0.2, 0.4}, ValueScale::unit());
  EXPECT_TRUE(is_comonotone(f, g).holds);
  const auto v = is_comonotone(f, h);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->sets.size(), 2u);
  // Restricted to {0, 2}: f = (0.1, 0.3), h = (0.9, 0.4) still opposite.
  EXPECT_FALSE(is_comonotone(f, h, 5).holds);
  EXPECT_TRUE(is_comonotone(f, h, 4).holds);
}

TEST(Comonotone, TiesNeverViolate) {
  const Fn f(std::vector<double>{0.5, 0.5}, ValueScale::unit());
  const Fn g(std::vector<double>{0.1, 0.9}, ValueScale::unit());
  EXPECT_TRUE(is_comonotone(f, g).holds);
}

TEST(StarAssociated, PlusMatchesComonotoneOnRandomPairs) {
  Rng rng(81);
  const auto plus = ops::sum(ValueScale::extended_half_line());
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = testgen::size_between(rng, 1, 8);
    Fn f = testgen::extended_fn(rng, n), g = testgen::extended_fn(rng, n);
    if (rng.coin(0.5)) std::tie(f, g) = testgen::comonotone_pair(rng, n, ValueScale::extended_half_line(), 4.0);
    EXPECT_EQ(is_star_associated(f, g, plus, f.space().full()).holds, is_comonotone(f, g).holds);
  }
}

TEST(StarAssociated, MinIsAlwaysAssociated) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = testgen::size_between(rng, 1, 6);
    const Fn f = testgen::unit_fn(rng, n), g = testgen::unit_fn(rng, n);
    EXPECT_TRUE(is_star_associated(f, g, ops::minimum(), f.space().full()).holds);
  }
}

TEST(StarAssociated, WitnessAndSampledMode) {
  const Fn f(std::vector<double>{0.0, 1.0}, ValueScale::extended_half_line());
  const Fn g(std::vector<double>{1.0, 0.0}, ValueScale::extended_half_line());
  const auto v = is_star_associated(f, g, ops::sum(), 3);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->sets.front(), 3u);
  std::vector<double> big(16, 0.5);
  const Fn b(big, ValueScale::unit());
  const auto s = is_star_associated(b, b, ops::maximum(), b.space().full(), 200, 4);
  EXPECT_TRUE(s.holds);
  EXPECT_EQ(s.mode, CheckMode::sampled);
  EXPECT_EQ(s.evaluated, 200u);
}

TEST(MuSubadditive, SubadditiveMeasureGivesRelationForAnyPair) {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 1, 6);
    const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
    const Fn f = testgen::unit_fn(rng, n), g = testgen::unit_fn(rng, n);
    EXPECT_TRUE(is_mu_subadditive(f, g, ops::sum(), mu, f.space().full()).holds);
    EXPECT_TRUE(is_mu_subadditive(f, g, ops::maximum(), mu, f.space().full()).holds);
  }
}

TEST(MuSubadditive, PlantedViolation) {
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0});
  const Fn f(std::vector<double>{1.0, 0.0}, ValueScale::unit());
  const Fn g(std::vector<double>{0.0, 1.0}, ValueScale::unit());
  const auto v = is_mu_subadditive(f, g, ops::sum(), mu, 3);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->sets[0] | v.witness->sets[1], 3u);
}

TEST(Pqd, ComonotonePairUnderMaxitiveMeasure) {
  const auto mu = MonotoneMeasure::distortion(DistortionMap::power(1.0), {0.5, 0.5});
  const Fn f(std::vector<double>{1.0, 0.0}, ValueScale::unit());
  const Fn g(std::vector<double>{0.0, 1.0}, ValueScale::unit());
  EXPECT_FALSE(is_pqd(f, g, mu).holds);
  EXPECT_TRUE(is_pqd(f, f, mu).holds);
  EXPECT_EQ(parse_relation("pqd"), Relation::pqd);
}
