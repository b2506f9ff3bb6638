#include <gtest/gtest.h>

#include <cmath>

#include "nonadditive/integrals.hpp"
#include "support.hpp"

using namespace nonadditive;

namespace {

// mu{0} = 0.3, mu{1} = 0.6, mu(X) = 0.8
MonotoneMeasure small_measure() { return MonotoneMeasure::explicit_table({0.0, 0.3, 0.6, 0.8}); }
Fn small_fn() { return Fn(std::vector<double>{0.5, 0.2}, ValueScale::unit()); }

SurvivalProfile quadratic_profile() {
  return SurvivalProfile::closed_form("(1-4t^2)+", [](double t) { return std::max(1.0 - 4.0 * t * t, 0.0); }, ValueScale::unit(), 1.0,
                                      0.5, 4.0);
}

}  // namespace

TEST(UpperIntegral, HandComputedValues) {
  EXPECT_DOUBLE_EQ(upper_integral(small_fn(), small_measure(), ops::minimum()).value(), 0.3);
  EXPECT_DOUBLE_EQ(upper_integral(small_fn(), small_measure(), ops::product()).value(), 0.16);
  EXPECT_DOUBLE_EQ(sugeno_integral(small_fn(), small_measure(), 3).value(), 0.3);
  EXPECT_DOUBLE_EQ(shilkret_integral(small_fn(), small_measure(), 3).value(), 0.16);
  // Restricted to {1}: 0.2 o mu{1}
  EXPECT_DOUBLE_EQ(upper_integral(small_fn(), small_measure(), ops::product(), 2).value(), 0.2 * 0.6);
}

TEST(UpperIntegral, EmptyLevelTermForNonAnnihilatingOperator) {
  // bounded_sum(1, 0) = 1 dominates every level.
  EXPECT_DOUBLE_EQ(upper_integral(small_fn(), small_measure(), ops::bounded_sum()).value(), 1.0);
  const auto v = evaluate_upper(small_fn(), small_measure(), ops::bounded_sum(), 3);
  EXPECT_EQ(v.value, 1.0);
  EXPECT_FALSE(v.grid_bounded);
}

TEST(UpperIntegral, RejectsMismatchedSpaceAndNonMonotoneOperator) {
  EXPECT_THROW(upper_integral(Fn(std::vector<double>{0.1, 0.2, 0.3}, ValueScale::unit()), small_measure(), ops::minimum()),
               std::invalid_argument);
  const BinaryOp dip("dip", ValueScale::unit(), [](double a, double b) { return (a > 0.5 && a < 0.75) ? 0.0 : std::min(a, b); }, {});
  EXPECT_THROW(upper_integral(small_fn(), small_measure(), dip), HypothesisError);
}

TEST(LowerIntegral, MaxGivesSugenoValue) {
  EXPECT_DOUBLE_EQ(lower_integral(small_fn(), small_measure(), ops::maximum()).value(), 0.3);
  EXPECT_TRUE(check_cd16(small_fn(), small_measure(), 3).holds());
}

TEST(IntegralDispatch, KindsAndMissingOperator) {
  EXPECT_DOUBLE_EQ(integral(IntegralKind::sugeno, small_fn(), small_measure(), std::nullopt, 3).value(), 0.3);
  EXPECT_DOUBLE_EQ(integral(IntegralKind::seminormed, small_fn(), small_measure(), ops::product(), 3).value(), 0.16);
  EXPECT_THROW(integral(IntegralKind::upper_generalized, small_fn(), small_measure(), std::nullopt, 3), std::invalid_argument);
  EXPECT_THROW(seminormed_integral(small_fn(), small_measure(), ops::bounded_sum(), 3), HypothesisError);
  EXPECT_EQ(parse_integral_kind("shilkret"), IntegralKind::shilkret);
}

TEST(SubsetOracle, AgreesWithLevelEvaluation) {
  Rng rng(2024);
  const std::vector<BinaryOp> catalog{ops::minimum(), ops::product(), ops::lukasiewicz_tnorm(), ops::bounded_sum(),
                                      ops::marshall_olkin(0.5, 0.5)};
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    const Mask d = static_cast<Mask>(rng.below(std::size_t{1} << n));
    for (const auto& op : catalog)
      EXPECT_NEAR(upper_integral(f, mu, op, d).value(), upper_integral_subset_oracle(f, mu, op, d).value(), 1e-12) << op.name();
  }
}

TEST(Cd16, RandomInstances) {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 7);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    EXPECT_TRUE(check_cd16(f, mu, f.space().full()).holds());
  }
}

TEST(IntegralProperties, MonotoneInIntegrandAndMeasure) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 1, 6);
    const auto mu = normalized(generate_measure(rng, MeasureFamily::monotonized_random, n));
    auto a = testgen::grid_values(rng, n), b = a;
    for (auto& x : b) x = std::min(1.0, x + rng.grid_value(0.5, 1.0 / 16.0));
    const Fn f(a, ValueScale::unit()), g(b, ValueScale::unit());
    for (const auto& op : {ops::minimum(), ops::product(), ops::lukasiewicz_tnorm()}) {
      EXPECT_LE(upper_integral(f, mu, op).value(), upper_integral(g, mu, op).value());
      EXPECT_LE(lower_integral(f, mu, op).value(), lower_integral(g, mu, op).value() + 1e-15);
    }
    // Scaling the measure down cannot raise the integral.
    std::vector<XReal> table;
    for (Mask m = 0; m < (Mask{1} << n); ++m) table.emplace_back(mu(m).value() * 0.5);
    const auto half = MonotoneMeasure::explicit_table(table);
    EXPECT_LE(upper_integral(f, half, ops::product()).value(), upper_integral(f, mu, ops::product()).value());
  }
}

TEST(IntegralProperties, IndicatorIdentity) {
  // For a semicopula S: upper_S(h 1_A) = S(h, mu(A)).
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    const Mask a = static_cast<Mask>(rng.below(std::size_t{1} << n));
    const double h = rng.grid_value(1.0, 1.0 / 16.0);
    const Fn f = indicator(n, a, h, ValueScale::unit());
    for (const auto& s : {ops::minimum(), ops::product(), ops::lukasiewicz_tnorm()})
      EXPECT_NEAR(upper_integral(f, mu, s).value(), s.raw(h, mu(a).value()), 1e-15) << s.name();
  }
}

TEST(ProfileIntegral, QuadraticProfile) {
  const auto g = quadratic_profile();
  const auto sl = profile_integral(g, ops::lukasiewicz_tnorm());
  EXPECT_NEAR(sl.value, 1.0 / 16.0, sl.uncertainty);
  EXPECT_NEAR(sl.argmax, 0.125, 1e-3);
  const auto prod = profile_integral(g, ops::product());
  EXPECT_NEAR(prod.value, 1.0 / (3.0 * std::sqrt(3.0)), prod.uncertainty);
  const auto mn = profile_integral(g, ops::minimum());
  // t = 1 - 4t^2 at t = (sqrt(17) - 1) / 8
  EXPECT_NEAR(mn.value, (std::sqrt(17.0) - 1.0) / 8.0, mn.uncertainty);
  EXPECT_THROW(profile_integral(g, ops::product(ValueScale::extended_half_line())), std::invalid_argument);
  EXPECT_THROW(profile_integral(g, ops::product(), 0.0), std::invalid_argument);
}

TEST(Dol13, OneMinusDuality) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    for (const auto& op : {ops::minimum(), ops::product(), ops::maximum(), ops::lukasiewicz_tnorm()}) {
      const auto r = check_duality_dol13(f, mu, op, DualityMap::one_minus());
      EXPECT_TRUE(r.holds()) << op.name() << " " << r.note;
    }
  }
}

TEST(Dol13, ReciprocalDualityWithZeros) {
  Rng rng(31);
  const auto y = ValueScale::extended_half_line();
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = testgen::size_between(rng, 1, 5);
    const auto mu = with_infinite_total(generate_measure(rng, MeasureFamily::monotonized_random, n));
    auto v = testgen::grid_values(rng, n, 4.0, 0.25);
    v[rng.below(n)] = 0.0;
    const Fn f(v, y);
    for (const auto& op : {ops::sum(y), ops::product(y), ops::minimum(y)}) {
      const auto r = check_duality_dol13(f, mu, op, DualityMap::reciprocal());
      EXPECT_TRUE(r.holds()) << op.name() << " " << r.note;
    }
  }
}
