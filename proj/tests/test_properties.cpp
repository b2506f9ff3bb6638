// Cross-module invariants over seeded random instances.
#include <gtest/gtest.h>

#include <algorithm>

#include "nonadditive/scenario.hpp"
#include "support.hpp"

using namespace nonadditive;

namespace {

constexpr int kCases = 300;
const ValueScale kUnit = ValueScale::unit();

Fn pointwise(const Fn& f, const Fn& g, double (*pick)(double, double)) {
  std::vector<double> v;
  for (std::size_t i = 0; i < f.size(); ++i) v.push_back(pick(f[i].value(), g[i].value()));
  return Fn(v, f.scale());
}

double lo(double a, double b) { return std::min(a, b); }
double hi(double a, double b) { return std::max(a, b); }

}  // namespace

TEST(Properties, SugenoIsMinHomogeneous) {
  Rng rng(101);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    const double c = rng.grid_value(1.0, 1.0 / 16.0);
    const Fn cf = pointwise(Fn(std::vector<double>(n, c), kUnit), f, lo);
    const Mask x = mu.space().full();
    EXPECT_EQ(sugeno_integral(cf, mu, x).value(), std::min(c, sugeno_integral(f, mu, x).value()));
  }
}

TEST(Properties, ShilkretIsHomogeneous) {
  Rng rng(102);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    const double c = rng.grid_value(1.0, 1.0 / 8.0);
    std::vector<double> scaled;
    for (std::size_t i = 0; i < n; ++i) scaled.push_back(c * f[i].value());
    const Mask x = mu.space().full();
    EXPECT_DOUBLE_EQ(shilkret_integral(Fn(scaled, kUnit), mu, x).value(), c * shilkret_integral(f, mu, x).value());
  }
}

TEST(Properties, SugenoIsComonotoneMaxitiveAndMinitive) {
  Rng rng(103);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const auto [f, g] = testgen::comonotone_pair(rng, n, kUnit);
    const Mask x = mu.space().full();
    const double sf = sugeno_integral(f, mu, x).value(), sg = sugeno_integral(g, mu, x).value();
    EXPECT_EQ(sugeno_integral(pointwise(f, g, hi), mu, x).value(), std::max(sf, sg));
    EXPECT_EQ(sugeno_integral(pointwise(f, g, lo), mu, x).value(), std::min(sf, sg));
  }
}

TEST(Properties, UpperIntegralIsMonotoneInTheIntegrand) {
  Rng rng(104);
  const std::vector<BinaryOp> ops_list{ops::minimum(), ops::product(), ops::lukasiewicz_tnorm(), ops::marshall_olkin(0.5, 0.5)};
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const Fn f = testgen::unit_fn(rng, n);
    const Fn g = pointwise(f, testgen::unit_fn(rng, n), hi);
    for (const auto& op : ops_list) EXPECT_LE(upper_integral(f, mu, op).value(), upper_integral(g, mu, op).value()) << op.name();
  }
}

TEST(Properties, ConstantIntegrandUnderMin) {
  Rng rng(105);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = testgen::unit_measure(rng, n);
    const double c = rng.grid_value(1.0, 1.0 / 16.0);
    EXPECT_EQ(upper_integral(Fn(std::vector<double>(n, c), kUnit), mu, ops::minimum()).value(), std::min(c, mu.total().value()));
  }
}

TEST(Properties, GeneratedMeasuresAreMonotone) {
  Rng rng(106);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const auto mu = generate_measure(rng, testgen::any_family(rng), n);
    EXPECT_TRUE(check_measure_property(mu, MeasureProperty::monotone).holds());
    const auto inf = with_infinite_total(mu);
    EXPECT_TRUE(inf.total().is_inf());
    for (Mask a = 0; a + 1 < (Mask{1} << n); ++a) {
      EXPECT_EQ(inf(a).value(), mu(a).value());
    }
    if (mu.total().value() > 0.0) {
      EXPECT_DOUBLE_EQ(normalized(mu).total().value(), 1.0);
    }
  }
}

TEST(Properties, DistancesAreSymmetricAndVanishOnTheDiagonal) {
  Rng rng(107);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    const auto f = testgen::grid_values(rng, n, 2.0), g = testgen::grid_values(rng, n, 2.0);
    for (const auto& spec : {MetricSpec::frechet(), MetricSpec::kyfan(), MetricSpec::d_op_p(ops::product(ValueScale::extended_half_line()), 1.0)}) {
      EXPECT_EQ(metric_eval(spec, f, f, mu).value(), 0.0) << spec.describe();
      EXPECT_EQ(metric_eval(spec, f, g, mu).value(), metric_eval(spec, g, f, mu).value()) << spec.describe();
      EXPECT_GE(metric_eval(spec, f, g, mu).value(), 0.0);
    }
  }
}

TEST(Properties, ComonotonicityIsSymmetric) {
  Rng rng(108);
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = testgen::size_between(rng, 2, 8);
    const Fn f = testgen::unit_fn(rng, n), g = testgen::unit_fn(rng, n);
    EXPECT_EQ(is_comonotone(f, g).holds, is_comonotone(g, f).holds);
    EXPECT_TRUE(is_comonotone(f, f).holds);
  }
}

TEST(Properties, ConditionWitnessesReplayAsExplicitTuples) {
  Rng rng(109);
  const std::vector<BinaryOp> catalog{ops::minimum(), ops::product(), ops::lukasiewicz_tnorm(), ops::maximum(), ops::probabilistic_sum()};
  const auto arity = static_cast<std::size_t>(detail::arity(ConditionId::daraby));
  int violated = 0;
  for (int k = 0; k < 60; ++k) {
    ConditionBinding bind;
    bind.star = catalog[rng.below(catalog.size())];
    bind.op = catalog[rng.below(catalog.size())];
    const auto r = check_condition(ConditionId::daraby, bind, ConditionDomain::grid(kUnit, 0.25));
    if (r.verdict != Verdict::violated) continue;
    ++violated;
    ASSERT_TRUE(r.witness);
    const std::vector<double> tuple(r.witness->values.begin(), r.witness->values.begin() + static_cast<std::ptrdiff_t>(arity));
    const auto again = check_condition(ConditionId::daraby, bind, ConditionDomain::explicit_tuples({tuple}));
    EXPECT_EQ(again.verdict, Verdict::violated);
    EXPECT_EQ(again.margin, r.margin);
  }
  EXPECT_GT(violated, 0);
}

TEST(Properties, ScenarioIntegralsMatchDirectEvaluation) {
  namespace sc = nonadditive::scenario;
  Rng rng(110);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = testgen::size_between(rng, 1, 6);
    auto density = testgen::grid_values(rng, n);
    density[rng.below(n)] = 1.0;
    const auto f = testgen::grid_values(rng, n);
    const sc::json d{{"version", 1},
                     {"measures", {{"m", {{"type", "possibility"}, {"density", density}}}}},
                     {"functions", {{"f", f}}},
                     {"operators", {{"p", "product"}}},
                     {"tasks",
                      {{{"kind", "integral"}, {"integral", "sugeno"}, {"measure", "m"}, {"f", "f"}},
                       {{"kind", "integral"}, {"integral", "upper"}, {"measure", "m"}, {"f", "f"}, {"op", "p"}}}}};
    const auto rep = sc::run(sc::load(d, "prop"));
    const auto mu = MonotoneMeasure::possibility(density);
    const Fn fn(f, kUnit);
    EXPECT_EQ(rep.tasks[0].values["value"].get<double>(), sugeno_integral(fn, mu, mu.space().full()).value());
    EXPECT_EQ(rep.tasks[1].values["value"].get<double>(), upper_integral(fn, mu, ops::product()).value());
  }
}
