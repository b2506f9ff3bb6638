#include <gtest/gtest.h>

#include <cmath>

#include "nonadditive/metrics.hpp"
#include "support.hpp"

using namespace nonadditive;

namespace {

const ValueScale kExt = ValueScale::extended_half_line();

MonotoneMeasure subadditive_measure(Rng& rng, std::size_t n) {
  return rng.coin(0.5) ? generate_measure(rng, MeasureFamily::possibility, n) : generate_measure(rng, MeasureFamily::distortion_concave, n);
}

}  // namespace

TEST(Frechet, HandComputed) {
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.5, 0.25, 0.75});
  EXPECT_DOUBLE_EQ(frechet_distance({1.0, 0.0}, {0.0, 0.0}, mu), 0.5);
  EXPECT_DOUBLE_EQ(frechet_distance({0.25, 0.0}, {0.0, 0.0}, mu), 0.25);
  EXPECT_DOUBLE_EQ(frechet_distance({3.0, -3.0}, {0.0, 0.0}, mu), 0.75);
  EXPECT_EQ(frechet_distance({1.0, 2.0}, {1.0, 2.0}, mu), 0.0);
}

TEST(Frechet, GridApproximationFromAbove) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    RealVector f(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = rng.uniform(-2.0, 2.0);
      g[k] = rng.uniform(-2.0, 2.0);
    }
    const double exact = frechet_distance(f, g, mu);
    const double grid = frechet_grid(f, g, mu, 1e-3);
    EXPECT_LE(exact, grid + 1e-15);
    EXPECT_LE(grid, exact + 1e-3 + 1e-12);
  }
}

TEST(KyFan, ThreeFormsAgree) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = testgen::unit_measure(rng, n);
    RealVector f(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = rng.grid_value(2.0, 1.0 / 16.0) - 1.0;
      g[k] = rng.grid_value(2.0, 1.0 / 16.0) - 1.0;
    }
    const auto forms = kyfan_forms(f, g, mu);
    EXPECT_NEAR(forms.upper_min, forms.lower_max, 1e-12);
    EXPECT_NEAR(forms.upper_min, forms.threshold, 1e-12);
    EXPECT_DOUBLE_EQ(kyfan_distance(f, g, mu), forms.upper_min);
  }
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.5, 0.25, 0.75});
  EXPECT_DOUBLE_EQ(kyfan_distance({1.0, 0.0}, {0.0, 0.0}, mu), 0.5);
}

TEST(MetricGate, CatalogOperators) {
  for (double p : {0.5, 1.0, 2.0}) {
    EXPECT_FALSE(metric_gate(MetricSpec::d_op_p(ops::power_min(p, 1.0, kExt), p))) << p;
    EXPECT_FALSE(metric_gate(MetricSpec::d_op_p(ops::power_product(p, 1.0, kExt), p))) << p;
  }
  const auto square = metric_gate(MetricSpec::d_op_p(ops::power_min(1.0, 2.0, kExt), 1.0));
  ASSERT_TRUE(square);
  EXPECT_EQ(square->verdict, Verdict::hypothesis_failed);
  EXPECT_TRUE(metric_gate(MetricSpec::d_op_p(ops::minimum(), 1.0)));
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  EXPECT_THROW(metric_eval(MetricSpec::d_op_p(ops::power_min(1.0, 2.0, kExt), 1.0), {1.0, 0.0}, {0.0, 0.0}, mu), HypothesisError);
  EXPECT_EQ(metric_eval(MetricSpec::frechet(), {1.0, 0.0}, {0.0, 0.0}, mu), XReal(1.0));
}

TEST(DOpP, ValueOnIndicator) {
  // |f - g|^p = 2^p on {0}; upper_min = min(2^p, mu{0}); exponent 1/(p^2+1)
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.5, 0.25, 0.75});
  const double d = d_op_p_distance({2.0, 0.0}, {0.0, 0.0}, mu, ops::power_min(1.0, 1.0, kExt), 1.0);
  EXPECT_NEAR(d, std::sqrt(0.5), 1e-15);
}

TEST(MetricAxioms, SubadditiveMeasures) {
  Rng rng(60);
  std::vector<MetricSpec> specs{MetricSpec::frechet(), MetricSpec::kyfan()};
  for (double p : {0.5, 1.0, 2.0}) {
    specs.push_back(MetricSpec::d_op_p(ops::power_min(p, 1.0, kExt), p));
    specs.push_back(MetricSpec::d_op_p(ops::power_product(p, 1.0, kExt), p));
  }
  for (int i = 0; i < 6; ++i) {
    const auto mu = subadditive_measure(rng, testgen::size_between(rng, 2, 6));
    for (const auto& spec : specs) {
      const auto r = check_metric_axioms(spec, mu, 60, 100 + i);
      EXPECT_TRUE(r.holds()) << spec.describe() << " " << r.note;
    }
  }
}

TEST(MetricAxioms, NonSubadditiveMeasureBreaksTriangle) {
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0});
  const auto r = check_metric_axioms(MetricSpec::kyfan(), mu, 20, 1);
  EXPECT_EQ(r.verdict, Verdict::violated);
  ASSERT_TRUE(r.witness);
}

TEST(ShilkretNorm, MaxitiveMeasures) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto mu = generate_measure(seed, MeasureFamily::possibility, 2 + seed % 5);
    EXPECT_TRUE(check_shilkret_norm(mu, 50, seed).holds());
  }
  const auto mu = MonotoneMeasure::possibility({0.5, 1.0});
  EXPECT_DOUBLE_EQ(shilkret_norm({-2.0, 1.0}, mu).value(), 1.0);
  EXPECT_THROW(shilkret_norm({1.0, 1.0}, MonotoneMeasure::explicit_table({0.0, 0.2, 0.2, 1.0})), HypothesisError);
}

TEST(ConvergenceLemmas, MonotoneSequences) {
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
    auto v = testgen::grid_values(rng, n, 1.0, 1.0 / 16.0);
    // up: v (1 - 2^-(j+1)) rising to v; down: v (1 + 2^-(j+1)) falling to v
    std::vector<Fn> up, down;
    for (int j = 0; j < 5; ++j) {
      const double e = j < 4 ? std::ldexp(1.0, -j - 1) : 0.0;
      std::vector<double> lo(n), hi(n);
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = v[k] * (1.0 - e);
        hi[k] = v[k] * (1.0 + e);
      }
      up.emplace_back(lo, kExt);
      down.emplace_back(hi, kExt);
    }
    const Fn limit(v, kExt);
    for (const auto& op : {ops::minimum(kExt), ops::product(kExt)}) {
      EXPECT_TRUE(check_convergence_lemmas(mu, up, limit, ConvergenceKind::monotone, op).holds()) << op.name();
      EXPECT_TRUE(check_convergence_lemmas(mu, down, limit, ConvergenceKind::fatou, op).holds()) << op.name();
      EXPECT_EQ(check_convergence_lemmas(mu, down, limit, ConvergenceKind::monotone, op).verdict,
                std::count(v.begin(), v.end(), 0.0) == static_cast<long>(n) ? Verdict::holds : Verdict::hypothesis_failed);
    }
  }
}

TEST(ConvergenceLemmas, NullSetDisagreementAllowed) {
  // {0} is null and adjoining it changes nothing, so the limit may differ there.
  const auto mu = MonotoneMeasure::explicit_table({0.0, 0.0, 0.6, 0.6});
  const std::vector<Fn> seq{Fn(std::vector<double>{0.0, 0.25}, kExt), Fn(std::vector<double>{0.0, 0.5}, kExt)};
  const Fn limit(std::vector<double>{3.0, 0.5}, kExt);
  EXPECT_TRUE(check_convergence_lemmas(mu, seq, limit, ConvergenceKind::monotone, ops::minimum(kExt)).holds());
  // Disagreement on a set of positive measure is not a limit.
  const Fn off(std::vector<double>{0.0, 0.75}, kExt);
  EXPECT_EQ(check_convergence_lemmas(mu, seq, off, ConvergenceKind::monotone, ops::minimum(kExt)).verdict, Verdict::hypothesis_failed);
  // Null additivity is required.
  const auto not_na = MonotoneMeasure::explicit_table({0.0, 0.0, 0.3, 0.6});
  EXPECT_EQ(check_convergence_lemmas(not_na, seq, limit, ConvergenceKind::monotone, ops::minimum(kExt)).verdict,
            Verdict::hypothesis_failed);
}

TEST(Doltw3, MeansConverge) {
  Rng rng(44);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = testgen::size_between(rng, 2, 6);
    const auto mu = subadditive_measure(rng, n);
    RealVector f(n);
    for (auto& x : f) x = rng.grid_value(4.0, 0.125) - 2.0;
    const auto seq = decreasing_sequence(f, 8, rng);
    ASSERT_EQ(seq.back(), f);
    for (double p : {0.5, 1.0, 2.0}) {
      const auto r = verify_doltw3(MetricSpec::d_op_p(ops::power_min(p, 1.0, kExt), p), mu, seq, f);
      EXPECT_TRUE(r.holds()) << r.note;
    }
  }
  EXPECT_EQ(verify_doltw3(MetricSpec::kyfan(), MonotoneMeasure::possibility({1.0}), {{1.0}}, {1.0}).verdict, Verdict::hypothesis_failed);
}

TEST(Cauchy, ProbeChainHolds) {
  Rng rng(55);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto mu = subadditive_measure(rng, testgen::size_between(rng, 2, 6));
    for (double p : {0.5, 1.0, 2.0}) {
      const auto r = cauchy_probe(MetricSpec::d_op_p(ops::power_product(p, 1.0, kExt), p), mu, seed);
      EXPECT_TRUE(r.holds()) << r.note;
    }
  }
}

TEST(Cauchy, PremiseFailureIsReported) {
  const auto mu = MonotoneMeasure::possibility({1.0, 1.0});
  const auto spec = MetricSpec::d_op_p(ops::power_min(1.0, 1.0, kExt), 1.0);
  const std::vector<RealVector> seq{{0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}};
  EXPECT_EQ(cauchy_chain(spec, mu, seq).verdict, Verdict::hypothesis_failed);
}
