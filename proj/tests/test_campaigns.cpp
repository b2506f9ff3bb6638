#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "nonadditive/campaigns.hpp"

using namespace nonadditive;

TEST(ParallelMap, KeepsIndexOrder) {
  for (std::size_t jobs : {1u, 3u, 8u}) {
    const auto out = parallel_map(50, jobs, [](std::size_t i) { return i * i; });
    ASSERT_EQ(out.size(), 50u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
}

TEST(ParallelMap, RethrowsWorkerException) {
  EXPECT_THROW(parallel_map(20, 4,
                            [](std::size_t i) {
                              if (i == 13) throw std::runtime_error("boom");
                              return i;
                            }),
               std::runtime_error);
}

TEST(Registry, IdsAreUniqueAndFindable) {
  std::set<std::string> ids;
  for (const auto& e : theorem_registry()) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_FALSE(e.summary.empty());
    EXPECT_EQ(find_theorem(e.id).id, e.id);
  }
  EXPECT_GE(ids.size(), 18u);
  EXPECT_THROW(find_theorem("no_such_theorem"), UnknownTheorem);
}

TEST(Registry, EveryCampaignHoldsOnASmallRun) {
  for (const auto& e : theorem_registry()) {
    FuzzOptions opt;
    opt.trials = 30;
    opt.seed = 17;
    const auto rep = fuzz(e.id, opt);
    EXPECT_TRUE(rep.passed()) << e.id << ": " << (rep.failure ? rep.failure->note : "cap exhausted");
    EXPECT_EQ(rep.holds + rep.violated, opt.trials - rep.cap_exhausted) << e.id;
    EXPECT_EQ(rep.exit_code(), 0);
  }
}

TEST(Fuzz, DeterministicAcrossJobCounts) {
  for (const char* id : {"ctw7", "dol_colh2", "metric_triangle"}) {
    FuzzOptions a;
    a.trials = 40;
    a.seed = 99;
    FuzzOptions b = a;
    b.jobs = 4;
    const auto ra = fuzz(id, a), rb = fuzz(id, b);
    EXPECT_EQ(ra.holds, rb.holds) << id;
    EXPECT_EQ(ra.resamples, rb.resamples) << id;
    EXPECT_EQ(ra.worst_violation, rb.worst_violation) << id;
  }
}

TEST(Fuzz, FirstOffsetReplaysTheSameTrial) {
  const auto& trial = find_theorem("ctw7").trial;
  for (std::size_t i : {0u, 7u, 31u}) {
    const auto whole = run_trial(trial, 5, i, 64);
    FuzzOptions one;
    one.trials = 1;
    one.seed = 5;
    one.first = i;
    const auto again = run_trial(trial, one.seed, one.first, one.resample_cap);
    EXPECT_EQ(whole.result.note, again.result.note);
    EXPECT_EQ(whole.result.margin, again.result.margin);
  }
}

TEST(Fuzz, CapExhaustionIsReportedAsInputFailure) {
  std::atomic<int> calls{0};
  const TrialFn never = [&](Rng&, std::size_t) {
    ++calls;
    return CheckResult::hypothesis_failed("never satisfied");
  };
  const auto out = run_trial(never, 1, 0, 3);
  EXPECT_TRUE(out.cap_exhausted);
  EXPECT_EQ(calls.load(), 4);

  FuzzOptions opt;
  opt.trials = 20;
  opt.resample_cap = 0;
  const auto rep = fuzz("dol_colh2", opt);
  EXPECT_GT(rep.cap_exhausted, 0u);
  EXPECT_EQ(rep.exit_code(), 2);
}

TEST(Generators, ComonotonePairsAreComonotone) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = gen::size_between(rng, 1, 8);
    const auto [f, g] = gen::comonotone_pair(rng, n, ValueScale::unit());
    EXPECT_TRUE(is_comonotone(f, g).holds);
  }
}

TEST(Generators, ReciprocalDualHasInfiniteTotal) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto mu = gen::reciprocal_dual(rng, gen::size_between(rng, 1, 6));
    EXPECT_TRUE(mu.total().is_inf());
    EXPECT_TRUE(check_measure_property(mu, MeasureProperty::monotone).holds());
  }
}

TEST(Generators, SubadditiveMeasuresAreSubadditive) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto mu = gen::subadditive_measure(rng, gen::size_between(rng, 1, 6));
    EXPECT_TRUE(check_measure_property(mu, MeasureProperty::subadditive).holds());
  }
}

TEST(Generators, Ctw7AssociatedCoversEveryExample) {
  Rng rng(6);
  std::set<std::string> labels;
  for (int i = 0; i < 300; ++i) {
    const auto label = gen::ctw7_associated(rng).label;
    labels.insert(label.substr(0, label.find(' ')));
  }
  EXPECT_EQ(labels, (std::set<std::string>{"ex1", "ex2", "ex3", "ex4", "ex5"}));
}
