// The ten acceptance criteria, each with its runtime budget.
#ifndef NONADDITIVE_ACCEPTANCE_HPP
#define NONADDITIVE_ACCEPTANCE_HPP

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nonadditive/builtins.hpp"

namespace nonadditive::acceptance {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

struct CriterionResult {
  int number;
  std::string title;
  bool passed;
  double seconds;
  double budget_seconds;
  std::string detail;
};

namespace detail {

/// Collects failures; the first few are kept for the report.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    if (failures_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary;
    if (failures_) s << "; " << failures_ << " failures, e.g. " << first_;
    return {failures_ == 0, s.str()};
  }
  std::size_t failures() const { return failures_; }

 private:
  std::size_t checked_ = 0, failures_ = 0;
  std::string first_;
};

inline std::string at(std::size_t i, const std::string& what) { return "#" + std::to_string(i) + " " + what; }

/// Runs `count` trials of a registered campaign at the given indices; every result must hold.
inline void campaign(Tally& t, const std::string& id, std::uint64_t seed, std::size_t count, std::size_t first = 0, std::size_t stride = 1) {
  const auto& trial = find_theorem(id).trial;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = first + k * stride;
    const auto out = run_trial(trial, seed, i, 64);
    t.require(!out.cap_exhausted && out.result.holds(), at(i, id + " " + to_string(out.result.verdict) + " " + out.result.note));
  }
}

inline bool builtin_passes(const std::string& name) {
  const auto s = scenario::load(builtins::document(name), name);
  return scenario::run(s).exit_code() == 0;
}

inline Outcome counterexample() {
  Tally t;
  const auto c = reproduce_counterexample();
  t.require(c.rhs_each == 1.0 / 16.0 && c.lhs == 0.25 && c.rhs_sum == 0.125, "analytic values differ from 1/16, 1/4, 1/8");
  t.require(std::fabs(c.grid_rhs_each.value - 0.0625) <= 1e-3 && std::fabs(c.grid_lhs.value - 0.25) <= 1e-3 &&
                std::fabs(c.grid_rhs_sum - 0.125) <= 1e-3,
            "profile-grid values off by more than 1e-3");
  t.require(c.violated && c.lhs > c.rhs_sum, "0.25 > 0.125 not asserted");
  t.require(c.claimed_condition.holds(), "daraby does not hold");
  return t.outcome("lhs " + format_number(c.lhs) + " > " + format_number(c.rhs_sum) + ", daraby " + to_string(c.claimed_condition.verdict));
}

inline Outcome subShi() {
  Tally t;
  std::size_t strict = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng = Rng::derive(4004, i);
    const bool poss = i < 500;
    const auto mu = generate_measure(rng, poss ? MeasureFamily::possibility : MeasureFamily::non_maxitive, gen::size_between(rng, 2, 6));
    const auto rep = verify_subShi(mu, rng.next());
    t.require(rep.consistent, at(i, "inconsistent with the maxitivity checker"));
    if (poss) {
      t.require(rep.property && rep.forward_clean && !rep.backward_violated, at(i, "possibility measure violates Shilkret subadditivity"));
    } else {
      const bool ok = !rep.property && rep.backward_violated && rep.backward_margin > 1e-9;
      strict += ok;
      t.require(ok, at(i, "no strict backward witness"));
    }
  }
  return t.outcome("500 possibility clean, " + std::to_string(strict) + "/500 non-maxitive strict witnesses");
}

inline Outcome dol_twsub() {
  Tally t;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng = Rng::derive(5005, i);
    const std::size_t n = gen::size_between(rng, 2, 6);
    if (i < 500) {
      const auto rep = verify_dol_twsub(gen::subadditive_measure(rng, n), rng.next());
      t.require(rep.property && rep.forward_clean && rep.consistent, at(i, "forward direction fails on a subadditive measure"));
    } else {
      const auto mu = generate_measure(rng, gen::any_family(rng, n), n);
      const auto rep = verify_dol_twsub(mu, rng.next());
      const bool sub = check_measure_property(mu, MeasureProperty::subadditive).holds();
      t.require(rep.consistent && rep.backward_violated == !sub, at(i, "backward direction does not recover subadditivity"));
    }
  }
  const auto probe = dol_twsub_boundary(with_infinite_total(MonotoneMeasure::possibility({0.3, 0.5})));
  t.require(probe.violated, "mu(X) = inf boundary does not violate");
  return t.outcome("500 forward, 500 backward, boundary " + std::string(probe.violated ? "violates" : "holds"));
}

inline Outcome metric_triangle() {
  Tally t;
  const auto specs = gen::triangle_specs();
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng = Rng::derive(6006, i);
    const auto& spec = specs[i % specs.size()];
    const auto mu = gen::subadditive_measure(rng, gen::size_between(rng, 2, 6));
    const auto r = check_metric_axioms(spec, mu, 1, rng.next());
    t.require(r.holds() || (r.verdict == Verdict::violated && r.margin <= 1e-12), at(i, spec.describe() + " " + r.note));
  }
  for (const auto& spec : {MetricSpec::frechet(), MetricSpec::kyfan(), specs.front()}) {
    for (std::size_t k = 0; k < 20; ++k) {
      Rng rng = Rng::derive(6106, k);
      const auto mu = gen::subadditive_measure(rng, gen::size_between(rng, 2, 6));
      const auto r = check_metric_axioms(spec, mu, 30, rng.next());
      t.require(r.holds(), at(k, spec.describe() + " axioms " + r.note));
    }
  }
  return t.outcome("1000 triples over " + std::to_string(specs.size()) + " d_op_p specs; axioms for frechet, kyfan, d_op_p");
}

inline Outcome ctw7() {
  Tally t;
  campaign(t, "ctw7", 7007, 1000);
  campaign(t, "ctw7_necessity", 7107, 200);
  return t.outcome("1000 associated pairs, 200 necessity exhibits");
}

inline Outcome duality() {
  Tally t;
  campaign(t, "dol13", 9009, 1000, 0, 2);
  campaign(t, "dol13", 9009, 200, 1, 2);
  t.require(builtin_passes("harmonic"), "harmonic builtin fails");
  t.require(builtin_passes("reciprocal_sugeno"), "reciprocal_sugeno builtin fails");
  return t.outcome("1000 with 1 - x, 200 with 1/x, harmonic and reciprocal Sugeno builtins");
}

inline Outcome star_comonotone() {
  Tally t;
  const auto& trial = find_theorem("star_comonotone").trial;
  for (std::size_t i = 0; i < 2000; ++i) {
    const auto out = run_trial(trial, 8008, i, 64);
    t.require(out.result.holds() && out.result.mode == CheckMode::exhaustive, at(i, std::string(to_string(out.result.mode)) + " " + out.result.note));
  }
  return t.outcome("2000 pairs, exhaustive");
}

inline Outcome convergence() {
  Tally t;
  campaign(t, "convergence", 1010, 200);
  campaign(t, "doltw3", 1110, 100);
  campaign(t, "cauchy", 1210, 100);
  return t.outcome("200 lemma sequences, 100 doltw3 sequences, 100 Cauchy campaigns");
}

}  // namespace detail

inline std::vector<Criterion> criteria() {
  using namespace detail;
  auto fuzzed = [](std::string id, std::uint64_t seed, std::size_t n, std::string what) {
    return [=] {
      Tally t;
      campaign(t, id, seed, n);
      return t.outcome(what);
    };
  };
  return {
      {1, "counterexample reproduction", 1.0, counterexample},
      {2, "subset-form oracle", 10.0, fuzzed("subset_oracle", 2002, 1000, "1000 instances, five operators")},
      {3, "lower(max) equals Sugeno", 5.0, fuzzed("cd16", 3003, 1000, "1000 instances")},
      {4, "maxitive iff Shilkret subadditive", 20.0, subShi},
      {5, "subadditive iff Sugeno subadditive", 10.0, dol_twsub},
      {6, "metric triangle and axioms", 15.0, metric_triangle},
      {7, "Minkowski-Hoelder fuzz and necessity", 30.0, ctw7},
      {8, "+-association equals comonotonicity", 10.0, star_comonotone},
      {9, "duality", 10.0, duality},
      {10, "convergence", 10.0, convergence},
  };
}

inline CriterionResult evaluate(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= c.budget_seconds;
  if (!in_time) o.detail += "; over the " + std::to_string(c.budget_seconds) + " s budget";
  return {c.number, c.title, o.passed && in_time, secs, c.budget_seconds, o.detail};
}

}  // namespace nonadditive::acceptance

#endif
