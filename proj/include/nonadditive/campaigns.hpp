// Seeded fuzz campaigns over the theorem verifiers.
#ifndef NONADDITIVE_CAMPAIGNS_HPP
#define NONADDITIVE_CAMPAIGNS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "nonadditive/metrics.hpp"
#include "nonadditive/theorems.hpp"

namespace nonadditive {

/// Evaluates fn(0..count-1) on up to `jobs` threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < count;) slots[i].emplace(fn(i));
        } catch (...) {
          errors[w] = std::current_exception();
          next = count;
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

namespace gen {

inline std::size_t size_between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng.below(hi - lo + 1)); }

inline std::vector<double> grid_values(Rng& rng, std::size_t n, double hi = 1.0, double step = 1.0 / 16.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.grid_value(hi, step);
  return v;
}

inline Fn unit_fn(Rng& rng, std::size_t n) { return Fn(grid_values(rng, n), ValueScale::unit()); }

inline Fn extended_fn(Rng& rng, std::size_t n, double hi = 4.0) {
  return Fn(grid_values(rng, n, hi, 0.125), ValueScale::extended_half_line());
}

inline std::vector<double> signed_values(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.grid_value(4.0, 0.125) - 2.0;
  return v;
}

inline std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

/// Both functions sorted along one random ordering of the points.
inline std::pair<Fn, Fn> comonotone_pair(Rng& rng, std::size_t n, ValueScale scale, double hi = 1.0) {
  const double step = hi > 1.0 ? 0.125 : 1.0 / 16.0;
  auto a = grid_values(rng, n, hi, step), b = grid_values(rng, n, hi, step);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto perm = permutation(rng, n);
  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[perm[i]] = a[i];
    g[perm[i]] = b[i];
  }
  return {Fn(f, scale), Fn(g, scale)};
}

inline MeasureFamily any_family(Rng& rng, std::size_t n) {
  static const MeasureFamily all[] = {MeasureFamily::monotonized_random, MeasureFamily::possibility, MeasureFamily::distortion_concave,
                                      MeasureFamily::distortion_convex, MeasureFamily::lambda_sugeno, MeasureFamily::non_maxitive};
  return all[rng.below(n >= 2 ? 6 : 5)];
}

/// Any family, normalized to mu(X) = 1; the zero measure is redrawn.
inline MonotoneMeasure unit_measure(Rng& rng, std::size_t n) {
  while (true) {
    auto mu = generate_measure(rng, any_family(rng, n), n);
    if (mu.total().value() > 0.0) return normalized(mu);
  }
}

inline MonotoneMeasure subadditive_measure(Rng& rng, std::size_t n) {
  return generate_measure(rng, rng.coin(0.5) ? MeasureFamily::possibility : MeasureFamily::distortion_concave, n);
}

inline bool has_interior_value(const MonotoneMeasure& mu) {
  for (double c : measure_values(mu, mu.space().full()))
    if (c > 0.0 && c < 1.0) return true;
  return false;
}

/// mu(A) = 1 / nu(X \ A) with nu a possibility measure raised to nu(X) = inf, so mu_h = nu under h(x) = 1/x.
inline MonotoneMeasure reciprocal_dual(Rng& rng, std::size_t n) {
  const auto nu = with_infinite_total(generate_measure(rng, MeasureFamily::possibility, n));
  const Mask full = nu.space().full();
  std::vector<XReal> table(std::size_t{1} << n);
  for (Mask a = 0; a <= full; ++a) {
    const double v = nu(full & ~a).value();
    table[a] = v == 0.0 ? kInf : XReal(1.0 / v);
  }
  return MonotoneMeasure::explicit_table(std::move(table));
}

inline Mask random_nonempty(Rng& rng, std::size_t n) { return static_cast<Mask>(1 + rng.below((std::uint64_t{1} << n) - 1)); }

inline std::array<PhiMap, 3> powers(double p1, double p2, double p3) {
  const auto u = ValueScale::unit();
  return {PhiMap::power(p1, u), PhiMap::power(p2, u), PhiMap::power(p3, u)};
}

inline std::array<PhiMap, 3> identities(ValueScale scale) { return {PhiMap::identity(scale), PhiMap::identity(scale), PhiMap::identity(scale)}; }

inline BinaryOp semicopula(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return ops::minimum();
    case 1: return ops::product();
    default: return ops::lukasiewicz_tnorm();
  }
}

struct LabeledCtw7 {
  Ctw7Instance instance;
  std::string label;
};

/// min star, min combiner, any semicopula for all three circ slots.
inline LabeledCtw7 ctw7_min_config(const Fn& f, const Fn& g, const MonotoneMeasure& mu, Rng& rng, const std::string& label) {
  const auto s = semicopula(rng);
  return {{f, g, mu, f.space().full(), ops::minimum(), ops::minimum(), {s, s, s}, identities(ValueScale::unit())}, label + " min/" + s.name()};
}

/// product star and combiner with product circ and powers satisfying 1/p1 >= 1/p2 + 1/p3.
inline LabeledCtw7 ctw7_product_config(const Fn& f, const Fn& g, const MonotoneMeasure& mu, Rng& rng, const std::string& label) {
  static const std::array<std::array<double, 3>, 3> exps{{{1.0, 2.0, 2.0}, {0.5, 2.0, 2.0}, {0.5, 1.0, 1.0}}};
  const auto& e = exps[rng.below(exps.size())];
  const auto p = ops::product();
  return {{f, g, mu, f.space().full(), p, p, {p, p, p}, powers(e[0], e[1], e[2])},
          label + " product/powers(" + to_string(XReal(e[0])) + "," + to_string(XReal(e[1])) + "," + to_string(XReal(e[2])) + ")"};
}

/**
 * A star-associated pair with operators under which c52 holds, drawn from five
 * constructions: (1) any pair with star = min; (2) a comonotone pair; (3) g a
 * scaled indicator; (4) f, g sharing a block B and differing on disjoint C, D;
 * (5) a comonotone pair on [0, inf] with star = +.
 */
inline LabeledCtw7 ctw7_associated(Rng& rng) {
  const auto unit = ValueScale::unit();
  const std::size_t kind = rng.below(5);
  const std::size_t n = size_between(rng, kind == 3 ? 3 : 2, 6);
  const auto mu = unit_measure(rng, n);
  switch (kind) {
    case 0: return ctw7_min_config(unit_fn(rng, n), unit_fn(rng, n), mu, rng, "ex1");
    case 1: {
      auto [f, g] = comonotone_pair(rng, n, unit);
      const Mask x = f.space().full();
      switch (rng.below(4)) {
        case 0: {
          const double p1 = rng.coin(0.5) ? 0.5 : 1.0;
          const double p2 = rng.coin(0.5) ? 1.0 : 2.0, p3 = rng.coin(0.5) ? 1.0 : 2.0;
          const auto s = ops::probabilistic_sum(), p = ops::product();
          return {{f, g, mu, x, s, s, {p, p, p}, powers(p1, p2, p3)}, "ex2 probabilistic_sum/powers"};
        }
        case 1: {
          const double ps[] = {0.5, 1.0, 2.0};
          const double p = ps[rng.below(3)];
          const auto s = semicopula(rng), m = ops::maximum();
          return {{f, g, mu, x, m, m, {s, s, s}, powers(p, p, p)}, "ex2 max/" + s.name()};
        }
        case 2: return ctw7_product_config(f, g, mu, rng, "ex2");
        default: return ctw7_min_config(f, g, mu, rng, "ex2");
      }
    }
    case 2: {
      const Mask b = random_nonempty(rng, n);
      const double h = 1.0 / 16.0 * static_cast<double>(1 + rng.below(16));
      const Fn f = unit_fn(rng, n), g = indicator(n, b, h, unit);
      return rng.coin(0.5) ? ctw7_min_config(f, g, mu, rng, "ex3") : ctw7_product_config(f, g, mu, rng, "ex3");
    }
    case 3: {
      // Points split into B, C and a nonempty remainder D.
      const auto perm = permutation(rng, n);
      const std::size_t nb = rng.below(n - 1), nc = 1 + rng.below(n - 1 - nb);
      const double b = 1.0 / 16.0 * static_cast<double>(1 + rng.below(16));
      const double c = 1.0 / 16.0 * static_cast<double>(1 + rng.below(16));
      std::vector<double> fv(n, 0.0), gv(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (i < nb) fv[perm[i]] = gv[perm[i]] = b;
        else if (i < nb + nc) fv[perm[i]] = c;
        else gv[perm[i]] = c;
      }
      const Fn f(fv, unit), g(gv, unit);
      return rng.coin(0.5) ? ctw7_min_config(f, g, mu, rng, "ex4") : ctw7_product_config(f, g, mu, rng, "ex4");
    }
    default: {
      const auto y = ValueScale::extended_half_line();
      auto [f, g] = comonotone_pair(rng, n, y, 4.0);
      const auto plus = ops::sum(y), p = ops::product(y);
      return {{f, g, mu, f.space().full(), plus, plus, {p, p, p}, identities(y)}, "ex5 sum/product"};
    }
  }
}

/// probabilistic sum, product circ, powers with p1 > p2, p3: the condition fails at (1, 0, c).
inline Ctw7Instance ctw7_c54_violating(Rng& rng, const MonotoneMeasure& mu) {
  const std::size_t n = mu.size();
  const double p1s[] = {1.5, 2.0, 3.0};
  const double p1 = p1s[rng.below(3)];
  const double p2 = rng.coin(0.5) ? 0.5 : 1.0, p3 = rng.coin(0.5) ? 0.5 : 1.0;
  const auto s = ops::probabilistic_sum(), p = ops::product();
  return {unit_fn(rng, n), unit_fn(rng, n), mu, mu.space().full(), s, s, {p, p, p}, powers(p1, p2, p3)};
}

struct MetricCase {
  MetricSpec spec;
  std::string label;
};

/// d_op_p for x^p ^ y and x^p y at p in {0.5, 1, 2}.
inline std::vector<MetricSpec> triangle_specs() {
  const auto y = ValueScale::extended_half_line();
  std::vector<MetricSpec> out;
  for (double p : {0.5, 1.0, 2.0}) {
    out.push_back(MetricSpec::d_op_p(ops::power_min(p, 1.0, y), p));
    out.push_back(MetricSpec::d_op_p(ops::power_product(p, 1.0, y), p));
  }
  return out;
}

/// up rises to v, down falls to v; both end at v.
inline std::pair<std::vector<Fn>, std::vector<Fn>> monotone_sequences(const std::vector<double>& v, std::size_t terms) {
  const auto y = ValueScale::extended_half_line();
  std::vector<Fn> up, down;
  for (std::size_t j = 0; j < terms; ++j) {
    const double e = j + 1 < terms ? std::ldexp(1.0, -static_cast<int>(j) - 1) : 0.0;
    std::vector<double> lo(v.size()), hi(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      lo[k] = v[k] * (1.0 - e);
      hi[k] = v[k] * (1.0 + e);
    }
    up.emplace_back(lo, y);
    down.emplace_back(hi, y);
  }
  return {up, down};
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Fuzz driver
// ---------------------------------------------------------------------------

/// One trial: returns hypothesis_failed to ask for a fresh draw from the same stream.
using TrialFn = std::function<CheckResult(Rng&, std::size_t index)>;

struct TheoremEntry {
  std::string id;
  std::string summary;
  TrialFn trial;
};

struct TrialOutcome {
  CheckResult result;
  std::size_t resamples = 0;
  bool cap_exhausted = false;
};

struct FuzzOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// Trial i draws from Rng::derive(seed, first + i).
  std::size_t first = 0;
  /// Violations with margin at or below this count as holding.
  double tolerance = 0.0;
  std::size_t jobs = 1;
  std::size_t resample_cap = 64;
};

struct FuzzReport {
  std::string theorem;
  FuzzOptions options;
  std::size_t holds = 0;
  std::size_t violated = 0;
  std::size_t within_tolerance = 0;
  std::size_t cap_exhausted = 0;
  std::size_t resamples = 0;
  double worst_violation = 0.0;
  /// Trial index, comparable with FuzzOptions::first.
  std::optional<std::size_t> first_failure;
  std::optional<CheckResult> failure;
  double seconds = 0.0;

  bool passed() const { return violated == 0 && cap_exhausted == 0; }
  int exit_code() const { return cap_exhausted ? 2 : violated ? 1 : 0; }
};

class UnknownTheorem : public std::invalid_argument {
 public:
  explicit UnknownTheorem(const std::string& id) : std::invalid_argument("unknown theorem id '" + id + "'") {}
};

namespace detail {

inline CheckResult agreement(double a, double b, double tol, Witness w) {
  CheckResult r;
  r.evaluated = 1;
  const double diff = std::fabs(a - b);
  const bool same = a == b || diff <= tol;
  if (!same) {
    r.verdict = Verdict::violated;
    r.margin = std::isnan(diff) ? kInf : diff;
    r.witness = std::move(w);
  }
  return r;
}

inline CheckResult from_equivalence(const EquivalenceReport& rep) { return rep.result; }

inline CheckResult subset_oracle_trial(Rng& rng) {
  static const std::vector<BinaryOp> catalog{ops::minimum(), ops::product(), ops::lukasiewicz_tnorm(), ops::bounded_sum(),
                                             ops::marshall_olkin(0.5, 0.5)};
  const std::size_t n = gen::size_between(rng, 1, 10);
  const auto mu = gen::unit_measure(rng, n);
  const Fn f = gen::unit_fn(rng, n);
  const Mask d = static_cast<Mask>(rng.below(std::uint64_t{1} << n));
  CheckResult r;
  for (const auto& op : catalog) {
    const double a = upper_integral(f, mu, op, d).value(), b = upper_integral_subset_oracle(f, mu, op, d).value();
    auto one = agreement(a, b, 1e-12, Witness{{d}, {a, b}, "level form and subset form differ for " + op.name()});
    r.evaluated += 1;
    if (!one.holds()) {
      one.evaluated = r.evaluated;
      return one;
    }
  }
  return r;
}

inline CheckResult star_comonotone_trial(Rng& rng) {
  const auto y = ValueScale::extended_half_line();
  const std::size_t n = gen::size_between(rng, 1, 10);
  Fn f = gen::extended_fn(rng, n), g = gen::extended_fn(rng, n);
  if (rng.coin(0.5)) std::tie(f, g) = gen::comonotone_pair(rng, n, y, 4.0);
  const auto assoc = is_star_associated(f, g, ops::sum(y), f.space().full());
  const auto como = is_comonotone(f, g);
  CheckResult r;
  r.evaluated = assoc.evaluated;
  r.mode = assoc.mode;
  if (assoc.holds != como.holds) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i) vals.push_back(f[i].value());
    for (std::size_t i = 0; i < n; ++i) vals.push_back(g[i].value());
    r.verdict = Verdict::violated;
    r.margin = 1.0;
    r.witness = Witness{{}, vals, std::string("+-associated: ") + (assoc.holds ? "yes" : "no") + ", comonotone: " + (como.holds ? "yes" : "no")};
  }
  return r;
}

inline CheckResult ctw7_necessity_trial(Rng& rng) {
  const std::size_t n = gen::size_between(rng, 2, 5);
  const auto mu = gen::unit_measure(rng, n);
  if (!gen::has_interior_value(mu)) return CheckResult::hypothesis_failed("mu takes no value in (0, 1)");
  auto r = verify_ctw7(gen::ctw7_c54_violating(rng, mu), Direction::necessity);
  if (r.holds() && !r.exhibit) {
    r.verdict = Verdict::violated;
    r.margin = 1.0;
    r.note = "no condition-failure exhibit; " + r.note;
  }
  return r;
}

inline CheckResult convergence_trial(Rng& rng) {
  const std::size_t n = gen::size_between(rng, 2, 6);
  const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
  const auto v = gen::grid_values(rng, n);
  const auto [up, down] = gen::monotone_sequences(v, 5);
  const Fn limit(v, ValueScale::extended_half_line());
  const auto y = ValueScale::extended_half_line();
  const auto op = rng.coin(0.5) ? ops::minimum(y) : ops::product(y);
  auto r = check_convergence_lemmas(mu, up, limit, ConvergenceKind::monotone, op);
  if (!r.holds()) return r;
  return check_convergence_lemmas(mu, down, limit, ConvergenceKind::fatou, op);
}

inline std::vector<TheoremEntry> make_registry() {
  const auto y = ValueScale::extended_half_line();
  const auto unit = ValueScale::unit();
  std::vector<TheoremEntry> reg;
  reg.push_back({"ctw7", "Minkowski-Hoelder for the generalized upper integral, sufficiency on star-associated pairs",
                 [](Rng& rng, std::size_t) { return verify_ctw7(gen::ctw7_associated(rng).instance); }});
  reg.push_back({"ctw7_necessity", "c54 family with p1 > p2, p3: indicator pairs exhibit the failure",
                 [](Rng& rng, std::size_t) { return ctw7_necessity_trial(rng); }});
  reg.push_back({"seminormed", "seminormed Minkowski on comonotone pairs with star = max",
                 [unit](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = gen::unit_measure(rng, n);
                   auto [f, g] = gen::comonotone_pair(rng, n, unit);
                   const auto s = rng.coin(0.5) ? ops::minimum() : ops::product();
                   return verify_seminormed_minkowski({f, g, mu, f.space().full(), s, ops::maximum(), rng.coin(0.5) ? 1.0 : 2.0});
                 }});
  reg.push_back({"comonotone_subadditivity", "upper(f + g) <= upper f + upper g for comonotone f, g",
                 [unit](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = gen::unit_measure(rng, n);
                   auto [f, g] = gen::comonotone_pair(rng, n, unit, 0.5);
                   return verify_comonotone_subadditivity({f, g, mu, rng.coin(0.5) ? ops::minimum() : ops::product()});
                 }});
  reg.push_back({"tw_subad", "Minkowski inequality under subadditive measures",
                 [y](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = gen::subadditive_measure(rng, n);
                   const auto f = gen::signed_values(rng, n), g = gen::signed_values(rng, n);
                   switch (rng.below(3)) {
                     case 0: return verify_tw_subad({f, g, mu, ops::minimum(y), 1.0, 1.0, 1.0});
                     case 1: return verify_tw_subad({f, g, mu, ops::product(y), 2.0, 1.0, 1.0});
                     default: return verify_tw_subad({f, g, mu, ops::modified_shilkret(0.5, y), 2.0, 0.5, 1.0});
                   }
                 }});
  reg.push_back({"subShi", "maxitive <=> Shilkret subadditivity (even trials possibility, odd non_maxitive)",
                 [](Rng& rng, std::size_t i) {
                   const auto fam = i % 2 == 0 ? MeasureFamily::possibility : MeasureFamily::non_maxitive;
                   const auto mu = generate_measure(rng, fam, gen::size_between(rng, 2, 6));
                   return from_equivalence(verify_subShi(mu, rng.next()));
                 }});
  reg.push_back({"dol_twsub", "subadditive <=> Sugeno subadditivity (even trials subadditive, odd convex distortion)",
                 [](Rng& rng, std::size_t i) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = i % 2 == 0 ? gen::subadditive_measure(rng, n) : generate_measure(rng, MeasureFamily::distortion_convex, n);
                   return from_equivalence(verify_dol_twsub(mu, rng.next()));
                 }});
  reg.push_back({"cdtw1", "lower Sugeno subadditivity with star = boxplus = +, circ = max",
                 [y](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = generate_measure(rng, MeasureFamily::possibility, n);
                   const auto f = gen::extended_fn(rng, n), g = gen::extended_fn(rng, n);
                   const auto plus = ops::sum(y), mx = ops::maximum(y);
                   return verify_cdtw1({f, g, mu, f.space().full(), plus, plus, plus, {mx, mx, mx}});
                 }});
  reg.push_back({"dol_colh", "harmonic Minkowski via h(x) = 1/x on comonotone pairs",
                 [y](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = with_infinite_total(generate_measure(rng, MeasureFamily::monotonized_random, n));
                   auto [f, g] = gen::comonotone_pair(rng, n, y, 4.0);
                   return verify_duality_corollaries({f, g, mu, ops::sum(y), ops::sum(y), DualityMap::reciprocal(), std::nullopt},
                                                     DualityCorollary::colh);
                 }});
  reg.push_back({"dol_colh2", "reciprocal Sugeno inequality via h(x) = 1/x",
                 [y](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = gen::reciprocal_dual(rng, n);
                   const auto f = gen::extended_fn(rng, n), g = gen::extended_fn(rng, n);
                   return verify_duality_corollaries({f, g, mu, ops::sum(y), ops::minimum(y), DualityMap::reciprocal(), ops::sum(y)},
                                                     DualityCorollary::colh2);
                 }});
  reg.push_back({"dol13", "h-duality of upper and lower integrals (even trials 1 - x, odd 1/x with zeros)",
                 [y](Rng& rng, std::size_t i) {
                   if (i % 2 == 0) {
                     const std::size_t n = gen::size_between(rng, 1, 8);
                     const auto mu = gen::unit_measure(rng, n);
                     static const std::vector<BinaryOp> unit_ops{ops::minimum(), ops::product(), ops::maximum(), ops::lukasiewicz_tnorm()};
                     return check_duality_dol13(gen::unit_fn(rng, n), mu, unit_ops[rng.below(unit_ops.size())], DualityMap::one_minus());
                   }
                   const std::size_t n = gen::size_between(rng, 1, 6);
                   const auto mu = with_infinite_total(generate_measure(rng, MeasureFamily::monotonized_random, n));
                   auto v = gen::grid_values(rng, n, 4.0, 0.25);
                   v[rng.below(n)] = 0.0;
                   const std::vector<BinaryOp> ext_ops{ops::sum(y), ops::product(y), ops::minimum(y)};
                   return check_duality_dol13(Fn(v, y), mu, ext_ops[rng.below(ext_ops.size())], DualityMap::reciprocal());
                 }});
  reg.push_back({"cd16", "lower(max) equals the Sugeno integral",
                 [](Rng& rng, std::size_t) {
                   const std::size_t n = gen::size_between(rng, 1, 10);
                   const auto mu = gen::unit_measure(rng, n);
                   return check_cd16(gen::unit_fn(rng, n), mu, mu.space().full());
                 }});
  reg.push_back({"subset_oracle", "level evaluation agrees with the subset form over five operators",
                 [](Rng& rng, std::size_t) { return subset_oracle_trial(rng); }});
  reg.push_back({"star_comonotone", "+-association agrees with comonotonicity",
                 [](Rng& rng, std::size_t) { return star_comonotone_trial(rng); }});
  reg.push_back({"metric_triangle", "metric axioms for d_op_p, frechet and kyfan under subadditive measures",
                 [](Rng& rng, std::size_t i) {
                   auto specs = gen::triangle_specs();
                   specs.push_back(MetricSpec::frechet());
                   specs.push_back(MetricSpec::kyfan());
                   const auto mu = gen::subadditive_measure(rng, gen::size_between(rng, 2, 6));
                   return check_metric_axioms(specs[i % specs.size()], mu, 20, rng.next());
                 }});
  reg.push_back({"convergence", "monotone convergence and Fatou lemmas on rising and falling sequences",
                 [](Rng& rng, std::size_t) { return convergence_trial(rng); }});
  reg.push_back({"doltw3", "convergence of d_op_p means along decreasing-distance sequences",
                 [](Rng& rng, std::size_t i) {
                   const std::size_t n = gen::size_between(rng, 2, 6);
                   const auto mu = gen::subadditive_measure(rng, n);
                   const auto f = gen::signed_values(rng, n);
                   const auto seq = decreasing_sequence(f, 8, rng);
                   const auto specs = gen::triangle_specs();
                   return verify_doltw3(specs[i % specs.size()], mu, seq, f);
                 }});
  reg.push_back({"cauchy", "Cauchy bound chain for d_op_p",
                 [](Rng& rng, std::size_t i) {
                   const auto mu = gen::subadditive_measure(rng, gen::size_between(rng, 2, 6));
                   const auto specs = gen::triangle_specs();
                   return cauchy_probe(specs[i % specs.size()], mu, rng.next());
                 }});
  return reg;
}

}  // namespace detail

inline const std::vector<TheoremEntry>& theorem_registry() {
  static const std::vector<TheoremEntry> reg = detail::make_registry();
  return reg;
}

inline const TheoremEntry& find_theorem(const std::string& id) {
  for (const auto& e : theorem_registry())
    if (e.id == id) return e;
  throw UnknownTheorem(id);
}

/// Draws from Rng::derive(seed, index) until the verifier accepts the hypotheses or the cap is hit.
inline TrialOutcome run_trial(const TrialFn& trial, std::uint64_t seed, std::size_t index, std::size_t cap) {
  Rng rng = Rng::derive(seed, index);
  TrialOutcome out;
  while (true) {
    out.result = trial(rng, index);
    if (out.result.verdict != Verdict::hypothesis_failed) return out;
    if (out.resamples == cap) {
      out.cap_exhausted = true;
      return out;
    }
    ++out.resamples;
  }
}

inline FuzzReport fuzz(const std::string& theorem_id, const FuzzOptions& opt = {}) {
  const auto& entry = find_theorem(theorem_id);
  const auto start = std::chrono::steady_clock::now();
  const auto outcomes = parallel_map(opt.trials, opt.jobs, [&](std::size_t i) { return run_trial(entry.trial, opt.seed, opt.first + i, opt.resample_cap); });
  FuzzReport rep;
  rep.theorem = theorem_id;
  rep.options = opt;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    rep.resamples += o.resamples;
    bool failed = false;
    if (o.cap_exhausted) {
      ++rep.cap_exhausted;
      failed = true;
    } else if (o.result.verdict == Verdict::violated && !(o.result.margin <= opt.tolerance)) {
      ++rep.violated;
      rep.worst_violation = std::max(rep.worst_violation, o.result.margin);
      failed = true;
    } else {
      ++rep.holds;
      if (o.result.verdict == Verdict::violated) ++rep.within_tolerance;
    }
    if (failed && !rep.first_failure) {
      rep.first_failure = opt.first + i;
      rep.failure = o.result;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace nonadditive

#endif
