#ifndef NONADDITIVE_THEOREMS_HPP
#define NONADDITIVE_THEOREMS_HPP

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nonadditive/conditions.hpp"
#include "nonadditive/core.hpp"
#include "nonadditive/integrals.hpp"
#include "nonadditive/maps.hpp"
#include "nonadditive/measures.hpp"
#include "nonadditive/operators.hpp"
#include "nonadditive/relations.hpp"

namespace nonadditive {

enum class Direction { sufficiency, necessity, equivalence };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::sufficiency: return "sufficiency";
    case Direction::necessity: return "necessity";
    case Direction::equivalence: return "equivalence";
  }
  return "?";
}

inline Direction parse_direction(const std::string& s) {
  for (auto d : {Direction::sufficiency, Direction::necessity, Direction::equivalence})
    if (s == to_string(d)) return d;
  throw std::invalid_argument("unknown direction '" + s + "'");
}

namespace detail {

/// Pointwise f * g into `scale`.
inline Fn combine(const Fn& f, const Fn& g, const BinaryOp& star, ValueScale scale) {
  if (f.size() != g.size()) throw std::invalid_argument("combine: functions live on different spaces");
  std::vector<XReal> v;
  v.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v.emplace_back(star.raw(f[i].value(), g[i].value()));
  return Fn(std::move(v), scale);
}

inline Fn apply_phi(const Fn& f, const PhiMap& phi) {
  return map_values(f, [&](double x) { return phi.forward(x); }, phi.scale());
}

inline std::optional<CheckResult> phi_invalid(const std::array<PhiMap, 3>& phi) {
  for (int i = 0; i < 3; ++i) {
    auto v = phi[i].validate();
    if (!v.holds()) return CheckResult::hypothesis_failed("phi[" + std::to_string(i) + "] '" + phi[i].name() + "' is not an increasing bijection of Y", v.witness);
  }
  return std::nullopt;
}

inline std::optional<CheckResult> relation_failed(const RelationVerdict& v, const std::string& what) {
  if (v.holds) return std::nullopt;
  return CheckResult::hypothesis_failed(what, v.witness);
}

/// Memo for grid condition checks that depend only on operators and parameters.
inline CheckResult cached_condition(const std::string& key, const std::function<CheckResult()>& run) {
  static std::mutex mutex;
  static std::map<std::string, CheckResult> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  CheckResult r = run();
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(r)).first->second;
}

inline std::string key_of(const BinaryOp& op) { return op.name() + "@" + op.scale().describe(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Minkowski-Hoelder inequality for the upper integral
// ---------------------------------------------------------------------------

/**
 * Bindings for
 *   phi1^-1(upper_{o1}(phi1(f * g))) <= phi2^-1(upper_{o2}(phi2 f)) (.) phi3^-1(upper_{o3}(phi3 g))
 * on D, where (.) is `combiner`.
 */
struct Ctw7Instance {
  Fn f;
  Fn g;
  MonotoneMeasure mu;
  Mask domain;
  BinaryOp star;
  BinaryOp combiner;
  std::array<BinaryOp, 3> circ;
  std::array<PhiMap, 3> phi{PhiMap::identity(), PhiMap::identity(), PhiMap::identity()};
};

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the integral inequality for (f, g) under the instance's measure and operators.
inline Sides ctw7_sides(const Ctw7Instance& in, const Fn& f, const Fn& g) {
  const auto& phi = in.phi;
  const Fn fg = detail::combine(f, g, in.star, phi[0].scale());
  const double i1 = upper_integral(detail::apply_phi(fg, phi[0]), in.mu, in.circ[0], in.domain).value();
  const double i2 = upper_integral(detail::apply_phi(f, phi[1]), in.mu, in.circ[1], in.domain).value();
  const double i3 = upper_integral(detail::apply_phi(g, phi[2]), in.mu, in.circ[2], in.domain).value();
  return {phi[0].inverse(i1), in.combiner.raw(phi[1].inverse(i2), phi[2].inverse(i3))};
}

/// Both sides of the pointwise condition at (a, b, c).
inline Sides ctw7_sides(const Ctw7Instance& in) { return ctw7_sides(in, in.f, in.g); }

inline Sides c52_sides(const Ctw7Instance& in, double a, double b, double c) {
  const auto& phi = in.phi;
  const double l = phi[0].inverse(in.circ[0].raw(phi[0].forward(in.star.raw(a, b)), c));
  const double r = in.combiner.raw(phi[1].inverse(in.circ[1].raw(phi[1].forward(a), c)),
                                   phi[2].inverse(in.circ[2].raw(phi[2].forward(b), c)));
  return {l, r};
}

inline ConditionBinding c52_binding(const Ctw7Instance& in) {
  ConditionBinding b;
  b.star = in.star;
  b.combiner = in.combiner;
  b.circ = {in.circ[0], in.circ[1], in.circ[2]};
  b.phi = in.phi;
  return b;
}

/// (inf_A f, inf_A g, mu(A)) over nonempty A subset of D, deduplicated.
inline std::vector<std::vector<double>> realized_triples(const Fn& f, const Fn& g, const MonotoneMeasure& mu, Mask domain) {
  std::set<std::vector<double>> seen;
  for_each_submask(domain, [&](Mask a) {
    if (a == 0) return;
    seen.insert({f.inf_over(a), g.inf_over(a), mu(a).value()});
  });
  return {seen.begin(), seen.end()};
}

namespace detail {

inline std::optional<CheckResult> ctw7_hypotheses(const Ctw7Instance& in) {
  if (in.f.size() != in.mu.size() || in.g.size() != in.mu.size())
    throw std::invalid_argument("ctw7: f, g and mu must live on the same space");
  if (auto fail = in.combiner.missing({OpFlag::nondecreasing}, "combiner")) return fail;
  for (int i = 0; i < 3; ++i)
    if (auto fail = in.circ[i].missing({OpFlag::nondecreasing, OpFlag::zero_left_annihilator, OpFlag::zero_right_annihilator},
                                       "circ[" + std::to_string(i) + "]"))
      return fail;
  if (auto fail = phi_invalid(in.phi)) return fail;
  return std::nullopt;
}

inline CheckResult ctw7_sufficiency(const Ctw7Instance& in) {
  const auto assoc = is_star_associated(in.f, in.g, in.star, in.domain);
  if (auto fail = relation_failed(assoc, "f, g are not star-associated on D")) return *fail;
  const auto triples = realized_triples(in.f, in.g, in.mu, in.domain);
  auto cond = check_condition(ConditionId::c52, c52_binding(in), ConditionDomain::explicit_tuples(triples));
  if (!cond.holds()) return CheckResult::hypothesis_failed("c52 fails on the realized triples", cond.witness);
  const auto s = ctw7_sides(in);
  InequalityTracker track;
  track.record(s.lhs, s.rhs, [&] { return Witness{{in.domain}, {s.lhs, s.rhs}, "integral inequality fails"}; });
  auto r = track.result(assoc.mode);
  r.note = "lhs=" + to_string(XReal(s.lhs)) + " rhs=" + to_string(XReal(s.rhs));
  return r;
}

/**
 * Indicator pairs a 1_A, b 1_A with (a, b) on a 1/16 grid of Y and one A per
 * distinct value c = mu(A). On these pairs the integral inequality reads
 * exactly as the condition at (a, b, c), so the two verdicts must agree.
 */
inline CheckResult ctw7_necessity(const Ctw7Instance& in) {
  if (auto fail = in.star.missing({OpFlag::nondecreasing}, "star")) return *fail;
  std::map<double, Mask> reps;
  for_each_submask(in.domain, [&](Mask a) {
    if (a != 0) reps.emplace(in.mu(a).value(), a);
  });
  std::vector<double> grid;
  for (double v : standard_grid(in.f.scale(), 1.0 / 16.0))
    if (!std::isinf(v) && in.g.scale().contains(v)) grid.push_back(v);
  const std::size_t n = in.f.size();
  InequalityTracker track;
  std::size_t condition_failures = 0;
  double worst_exhibit = -1.0;
  std::optional<Witness> exhibit;
  for (const auto& [c, set] : reps)
    for (double a : grid)
      for (double b : grid) {
        const auto integral = ctw7_sides(in, indicator(n, set, a, in.f.scale()), indicator(n, set, b, in.g.scale()));
        const auto cond = c52_sides(in, a, b, c);
        const bool integral_ok = approx_le(integral.lhs, integral.rhs);
        const bool cond_ok = approx_le(cond.lhs, cond.rhs);
        // The inequality holding while the condition fails would refute necessity.
        track.record(cond_ok ? 0.0 : 1.0, integral_ok ? 0.0 : 1.0, [&] {
          return Witness{{set}, {a, b, c, integral.lhs, integral.rhs, cond.lhs, cond.rhs}, "inequality holds where c52 fails"};
        });
        if (!cond_ok) {
          ++condition_failures;
          const double gap = integral.lhs - integral.rhs;
          if (!integral_ok && gap > worst_exhibit) {
            worst_exhibit = gap;
            exhibit = Witness{{set}, {a, b, c, integral.lhs, integral.rhs}, "c52 fails at (a, b, c); f = a 1_A, g = b 1_A violate the inequality"};
          }
        }
      }
  auto r = track.result(CheckMode::sampled);
  r.exhibit = exhibit;
  r.note = std::to_string(condition_failures) + " condition failure(s) on " + std::to_string(track.evaluated()) + " indicator pairs";
  return r;
}

}  // namespace detail

inline CheckResult verify_ctw7(const Ctw7Instance& in, Direction dir = Direction::sufficiency) {
  if (auto fail = detail::ctw7_hypotheses(in)) return *fail;
  switch (dir) {
    case Direction::sufficiency: return detail::ctw7_sufficiency(in);
    case Direction::necessity: return detail::ctw7_necessity(in);
    case Direction::equivalence: {
      auto nec = detail::ctw7_necessity(in);
      if (nec.verdict != Verdict::holds) return nec;
      auto suf = detail::ctw7_sufficiency(in);
      if (suf.verdict == Verdict::violated) return suf;
      nec.note += "; sufficiency: " + std::string(to_string(suf.verdict)) + (suf.note.empty() ? "" : " (" + suf.note + ")");
      return nec;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Seminormed integral
// ---------------------------------------------------------------------------

/// How the normalization attached to the seminormed Minkowski inequality is read.
enum class SeminormedReading { none, total_one, range_unit };

inline const char* to_string(SeminormedReading r) {
  switch (r) {
    case SeminormedReading::none: return "none";
    case SeminormedReading::total_one: return "total_one";
    case SeminormedReading::range_unit: return "range_unit";
  }
  return "?";
}

inline SeminormedReading parse_seminormed_reading(const std::string& s) {
  for (auto r : {SeminormedReading::none, SeminormedReading::total_one, SeminormedReading::range_unit})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown normalization reading '" + s + "'");
}

struct SeminormedInstance {
  Fn f;
  Fn g;
  MonotoneMeasure mu;
  Mask domain;
  BinaryOp semicopula;
  BinaryOp star;
  double p = 1.0;
  /// total_one requires mu(X) = 1; range_unit requires every mu(A) in [0, 1].
  SeminormedReading reading = SeminormedReading::none;
};

/// (upper_S((f * g)^p))^(1/p) <= (upper_S(f^p))^(1/p) * (upper_S(g^p))^(1/p), via the general form.
inline CheckResult verify_seminormed_minkowski(const SeminormedInstance& in, Direction dir = Direction::sufficiency) {
  if (!(in.p > 0.0)) throw std::invalid_argument("seminormed: p must be > 0");
  auto semi = check_semicopula(in.semicopula);
  if (!semi.holds()) return semi;
  if (auto fail = in.star.missing({OpFlag::nondecreasing}, "star")) return *fail;
  const double total = in.mu.total().value();
  if (in.reading == SeminormedReading::total_one && total != 1.0)
    return CheckResult::hypothesis_failed("mu(X) = " + to_string(XReal(total)) + ", reading total_one needs 1");
  if (in.reading == SeminormedReading::range_unit && total > 1.0)
    return CheckResult::hypothesis_failed("mu takes values above 1, reading range_unit needs mu(A) in [0,1]");
  const auto phi = PhiMap::power(in.p, ValueScale::unit());
  Ctw7Instance ctw{in.f, in.g, in.mu, in.domain, in.star, in.star, {in.semicopula, in.semicopula, in.semicopula}, {phi, phi, phi}};
  return verify_ctw7(ctw, dir);
}

// ---------------------------------------------------------------------------
// The seminormed counterexample
// ---------------------------------------------------------------------------

struct CounterexampleResult {
  double lhs = 0.0;
  double rhs_each = 0.0;
  double rhs_sum = 0.0;
  bool violated = false;
  ProfileIntegral grid_lhs;
  ProfileIntegral grid_rhs_each;
  double grid_rhs_sum = 0.0;
  /// The pointwise condition that was claimed sufficient, on a grid of [0,1]^3.
  CheckResult claimed_condition;
};

/**
 * f = g = sqrt(x)/2 on [0,1] under Lebesgue measure, S = S_L, a * b = (a + b) ^ 1.
 * Level profiles: mu{f >= t} = (1 - 4t^2)_+ and mu{f * g >= t} = (1 - t^2)_+, so
 * each integral is sup_t (t - k t^2)_+ = 1/(4k).
 */
inline CounterexampleResult reproduce_counterexample(double resolution = 1e-4) {
  const auto s_l = ops::lukasiewicz_tnorm();
  const auto star = ops::bounded_sum();
  auto closed_max = [](double k) { return 1.0 / (4.0 * k); };

  CounterexampleResult out;
  out.rhs_each = closed_max(4.0);
  out.lhs = closed_max(1.0);
  out.rhs_sum = star.raw(out.rhs_each, out.rhs_each);
  out.violated = out.lhs > out.rhs_sum;

  const auto unit = ValueScale::unit();
  const auto g_f = SurvivalProfile::closed_form("(1-4t^2)+", [](double t) { return std::max(1.0 - 4.0 * t * t, 0.0); }, unit, 1.0, 0.5, 4.0);
  const auto g_fg = SurvivalProfile::closed_form("(1-t^2)+", [](double t) { return std::max(1.0 - t * t, 0.0); }, unit, 1.0, 1.0, 2.0);
  out.grid_rhs_each = profile_integral(g_f, s_l, resolution);
  out.grid_lhs = profile_integral(g_fg, s_l, resolution);
  out.grid_rhs_sum = star.raw(out.grid_rhs_each.value, out.grid_rhs_each.value);

  ConditionBinding bind;
  bind.star = star;
  bind.op = s_l;
  out.claimed_condition = check_condition(ConditionId::daraby, bind, ConditionDomain::grid(unit));
  return out;
}

// ---------------------------------------------------------------------------
// Subadditivity for comonotone functions
// ---------------------------------------------------------------------------

struct ComonotoneSubadditivityInstance {
  Fn f;
  Fn g;
  MonotoneMeasure mu;
  BinaryOp op;
};

/**
 * upper(f + g) <= upper(f) + upper(g) for comonotone f, g, gated on
 * (a + b) o c <= a o c + b o c at the realized triples. The note also reports
 * the condition with c over realized measure values and over a grid of Y.
 */
inline CheckResult verify_comonotone_subadditivity(const ComonotoneSubadditivityInstance& in) {
  const auto& op = in.op;
  if (auto fail = op.missing({OpFlag::nondecreasing, OpFlag::zero_left_annihilator, OpFlag::zero_right_annihilator}, "circ"))
    return *fail;
  if (auto fail = detail::relation_failed(is_comonotone(in.f, in.g), "f, g are not comonotone")) return *fail;
  const Mask x = in.f.space().full();
  std::vector<XReal> sum;
  for (std::size_t i = 0; i < in.f.size(); ++i) {
    const double v = in.f[i].value() + in.g[i].value();
    if (!op.scale().contains(v)) return CheckResult::hypothesis_failed("f + g leaves " + op.scale().describe());
    sum.emplace_back(v);
  }
  ConditionBinding bind;
  bind.op = op;
  const auto triples = realized_triples(in.f, in.g, in.mu, x);
  auto cond = check_condition(ConditionId::cwn1, bind, ConditionDomain::explicit_tuples(triples));
  if (!cond.holds()) return CheckResult::hypothesis_failed("cwn1 fails on the realized triples", cond.witness);
  const auto on_values = check_condition(ConditionId::cwn1, bind, ConditionDomain::realized(op.scale(), measure_values(in.mu, x)));
  const auto on_grid = detail::cached_condition("cwn1|" + detail::key_of(op), [&] {
    return check_condition(ConditionId::cwn1, bind, ConditionDomain::grid(op.scale()));
  });

  const double lhs = upper_integral(Fn(std::move(sum), op.scale()), in.mu, op).value();
  const double rhs = upper_integral(in.f, in.mu, op).value() + upper_integral(in.g, in.mu, op).value();
  InequalityTracker track;
  track.record(lhs, rhs, [&] { return Witness{{x}, {lhs, rhs}, "upper(f + g) > upper(f) + upper(g)"}; });
  auto r = track.result();
  r.note = "cwn1 with c over realized values: " + std::string(to_string(on_values.verdict)) +
           "; with c over a grid of Y: " + to_string(on_grid.verdict);
  return r;
}

struct CatalogEntry {
  std::string op;
  CheckResult condition;
};

/// cwn1 on the unit grid for min, product and S_L.
inline std::vector<CatalogEntry> cwn1_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& op : {ops::minimum(), ops::product(), ops::lukasiewicz_tnorm()}) {
    ConditionBinding bind;
    bind.op = op;
    out.push_back({op.name(), check_condition(ConditionId::cwn1, bind, ConditionDomain::grid(op.scale()))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minkowski inequality under subadditive measures
// ---------------------------------------------------------------------------

struct TwSubadInstance {
  std::vector<double> f;
  std::vector<double> g;
  MonotoneMeasure mu;
  BinaryOp op;
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
};

/// Grid check of both operator hypotheses for (q, r); memoized per operator.
inline CheckResult tw_subad_gate(const BinaryOp& op, double q, double r) {
  const std::string key = "tw_subad_hyp|" + detail::key_of(op) + "|" + to_string(XReal(q)) + "|" + to_string(XReal(r));
  return detail::cached_condition(key, [&] {
    ConditionBinding bind;
    bind.op = op;
    bind.q = q;
    bind.r = r;
    return check_condition(ConditionId::tw_subad_hyp, bind, ConditionDomain::grid(op.scale()));
  });
}

/// (upper |f+g|^p)^(1/(pq+1)) <= (upper |f|^p)^(r/(pq+1)) + (upper |g|^p)^(r/(pq+1)).
inline CheckResult verify_tw_subad(const TwSubadInstance& in) {
  if (!(in.p > 0.0) || !(in.q > 0.0) || !(in.r > 0.0)) throw std::invalid_argument("tw_subad: p, q, r must be > 0");
  if (in.f.size() != in.mu.size() || in.g.size() != in.mu.size())
    throw std::invalid_argument("tw_subad: f, g and mu must live on the same space");
  if (auto fail = in.op.missing({OpFlag::nondecreasing}, "circ")) return *fail;
  auto gate = tw_subad_gate(in.op, in.q, in.r);
  if (!gate.holds()) return CheckResult::hypothesis_failed("operator fails tw_subad_hyp", gate.witness);
  auto sub = check_measure_property(in.mu, MeasureProperty::subadditive);
  if (!sub.holds()) return CheckResult::hypothesis_failed("mu is not subadditive", sub.witness);

  std::vector<double> sum(in.f.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = in.f[i] + in.g[i];
  const auto& y = in.op.scale();
  std::optional<Fn> fs, ff, fg;
  try {
    fs = abs_pow(sum, in.p, y);
    ff = abs_pow(in.f, in.p, y);
    fg = abs_pow(in.g, in.p, y);
  } catch (const ScaleError& e) {
    return CheckResult::hypothesis_failed(std::string("integrand outside Y: ") + e.what());
  }
  const double e = 1.0 / (in.p * in.q + 1.0);
  const double lhs = xpow(upper_integral(*fs, in.mu, in.op).value(), e);
  const double rhs = xpow(upper_integral(*ff, in.mu, in.op).value(), in.r * e) + xpow(upper_integral(*fg, in.mu, in.op).value(), in.r * e);
  InequalityTracker track;
  track.record(lhs, rhs, [&] { return Witness{{}, {lhs, rhs}, "Minkowski inequality fails"}; });
  auto r = track.result();
  r.note = "lhs=" + to_string(XReal(lhs)) + " rhs=" + to_string(XReal(rhs));
  return r;
}

// ---------------------------------------------------------------------------
// Equivalence theorems
// ---------------------------------------------------------------------------

/**
 * Outcome of an equivalence check "property of mu <=> inequality for all f, g".
 * `consistent` asserts: property holds <=> the forward search found no
 * violation <=> the backward construction fails to violate.
 */
struct EquivalenceReport {
  CheckResult result;
  bool property = false;
  bool forward_clean = true;
  std::size_t forward_checked = 0;
  bool backward_violated = false;
  double backward_margin = 0.0;
  std::optional<Witness> backward_witness;
  bool consistent = false;
};

namespace detail {

inline std::vector<double> random_values(Rng& rng, std::size_t n, double hi, double step) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.grid_value(hi, step);
  return v;
}

inline void finish(EquivalenceReport& rep, const std::string& property_name) {
  rep.consistent = (rep.property == rep.forward_clean) && (rep.property == !rep.backward_violated);
  rep.result.verdict = rep.consistent ? Verdict::holds : Verdict::violated;
  rep.result.margin = rep.backward_violated ? rep.backward_margin : 0.0;
  rep.result.evaluated = rep.forward_checked;
  rep.result.note = property_name + "=" + (rep.property ? "true" : "false") + ", forward search " +
                    (rep.forward_clean ? "clean" : "violated") + " over " + std::to_string(rep.forward_checked) +
                    " pairs, backward construction " + (rep.backward_violated ? "violates" : "does not violate");
  if (!rep.consistent) rep.result.witness = rep.backward_witness;
}

}  // namespace detail

/// Largest number of points for which every pair of indicators is searched.
inline constexpr std::size_t kIndicatorPairPoints = 8;

/**
 * The Shilkret integral is subadditive for all f, g iff mu is maxitive.
 * Forward search: `random_pairs` seeded pairs, all indicator pairs (n <= 8), and
 * f = 1_A + l 1_B, g = (1 - l) 1_B over disjoint A, B with l in {k/8} plus the
 * midpoint of (mu(A) v mu(B)) / mu(A u B) and 1. Backward: that two-level
 * construction on the disjoint pair with the largest predicted gap.
 */
inline EquivalenceReport verify_subShi(const MonotoneMeasure& mu, std::uint64_t seed = 1, std::size_t random_pairs = 32) {
  const auto y = ValueScale::extended_half_line();
  const auto op = ops::product(y);
  const std::size_t n = mu.size();
  const Mask full = mu.space().full();
  EquivalenceReport rep;
  rep.property = check_measure_property(mu, MeasureProperty::maxitive).holds();

  auto I = [&](const std::vector<double>& v) { return upper_integral(Fn(v, y), mu, op, full).value(); };
  InequalityTracker forward;
  auto test = [&](const std::vector<double>& f, const std::vector<double>& g, std::vector<Mask> sets) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = f[i] + g[i];
    const double lhs = I(s), a = I(f), b = I(g);
    forward.record(lhs, a + b, [&] { return Witness{sets, {lhs, a, b}, "Shilkret(f + g) > Shilkret(f) + Shilkret(g)"}; });
  };
  auto two_level = [&](Mask a, Mask b, double lambda) {
    std::vector<double> f(n, 0.0), g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (contains_point(a, i)) f[i] = 1.0;
      if (contains_point(b, i)) {
        f[i] = lambda;
        g[i] = 1.0 - lambda;
      }
    }
    return std::pair{f, g};
  };

  Rng rng(seed);
  for (std::size_t k = 0; k < random_pairs; ++k) test(detail::random_values(rng, n, 2.0, 0.125), detail::random_values(rng, n, 2.0, 0.125), {});
  if (n <= kIndicatorPairPoints)
    for (std::uint64_t a = 0; a <= full; ++a)
      for (std::uint64_t b = 0; b <= full; ++b) {
        const auto am = static_cast<Mask>(a), bm = static_cast<Mask>(b);
        test(indicator(n, am, 1.0, y).raw(), indicator(n, bm, 1.0, y).raw(), {am, bm});
      }

  double best_gap = 0.0;
  std::optional<std::pair<Mask, Mask>> best;
  detail::for_each_disjoint_pair(mu.space(), [&](Mask a, Mask b) {
    if (a == 0 || b == 0) return;
    const double u = mu(a | b).value(), ma = mu(a).value(), mb = mu(b).value();
    const double m = std::max(ma, mb);
    std::vector<double> lambdas;
    for (int k = 1; k < 8; ++k) lambdas.push_back(k / 8.0);
    if (u > m && !std::isinf(u)) {
      lambdas.push_back((m / u + 1.0) / 2.0);
      const double gap = (u - m) * (u - mb) / (2.0 * u);
      if (gap > best_gap) {
        best_gap = gap;
        best = {a, b};
      }
    }
    for (double l : lambdas) {
      auto [f, g] = two_level(a, b, l);
      test(f, g, {a, b});
    }
  });
  rep.forward_clean = !forward.violated();
  rep.forward_checked = forward.evaluated();

  if (best) {
    const auto [a, b] = *best;
    const double u = mu(a | b).value(), m = std::max(mu(a).value(), mu(b).value());
    const double lambda = (m / u + 1.0) / 2.0;
    auto [f, g] = two_level(a, b, lambda);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = f[i] + g[i];
    const double lhs = I(s), rhs = I(f) + I(g);
    rep.backward_margin = lhs - rhs;
    rep.backward_violated = rep.backward_margin > 0.0;
    rep.backward_witness = Witness{{a, b}, {lambda, lhs, rhs}, "f = 1_A + l 1_B, g = (1 - l) 1_B"};
  }
  detail::finish(rep, "maxitive");
  return rep;
}

/**
 * The Sugeno integral is subadditive for all f, g iff mu is subadditive
 * (mu(X) finite). Backward: for disjoint A, B and a = mu(A u B), the pair
 * a 1_A, a 1_B satisfies the inequality iff mu(A u B) <= mu(A) + mu(B).
 */
inline EquivalenceReport verify_dol_twsub(const MonotoneMeasure& mu, std::uint64_t seed = 1, std::size_t random_pairs = 32) {
  EquivalenceReport rep;
  if (mu.total().is_inf()) {
    rep.result = CheckResult::hypothesis_failed("mu(X) = inf; the converse needs a finite measure");
    return rep;
  }
  const auto y = ValueScale::extended_half_line();
  const auto op = ops::minimum(y);
  const std::size_t n = mu.size();
  const Mask full = mu.space().full();
  rep.property = check_measure_property(mu, MeasureProperty::subadditive).holds();

  auto S = [&](const std::vector<double>& v) { return upper_integral(Fn(v, y), mu, op, full).value(); };
  auto sides = [&](const std::vector<double>& f, const std::vector<double>& g) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = f[i] + g[i];
    return Sides{S(s), S(f) + S(g)};
  };

  InequalityTracker forward;
  Rng rng(seed);
  for (std::size_t k = 0; k < random_pairs; ++k) {
    const auto f = detail::random_values(rng, n, 2.0, 0.125), g = detail::random_values(rng, n, 2.0, 0.125);
    const auto s = sides(f, g);
    forward.record(s.lhs, s.rhs, [&] { return Witness{{}, {s.lhs, s.rhs}, "Sugeno(f + g) > Sugeno(f) + Sugeno(g)"}; });
  }
  if (n <= kIndicatorPairPoints)
    for (std::uint64_t a = 0; a <= full; ++a)
      for (std::uint64_t b = 0; b <= full; ++b) {
        const auto am = static_cast<Mask>(a), bm = static_cast<Mask>(b);
        for (double h : {1.0, mu(am | bm).value()}) {
          const auto s = sides(indicator(n, am, h, y).raw(), indicator(n, bm, h, y).raw());
          forward.record(s.lhs, s.rhs, [&] { return Witness{{am, bm}, {h, s.lhs, s.rhs}, "indicator pair violates"}; });
        }
      }
  rep.forward_clean = !forward.violated();
  rep.forward_checked = forward.evaluated();

  detail::for_each_disjoint_pair(mu.space(), [&](Mask a, Mask b) {
    if (a == 0 || b == 0 || a > b) return;
    const double h = mu(a | b).value();
    const auto s = sides(indicator(n, a, h, y).raw(), indicator(n, b, h, y).raw());
    const double gap = s.lhs - s.rhs;
    if (gap > rep.backward_margin) {
      rep.backward_margin = gap;
      rep.backward_violated = true;
      rep.backward_witness = Witness{{a, b}, {h, s.lhs, s.rhs}, "mu(A u B) > mu(A) + mu(B) via a 1_A, a 1_B"};
    }
  });
  detail::finish(rep, "subadditive");
  return rep;
}

struct BoundaryProbe {
  Mask a = 0;
  Mask b = 0;
  double mu_a = 0.0;
  double mu_b = 0.0;
  double height = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

/**
 * With mu(X) = inf and a partition X = A u B of finite measure, f = a 1_A and
 * g = a 1_B with a > mu(A) + mu(B) break Sugeno subadditivity: the left side is
 * a ^ inf = a, the right side mu(A) + mu(B).
 */
inline BoundaryProbe dol_twsub_boundary(const MonotoneMeasure& mu) {
  if (!mu.total().is_inf()) throw std::invalid_argument("dol_twsub_boundary: needs mu(X) = inf");
  const Mask full = mu.space().full();
  const std::size_t n = mu.size();
  for (Mask a = 1; a < full; ++a) {
    const Mask b = full & ~a;
    const double ma = mu(a).value(), mb = mu(b).value();
    if (std::isinf(ma) || std::isinf(mb)) continue;
    const auto y = ValueScale::extended_half_line();
    const auto op = ops::minimum(y);
    BoundaryProbe p;
    p.a = a;
    p.b = b;
    p.mu_a = ma;
    p.mu_b = mb;
    p.height = ma + mb + 1.0;
    const Fn f = indicator(n, a, p.height, y), g = indicator(n, b, p.height, y);
    p.lhs = upper_integral(Fn(std::vector<double>(n, p.height), y), mu, op).value();
    p.rhs = upper_integral(f, mu, op).value() + upper_integral(g, mu, op).value();
    p.violated = p.lhs > p.rhs;
    return p;
  }
  throw std::invalid_argument("dol_twsub_boundary: no partition into two sets of finite measure");
}

// ---------------------------------------------------------------------------
// Lower integral Minkowski inequality
// ---------------------------------------------------------------------------

struct Cdtw1Instance {
  Fn f;
  Fn g;
  MonotoneMeasure mu;
  Mask domain;
  BinaryOp star;
  BinaryOp combiner;
  BinaryOp boxplus;
  std::array<BinaryOp, 3> circ;
  std::array<PhiMap, 3> phi{PhiMap::identity(), PhiMap::identity(), PhiMap::identity()};
};

inline Sides cdtw1_sides(const Cdtw1Instance& in) {
  const auto& phi = in.phi;
  const Fn fg = detail::combine(in.f, in.g, in.star, phi[0].scale());
  const double i1 = lower_integral(detail::apply_phi(fg, phi[0]), in.mu, in.circ[0], in.domain).value();
  const double i2 = lower_integral(detail::apply_phi(in.f, phi[1]), in.mu, in.circ[1], in.domain).value();
  const double i3 = lower_integral(detail::apply_phi(in.g, phi[2]), in.mu, in.circ[2], in.domain).value();
  return {phi[0].inverse(i1), in.combiner.raw(phi[1].inverse(i2), phi[2].inverse(i3))};
}

/// (a, b, mu(D n {f > a}), mu(D n {g > b})) over a, b in {0} and the realized values.
inline std::vector<std::vector<double>> realized_level_tuples(const Fn& f, const Fn& g, const MonotoneMeasure& mu, Mask domain) {
  std::vector<std::vector<double>> out;
  for (double a : detail::thresholds(f, domain))
    for (double b : detail::thresholds(g, domain))
      out.push_back({a, b, mu(f.level_gt(a, domain)).value(), mu(g.level_gt(b, domain)).value()});
  return out;
}

/// Lower-integral inequality for mu-subadditive f, g, gated on cd6 at the realized level tuples.
inline CheckResult verify_cdtw1(const Cdtw1Instance& in) {
  if (in.f.size() != in.mu.size() || in.g.size() != in.mu.size())
    throw std::invalid_argument("cdtw1: f, g and mu must live on the same space");
  if (auto fail = in.combiner.missing({OpFlag::nondecreasing, OpFlag::right_continuous}, "combiner")) return *fail;
  if (auto fail = in.star.missing({OpFlag::nondecreasing}, "star")) return *fail;
  for (int i = 0; i < 3; ++i)
    if (auto fail = in.circ[i].missing({OpFlag::nondecreasing}, "circ[" + std::to_string(i) + "]")) return *fail;
  if (auto fail = detail::phi_invalid(in.phi)) return *fail;
  if (auto fail = detail::relation_failed(is_mu_subadditive(in.f, in.g, in.boxplus, in.mu, in.domain),
                                          "f, g are not mu-subadditive for the boxplus operator"))
    return *fail;
  ConditionBinding bind;
  bind.star = in.star;
  bind.combiner = in.combiner;
  bind.boxplus = in.boxplus;
  bind.circ = {in.circ[0], in.circ[1], in.circ[2]};
  bind.phi = in.phi;
  auto cond = check_condition(ConditionId::cd6, bind, ConditionDomain::explicit_tuples(realized_level_tuples(in.f, in.g, in.mu, in.domain)));
  if (!cond.holds()) return CheckResult::hypothesis_failed("cd6 fails on the realized level tuples", cond.witness);
  const auto s = cdtw1_sides(in);
  InequalityTracker track;
  track.record(s.lhs, s.rhs, [&] { return Witness{{in.domain}, {s.lhs, s.rhs}, "lower-integral inequality fails"}; });
  auto r = track.result();
  r.note = "lhs=" + to_string(XReal(s.lhs)) + " rhs=" + to_string(XReal(s.rhs));
  return r;
}

// ---------------------------------------------------------------------------
// Inequalities obtained through an h-duality
// ---------------------------------------------------------------------------

enum class DualityCorollary { colh, colh2 };

inline const char* to_string(DualityCorollary c) { return c == DualityCorollary::colh ? "dol_colh" : "dol_colh2"; }

struct DualityInstance {
  Fn f;
  Fn g;
  MonotoneMeasure mu;
  BinaryOp star;
  BinaryOp op;
  DualityMap h;
  /// Required by colh2.
  std::optional<BinaryOp> boxplus;
};

/// Grid spacing for the duality conditions (three or four variables over Y).
inline constexpr double kDualityGridStep = 1.0 / 16.0;

namespace detail {

inline std::optional<CheckResult> dual_measure_ok(const DualityInstance& in) {
  if (in.f.size() != in.mu.size() || in.g.size() != in.mu.size())
    throw std::invalid_argument("duality: f, g and mu must live on the same space");
  const double total = in.mu.total().value();
  if (total != in.h(0.0))
    return CheckResult::hypothesis_failed("mu_h is a monotone measure only when mu(X) = h(0) = " + to_string(XReal(in.h(0.0))) +
                                          ", got " + to_string(XReal(total)));
  return std::nullopt;
}

inline Fn h_of(const Fn& f, const DualityMap& h) { return map_values(f, [&](double x) { return h(x); }, h.scale()); }

}  // namespace detail

/**
 * h^-1(lower_o(h(f * g))) <= h^-1(lower_o(h f)) * h^-1(lower_o(h g)) for
 * star-associated f, g, gated on (a * b) o_h c <= (a o_h c) * (b o_h c) over a grid of Y.
 */
inline CheckResult verify_dol_colh(const DualityInstance& in) {
  if (auto fail = in.op.missing({OpFlag::nondecreasing, OpFlag::top_absorbing}, "circ")) return *fail;
  if (auto fail = detail::dual_measure_ok(in)) return *fail;
  if (auto fail = detail::relation_failed(is_star_associated(in.f, in.g, in.star, in.f.space().full()), "f, g are not star-associated"))
    return *fail;
  ConditionBinding bind;
  bind.star = in.star;
  bind.op = in.op;
  bind.h = in.h;
  const auto cond = detail::cached_condition("colh|" + detail::key_of(in.star) + "|" + detail::key_of(in.op) + "|" + in.h.name(), [&] {
    return check_condition(ConditionId::colh, bind, ConditionDomain::grid(in.h.scale(), kDualityGridStep));
  });
  if (!cond.holds()) return CheckResult::hypothesis_failed("colh fails on the grid", cond.witness);
  const auto& h = in.h;
  const Fn fg = detail::combine(in.f, in.g, in.star, h.scale());
  const double lhs = h.inverse(lower_integral(detail::h_of(fg, h), in.mu, in.op).value());
  const double rhs = in.star.raw(h.inverse(lower_integral(detail::h_of(in.f, h), in.mu, in.op).value()),
                                 h.inverse(lower_integral(detail::h_of(in.g, h), in.mu, in.op).value()));
  InequalityTracker track;
  track.record(lhs, rhs, [&] { return Witness{{}, {lhs, rhs}, "dual lower-integral inequality fails"}; });
  auto r = track.result(CheckMode::sampled);
  r.note = "lhs=" + to_string(XReal(lhs)) + " rhs=" + to_string(XReal(rhs));
  return r;
}

/**
 * h^-1(upper_o(h(f * g))) <= h^-1(upper_o(h f)) * h^-1(upper_o(h g)) for f, g
 * mu_h-subadditive for boxplus, gated on (a * b) o_h (c [+] d) <= (a o_h c) * (b o_h d) over a grid.
 */
inline CheckResult verify_dol_colh2(const DualityInstance& in) {
  if (!in.boxplus) throw std::invalid_argument("dol_colh2: boxplus operator required");
  if (auto fail = in.star.missing({OpFlag::nondecreasing, OpFlag::right_continuous}, "star")) return *fail;
  if (auto fail = in.op.missing({OpFlag::nondecreasing}, "circ")) return *fail;
  if (auto fail = detail::dual_measure_ok(in)) return *fail;
  const auto mu_h = dual_measure_h(in.mu, in.h);
  if (auto fail = detail::relation_failed(is_mu_subadditive(in.f, in.g, *in.boxplus, mu_h, in.f.space().full()),
                                          "f, g are not mu_h-subadditive"))
    return *fail;
  ConditionBinding bind;
  bind.star = in.star;
  bind.op = in.op;
  bind.h = in.h;
  bind.boxplus = in.boxplus;
  const auto cond = detail::cached_condition(
      "colh2|" + detail::key_of(in.star) + "|" + detail::key_of(in.op) + "|" + detail::key_of(*in.boxplus) + "|" + in.h.name(), [&] {
        return check_condition(ConditionId::colh2, bind, ConditionDomain::grid(in.h.scale(), kDualityGridStep));
      });
  if (!cond.holds()) return CheckResult::hypothesis_failed("colh2 fails on the grid", cond.witness);
  const auto& h = in.h;
  const Fn fg = detail::combine(in.f, in.g, in.star, h.scale());
  const double lhs = h.inverse(upper_integral(detail::h_of(fg, h), in.mu, in.op).value());
  const double rhs = in.star.raw(h.inverse(upper_integral(detail::h_of(in.f, h), in.mu, in.op).value()),
                                 h.inverse(upper_integral(detail::h_of(in.g, h), in.mu, in.op).value()));
  InequalityTracker track;
  track.record(lhs, rhs, [&] { return Witness{{}, {lhs, rhs}, "dual upper-integral inequality fails"}; });
  auto r = track.result(CheckMode::sampled);
  r.note = "lhs=" + to_string(XReal(lhs)) + " rhs=" + to_string(XReal(rhs));
  return r;
}

inline CheckResult verify_duality_corollaries(const DualityInstance& in, DualityCorollary which) {
  return which == DualityCorollary::colh ? verify_dol_colh(in) : verify_dol_colh2(in);
}

}  // namespace nonadditive

#endif  // NONADDITIVE_THEOREMS_HPP
