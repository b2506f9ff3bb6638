#ifndef NONADDITIVE_METRICS_HPP
#define NONADDITIVE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nonadditive/conditions.hpp"
#include "nonadditive/core.hpp"
#include "nonadditive/integrals.hpp"
#include "nonadditive/measures.hpp"
#include "nonadditive/operators.hpp"
#include "nonadditive/theorems.hpp"

namespace nonadditive {

enum class MetricKind { frechet, kyfan, d_op_p };

inline const char* to_string(MetricKind k) {
  switch (k) {
    case MetricKind::frechet: return "frechet";
    case MetricKind::kyfan: return "kyfan";
    case MetricKind::d_op_p: return "d_op_p";
  }
  return "?";
}

inline MetricKind parse_metric_kind(const std::string& s) {
  for (auto k : {MetricKind::frechet, MetricKind::kyfan, MetricKind::d_op_p})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

struct MetricSpec {
  MetricKind kind = MetricKind::kyfan;
  std::optional<BinaryOp> op;
  double p = 1.0;

  static MetricSpec frechet() { return {MetricKind::frechet, std::nullopt, 1.0}; }
  static MetricSpec kyfan() { return {MetricKind::kyfan, std::nullopt, 1.0}; }
  static MetricSpec d_op_p(BinaryOp op, double p) { return {MetricKind::d_op_p, std::move(op), p}; }

  std::string describe() const {
    if (kind != MetricKind::d_op_p) return to_string(kind);
    return "d_op_p(" + (op ? op->name() : std::string("?")) + ", p=" + to_string(XReal(p)) + ")";
  }
};

using RealVector = std::vector<double>;

/**
 * Operator requirements for d_op_p on Y = [0, inf]: nondecreasing, the
 * doltw2_hyp implication, and tw_subad_hyp with q = p, r = 1.
 */
inline std::optional<CheckResult> metric_gate(const MetricSpec& spec) {
  if (spec.kind != MetricKind::d_op_p) return std::nullopt;
  if (!spec.op) throw std::invalid_argument("d_op_p needs an operator");
  if (!(spec.p > 0.0)) throw std::invalid_argument("d_op_p needs p > 0");
  const auto& op = *spec.op;
  if (!(op.scale() == ValueScale::extended_half_line()))
    return CheckResult::hypothesis_failed("d_op_p operator must act on [0,inf], got " + op.scale().describe());
  if (auto fail = op.missing({OpFlag::nondecreasing}, "d_op_p")) return fail;
  const auto hyp = detail::cached_condition("doltw2_hyp|" + detail::key_of(op), [&] {
    ConditionBinding bind;
    bind.op = op;
    return check_condition(ConditionId::doltw2_hyp, bind, ConditionDomain::grid(op.scale()));
  });
  if (!hyp.holds()) return CheckResult::hypothesis_failed("operator fails doltw2_hyp: 1 o x <= y does not force x <= y", hyp.witness);
  const auto sub = tw_subad_gate(op, spec.p, 1.0);
  if (!sub.holds()) return CheckResult::hypothesis_failed("operator fails tw_subad_hyp with q = p, r = 1", sub.witness);
  return std::nullopt;
}

namespace detail {

inline Fn abs_diff(const RealVector& f, const RealVector& g) {
  if (f.size() != g.size()) throw std::invalid_argument("metric: vectors of different length");
  std::vector<XReal> d;
  d.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i]) || !std::isfinite(g[i])) throw std::invalid_argument("metric: values must be finite reals");
    d.emplace_back(std::abs(f[i] - g[i]));
  }
  return Fn(std::move(d), ValueScale::extended_half_line());
}

inline void require_space(const RealVector& f, const MonotoneMeasure& mu) {
  if (f.size() != mu.size()) throw std::invalid_argument("metric: vector length differs from the measure's space");
}

}  // namespace detail

/// inf over eps >= 0 of eps + mu({|f-g| > eps}); the minimum sits at 0 or a value of |f-g|.
inline double frechet_distance(const RealVector& f, const RealVector& g, const MonotoneMeasure& mu) {
  detail::require_space(f, mu);
  const Fn d = detail::abs_diff(f, g);
  const Mask x = d.space().full();
  double best = kInf;
  for (double eps : detail::thresholds(d, x)) best = std::min(best, eps + mu(d.level_gt(eps, x)).value());
  return best;
}

/// The Ky Fan distance as the Sugeno integral of |f - g|.
inline double kyfan_distance(const RealVector& f, const RealVector& g, const MonotoneMeasure& mu) {
  detail::require_space(f, mu);
  return sugeno_integral(detail::abs_diff(f, g), mu, mu.space().full()).value();
}

/// Ky Fan distance in three forms: upper with min, lower with max, inf{eps : mu(|f-g| > eps) <= eps}.
struct KyFanForms {
  double upper_min = 0.0;
  double lower_max = 0.0;
  double threshold = 0.0;
};

inline KyFanForms kyfan_forms(const RealVector& f, const RealVector& g, const MonotoneMeasure& mu) {
  detail::require_space(f, mu);
  const Fn d = detail::abs_diff(f, g);
  const Mask x = d.space().full();
  KyFanForms out;
  out.upper_min = upper_integral(d, mu, ops::minimum(d.scale()), x).value();
  out.lower_max = lower_integral(d, mu, ops::maximum(d.scale()), x).value();
  // On [v_i, v_{i+1}) the level measure is a constant m_i; the first admissible eps there is max(v_i, m_i).
  const auto levels = detail::thresholds(d, x);
  out.threshold = kInf;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double m = mu(d.level_gt(levels[i], x)).value();
    const double eps = std::max(levels[i], m);
    if (i + 1 == levels.size() || eps < levels[i + 1]) out.threshold = std::min(out.threshold, eps);
  }
  return out;
}

/// (upper_o(|f - g|^p))^(1/(p^2 + 1)); the operator is assumed gated.
inline double d_op_p_distance(const RealVector& f, const RealVector& g, const MonotoneMeasure& mu, const BinaryOp& op, double p) {
  detail::require_space(f, mu);
  const Fn d = detail::abs_diff(f, g);
  const Fn dp = map_values(d, [p](double v) { return xpow(v, p); }, op.scale());
  return xpow(upper_integral(dp, mu, op).value(), 1.0 / (p * p + 1.0));
}

/// Distance under `spec`; throws HypothesisError when the d_op_p operator fails its gate.
inline XReal metric_eval(const MetricSpec& spec, const RealVector& f, const RealVector& g, const MonotoneMeasure& mu) {
  switch (spec.kind) {
    case MetricKind::frechet: return frechet_distance(f, g, mu);
    case MetricKind::kyfan: return kyfan_distance(f, g, mu);
    case MetricKind::d_op_p:
      if (auto fail = metric_gate(spec)) throw HypothesisError(spec.describe() + ": " + fail->note);
      return d_op_p_distance(f, g, mu, *spec.op, spec.p);
  }
  return XReal{};
}

/// min over a uniform grid of eps in [0, max|f-g| + spacing] of eps + mu({|f-g| > eps}).
inline double frechet_grid(const RealVector& f, const RealVector& g, const MonotoneMeasure& mu, double spacing) {
  detail::require_space(f, mu);
  const Fn d = detail::abs_diff(f, g);
  const Mask x = d.space().full();
  double hi = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) hi = std::max(hi, d[i].value());
  double best = kInf;
  const auto steps = static_cast<std::size_t>(std::ceil(hi / spacing)) + 1;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double eps = static_cast<double>(k) * spacing;
    best = std::min(best, eps + mu(d.level_gt(eps, x)).value());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Metric axioms
// ---------------------------------------------------------------------------

namespace detail {

inline RealVector random_real(Rng& rng, std::size_t n, double lo, double hi, double step) {
  RealVector v(n);
  for (auto& x : v) x = lo + rng.grid_value(hi - lo, step);
  return v;
}

}  // namespace detail

/**
 * Symmetry (exact), identity up to mu-null difference, and the triangle
 * inequality (tolerance 1e-12) over seeded triples plus planted triples
 * f = a 1_A, g = -a 1_B, h = 0 for disjoint A, B. Subadditivity of mu is
 * reported in the note; the search runs either way.
 */
inline CheckResult check_metric_axioms(const MetricSpec& spec, const MonotoneMeasure& mu, std::size_t trials, std::uint64_t seed) {
  if (auto fail = metric_gate(spec)) return *fail;
  const std::size_t n = mu.size();
  const bool subadditive = check_measure_property(mu, MeasureProperty::subadditive).holds();
  auto d = [&](const RealVector& a, const RealVector& b) { return metric_eval(spec, a, b, mu).value(); };
  InequalityTracker track(kTolerance);
  std::size_t checked = 0;

  auto axioms = [&](const RealVector& f, const RealVector& g, const RealVector& h, std::vector<Mask> sets) {
    ++checked;
    const double fg = d(f, g), gf = d(g, f), fh = d(f, h), hg = d(h, g);
    auto w = [&](const char* what) {
      return [&, what] {
        std::vector<double> vals;
        vals.insert(vals.end(), f.begin(), f.end());
        vals.insert(vals.end(), g.begin(), g.end());
        vals.insert(vals.end(), h.begin(), h.end());
        vals.insert(vals.end(), {fg, fh, hg});
        return Witness{sets, vals, what};
      };
    };
    // Exact comparisons are encoded as lhs <= rhs with a zero-tolerance gap.
    if (fg != gf) track.record(std::abs(fg - gf) + 1.0, 1.0, w("d(f, g) != d(g, f)"));
    Mask support = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (f[i] != g[i]) support |= singleton(i);
    const bool null_diff = mu(support).value() == 0.0;
    if ((fg == 0.0) != null_diff) track.record(1.0, 0.0, w("d(f, g) = 0 disagrees with mu({f != g}) = 0"));
    track.record(fg, fh + hg, w("d(f, g) > d(f, h) + d(h, g)"));
  };

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto f = detail::random_real(rng, n, -2.0, 2.0, 0.125);
    auto g = detail::random_real(rng, n, -2.0, 2.0, 0.125);
    auto h = detail::random_real(rng, n, -2.0, 2.0, 0.125);
    if (rng.below(8) == 0) {
      // Differ from f only on one point, which may be null.
      g = f;
      g[rng.below(n)] += 1.0;
    }
    axioms(f, g, h, {});
  }
  const RealVector zero(n, 0.0);
  detail::for_each_disjoint_pair(mu.space(), [&](Mask a, Mask b) {
    if (a == 0 || b == 0 || a > b) return;
    const double u = mu(a | b).value();
    for (double height : {1.0, std::isinf(u) ? 1e6 : std::max(u, 1e-3), 1e6}) {
      RealVector f(n, 0.0), g(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (contains_point(a, i)) f[i] = height;
        if (contains_point(b, i)) g[i] = -height;
      }
      axioms(f, g, zero, {a, b});
    }
  });

  auto r = track.result(CheckMode::sampled);
  r.evaluated = checked;
  r.note = spec.describe() + " over " + std::to_string(checked) + " triples; mu " + (subadditive ? "is" : "is not") + " subadditive";
  return r;
}

// ---------------------------------------------------------------------------
// Shilkret norm
// ---------------------------------------------------------------------------

/// Shilkret integral of |f|; requires maxitive mu.
inline XReal shilkret_norm(const RealVector& f, const MonotoneMeasure& mu) {
  detail::require_space(f, mu);
  const auto maxitive = check_measure_property(mu, MeasureProperty::maxitive);
  if (!maxitive.holds()) throw HypothesisError("shilkret_norm: mu is not maxitive");
  const Fn a = detail::abs_diff(f, RealVector(f.size(), 0.0));
  return shilkret_integral(a, mu, mu.space().full());
}

/**
 * Norm laws on seeded vectors: ||c f|| = |c| ||f|| exactly for dyadic c, and
 * ||f + g|| <= ||f|| + ||g||.
 */
inline CheckResult check_shilkret_norm(const MonotoneMeasure& mu, std::size_t trials, std::uint64_t seed) {
  if (!check_measure_property(mu, MeasureProperty::maxitive).holds()) return CheckResult::hypothesis_failed("mu is not maxitive");
  const std::size_t n = mu.size();
  InequalityTracker exact(0.0), track;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto f = detail::random_real(rng, n, -2.0, 2.0, 0.125);
    const auto g = detail::random_real(rng, n, -2.0, 2.0, 0.125);
    const double nf = shilkret_norm(f, mu).value();
    for (double c : {-4.0, -1.0, -0.5, 0.25, 2.0, 8.0}) {
      RealVector cf(f);
      for (auto& v : cf) v *= c;
      const double ncf = shilkret_norm(cf, mu).value();
      const double want = std::abs(c) * nf;
      auto w = [&] { return Witness{{}, {c, ncf, want}, "||c f|| != |c| ||f||"}; };
      exact.record(ncf, want, w);
      exact.record(want, ncf, w);
    }
    RealVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = f[i] + g[i];
    const double ns = shilkret_norm(s, mu).value(), ng = shilkret_norm(g, mu).value();
    track.record(ns, nf + ng, [&] { return Witness{{}, {ns, nf, ng}, "||f + g|| > ||f|| + ||g||"}; });
  }
  auto r = exact.violated() ? exact.result(CheckMode::sampled) : track.result(CheckMode::sampled);
  r.evaluated = exact.evaluated() + track.evaluated();
  return r;
}

// ---------------------------------------------------------------------------
// Convergence lemmas
// ---------------------------------------------------------------------------

enum class ConvergenceKind { monotone, fatou };

inline const char* to_string(ConvergenceKind k) { return k == ConvergenceKind::monotone ? "monotone" : "fatou"; }

inline ConvergenceKind parse_convergence_kind(const std::string& s) {
  if (s == "monotone") return ConvergenceKind::monotone;
  if (s == "fatou") return ConvergenceKind::fatou;
  throw std::invalid_argument("unknown convergence kind '" + s + "'");
}

/**
 * Finite-sequence reading of the two lemmas for the upper integral with `op`.
 * monotone: f_1 <= f_2 <= ... pointwise, the last term equals the limit off a
 * mu-null set; the integrals must be nondecreasing and end at the limit's
 * integral. fatou: the tail is the second half of the sequence and the limit
 * must equal its pointwise minimum off a null set; the limit's integral must
 * not exceed the smallest tail integral.
 */
inline CheckResult check_convergence_lemmas(const MonotoneMeasure& mu, const std::vector<Fn>& sequence, const Fn& limit,
                                            ConvergenceKind kind, const BinaryOp& op) {
  if (sequence.empty()) throw std::invalid_argument("convergence: empty sequence");
  for (const auto& f : sequence)
    if (f.size() != mu.size()) throw std::invalid_argument("convergence: sequence lives on a different space");
  if (limit.size() != mu.size()) throw std::invalid_argument("convergence: limit lives on a different space");
  if (auto fail = op.missing({OpFlag::nondecreasing, OpFlag::left_continuous_second}, "circ")) return *fail;
  auto na = check_measure_property(mu, MeasureProperty::null_additive);
  if (!na.holds()) return CheckResult::hypothesis_failed("mu is not null-additive", na.witness);
  const std::size_t n = mu.size();
  const Mask x = mu.space().full();
  const auto I = [&](const Fn& f) { return upper_integral(f, mu, op, x).value(); };

  std::vector<double> values;
  for (const auto& f : sequence) values.push_back(I(f));
  const double target = I(limit);
  InequalityTracker track(0.0);
  Mask disagree = 0;

  if (kind == ConvergenceKind::monotone) {
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (sequence[k][i].value() > sequence[k + 1][i].value())
          return CheckResult::hypothesis_failed("sequence is not nondecreasing at term " + std::to_string(k + 1),
                                                Witness{{singleton(i)}, {sequence[k][i].value(), sequence[k + 1][i].value()}, "f_k(x) > f_{k+1}(x)"});
    for (std::size_t i = 0; i < n; ++i)
      if (sequence.back()[i].value() != limit[i].value()) disagree |= singleton(i);
    if (mu(disagree).value() != 0.0)
      return CheckResult::hypothesis_failed("terminal term differs from the limit on a set of positive measure", Witness{{disagree}, {}, ""});
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
      track.record(values[k], values[k + 1], [&] { return Witness{{}, {double(k + 1), values[k], values[k + 1]}, "integrals decrease"}; });
    auto w = [&] { return Witness{{disagree}, {values.back(), target}, "terminal integral != integral of the limit"}; };
    track.record(values.back(), target, w);
    track.record(target, values.back(), w);
  } else {
    const std::size_t from = sequence.size() / 2;
    for (std::size_t i = 0; i < n; ++i) {
      double m = kInf;
      for (std::size_t k = from; k < sequence.size(); ++k) m = std::min(m, sequence[k][i].value());
      if (m != limit[i].value()) disagree |= singleton(i);
    }
    if (mu(disagree).value() != 0.0)
      return CheckResult::hypothesis_failed("limit differs from the tail infimum on a set of positive measure", Witness{{disagree}, {}, ""});
    const double tail_min = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(from), values.end());
    track.record(target, tail_min, [&] { return Witness{{}, {target, tail_min}, "integral of the limit exceeds the tail minimum"}; });
  }
  auto r = track.result();
  r.note = std::string(to_string(kind)) + ": limit integral " + to_string(XReal(target)) + ", terminal " + to_string(XReal(values.back())) +
           (disagree ? ", disagreement on null set " + mask_to_string(disagree) : "");
  return r;
}

// ---------------------------------------------------------------------------
// Convergence of means
// ---------------------------------------------------------------------------

/**
 * |M(f_n) - M(f)| <= d(f_n, f) + 1e-12 at every n, with M(f) = d(f, 0). The
 * distances must be nonincreasing toward the terminal term.
 */
inline CheckResult verify_doltw3(const MetricSpec& spec, const MonotoneMeasure& mu, const std::vector<RealVector>& sequence,
                                 const RealVector& limit) {
  if (spec.kind != MetricKind::d_op_p) return CheckResult::hypothesis_failed("convergence of means is stated for d_op_p");
  if (auto fail = metric_gate(spec)) return *fail;
  auto sub = check_measure_property(mu, MeasureProperty::subadditive);
  if (!sub.holds()) return CheckResult::hypothesis_failed("mu is not subadditive", sub.witness);
  const RealVector zero(limit.size(), 0.0);
  const double m_limit = d_op_p_distance(limit, zero, mu, *spec.op, spec.p);
  std::vector<double> dist;
  for (const auto& fn : sequence) dist.push_back(d_op_p_distance(fn, limit, mu, *spec.op, spec.p));
  for (std::size_t k = 0; k + 1 < dist.size(); ++k)
    if (dist[k + 1] > dist[k])
      return CheckResult::hypothesis_failed("d(f_n, f) increases at n = " + std::to_string(k + 2),
                                            Witness{{}, {dist[k], dist[k + 1]}, "distances must decrease toward the limit"});
  InequalityTracker track;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const double m_k = d_op_p_distance(sequence[k], zero, mu, *spec.op, spec.p);
    const double gap = std::abs(m_k - m_limit);
    track.record(gap, dist[k], [&] { return Witness{{}, {double(k + 1), m_k, m_limit, dist[k]}, "|M(f_n) - M(f)| > d(f_n, f)"}; });
  }
  auto r = track.result();
  r.note = "terminal distance " + to_string(XReal(dist.empty() ? 0.0 : dist.back())) +
           "; a finite space cannot separate continuous from discontinuous measures";
  return r;
}

/// f_n = f + s_n * noise_n with s_n halving from 1 to 2^-(terms-1); the last term is f.
inline std::vector<RealVector> decreasing_sequence(const RealVector& f, std::size_t terms, Rng& rng) {
  std::vector<RealVector> seq;
  const auto noise = detail::random_real(rng, f.size(), -1.0, 1.0, 1.0 / 16.0);
  for (std::size_t k = 0; k < terms; ++k) {
    RealVector v(f);
    if (k + 1 < terms) {
      const double s = std::ldexp(1.0, -static_cast<int>(k));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * noise[i];
    }
    seq.push_back(std::move(v));
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Completeness probe
// ---------------------------------------------------------------------------

/**
 * The quantitative chain behind completeness on a finite sequence (f_k),
 * k = 1..K: with D_k = d(f_{k+1}, f_k)^(p^2+1) <= 4^(-kp) (the premise) and
 * A_k = {|f_{k+1} - f_k|^p >= 2^-k}, check 2^-k o mu(A_k) <= D_k,
 * 1 o mu(A_k) <= 2^(kp) (2^-k o mu(A_k)) <= 2^(-kp), mu(A_k) <= 2^(-kp), and
 * sup_{r >= k} |f_r - f_k| <= 2^(-k/p) / (1 - 2^(-1/p)) off the union of A_j, j >= k.
 * A premise failure is reported as hypothesis_failed.
 */
inline CheckResult cauchy_chain(const MetricSpec& spec, const MonotoneMeasure& mu, const std::vector<RealVector>& seq) {
  if (spec.kind != MetricKind::d_op_p) return CheckResult::hypothesis_failed("the bound chain is stated for d_op_p");
  if (auto fail = metric_gate(spec)) return *fail;
  auto sub = check_measure_property(mu, MeasureProperty::subadditive);
  if (!sub.holds()) return CheckResult::hypothesis_failed("mu is not subadditive", sub.witness);
  const auto& op = *spec.op;
  const double p = spec.p;
  const std::size_t n = mu.size();
  InequalityTracker track;
  std::vector<Mask> a_sets;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    const auto& cur = seq[k - 1];
    const auto& next = seq[k];
    const double kk = static_cast<double>(k);
    const double big_d = xpow(d_op_p_distance(next, cur, mu, op, p), p * p + 1.0);
    const double premise = std::pow(4.0, -kk * p);
    if (!approx_le(big_d, premise))
      return CheckResult::hypothesis_failed("premise failed at k = " + std::to_string(k) + ": d^(p^2+1) exceeds 4^(-kp)",
                                            Witness{{}, {kk, big_d, premise}, "premise failed"});
    Mask a = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (xpow(std::abs(next[i] - cur[i]), p) >= std::ldexp(1.0, -static_cast<int>(k))) a |= singleton(i);
    a_sets.push_back(a);
    const double mu_a = mu(a).value();
    const double low = op.raw(std::ldexp(1.0, -static_cast<int>(k)), mu_a);
    const double one = op.raw(1.0, mu_a);
    const double scaled = xmul(std::pow(2.0, kk * p), low);
    const double bound = std::pow(2.0, -kk * p);
    auto w = [&](const char* what) { return [&, what] { return Witness{{a}, {kk, big_d, low, one, scaled, mu_a}, what}; }; };
    track.record(low, big_d, w("2^-k o mu(A_k) > d^(p^2+1)"));
    track.record(one, scaled, w("1 o mu(A_k) > 2^(kp) (2^-k o mu(A_k))"));
    track.record(scaled, bound, w("2^(kp) (2^-k o mu(A_k)) > 2^(-kp)"));
    track.record(mu_a, bound, w("mu(A_k) > 2^(-kp)"));
  }
  const double ratio = 1.0 / (1.0 - std::pow(2.0, -1.0 / p));
  for (std::size_t k = 1; k < seq.size(); ++k) {
    Mask tail_union = 0;
    for (std::size_t j = k; j <= a_sets.size(); ++j) tail_union |= a_sets[j - 1];
    const double bound = std::pow(2.0, -static_cast<double>(k) / p) * ratio;
    for (std::size_t i = 0; i < n; ++i) {
      if (contains_point(tail_union, i)) continue;
      double sup = 0.0;
      for (std::size_t r = k; r <= seq.size(); ++r) sup = std::max(sup, std::abs(seq[r - 1][i] - seq[k - 1][i]));
      track.record(sup, bound, [&] { return Witness{{singleton(i)}, {double(k), sup, bound}, "pointwise tail exceeds the geometric bound"}; });
    }
  }
  auto r = track.result();
  r.note = "bound chain over " + std::to_string(a_sets.size()) + " steps (a probe of the completeness argument, not a proof)";
  return r;
}

/**
 * Builds a sequence converging to a seeded limit whose consecutive steps are
 * shrunk (halving, at most 200 times) until each satisfies the premise, then
 * runs the bound chain.
 */
inline CheckResult cauchy_probe(const MetricSpec& spec, const MonotoneMeasure& mu, std::uint64_t seed, std::size_t terms = 8) {
  if (spec.kind != MetricKind::d_op_p) return CheckResult::hypothesis_failed("the bound chain is stated for d_op_p");
  if (auto fail = metric_gate(spec)) return *fail;
  const std::size_t n = mu.size();
  Rng rng(seed);
  const auto limit = detail::random_real(rng, n, -2.0, 2.0, 0.125);
  // Steps delta_k, k = 1..terms-1; f_k = limit + sum_{j >= k} delta_j so f_terms = limit.
  std::vector<RealVector> deltas(terms > 0 ? terms - 1 : 0);
  for (std::size_t k = 1; k < terms; ++k) {
    auto step = detail::random_real(rng, n, -1.0, 1.0, 1.0 / 16.0);
    const double premise = std::pow(4.0, -static_cast<double>(k) * spec.p);
    const RealVector zero(n, 0.0);
    for (int tries = 0; tries < 200; ++tries) {
      if (approx_le(xpow(d_op_p_distance(step, zero, mu, *spec.op, spec.p), spec.p * spec.p + 1.0), premise)) break;
      for (auto& v : step) v *= 0.5;
    }
    deltas[k - 1] = std::move(step);
  }
  std::vector<RealVector> seq(terms, limit);
  for (std::size_t k = terms; k-- > 1;) {
    seq[k - 1] = seq[k];
    for (std::size_t i = 0; i < n; ++i) seq[k - 1][i] += deltas[k - 1][i];
  }
  return cauchy_chain(spec, mu, seq);
}

}  // namespace nonadditive

#endif  // NONADDITIVE_METRICS_HPP
