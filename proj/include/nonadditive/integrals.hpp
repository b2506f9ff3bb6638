#ifndef NONADDITIVE_INTEGRALS_HPP
#define NONADDITIVE_INTEGRALS_HPP

#include <string>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/maps.hpp"
#include "nonadditive/measures.hpp"
#include "nonadditive/operators.hpp"

namespace nonadditive {

enum class IntegralKind { upper_generalized, lower_generalized, sugeno, shilkret, seminormed };

inline const char* to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::upper_generalized: return "upper";
    case IntegralKind::lower_generalized: return "lower";
    case IntegralKind::sugeno: return "sugeno";
    case IntegralKind::shilkret: return "shilkret";
    case IntegralKind::seminormed: return "seminormed";
  }
  return "?";
}

inline IntegralKind parse_integral_kind(const std::string& s) {
  for (auto k : {IntegralKind::upper_generalized, IntegralKind::lower_generalized, IntegralKind::sugeno,
                 IntegralKind::shilkret, IntegralKind::seminormed})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown integral kind '" + s + "'");
}

/// Value of an integral with the level where it is attained.
struct IntegralValue {
  double value = 0.0;
  double level = 0.0;
  /// Set when the value is a sup over a non-closed scale taken at its representative top.
  bool grid_bounded = false;
};

namespace detail {

inline void require_integrand(const Fn& f, const BinaryOp& op, Mask domain, const char* who) {
  f.space().require_valid(domain);
  op.require({OpFlag::nondecreasing}, who);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!op.scale().contains(f[i]))
      throw ScaleError(std::string(who) + ": f(" + std::to_string(i) + ") = " + to_string(f[i]) + " outside " + op.scale().describe());
}

inline void require_same_space(const Fn& f, const MonotoneMeasure& mu, const char* who) {
  if (f.size() != mu.size())
    throw std::invalid_argument(std::string(who) + ": function has " + std::to_string(f.size()) + " points, measure " +
                                std::to_string(mu.size()));
}

}  // namespace detail

/**
 * sup over t in Y of t o mu(D n {f >= t}), evaluated at the levels {0} and the
 * values of f on D. Above max f the level set is empty, which contributes
 * sup_t t o 0; that term is taken at the scale's top when o is not
 * zero-annihilating on the right.
 */
inline IntegralValue evaluate_upper(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, Mask domain) {
  detail::require_same_space(f, mu, "upper_integral");
  detail::require_integrand(f, op, domain, "upper_integral");
  IntegralValue best{op.raw(0.0, mu(domain).value()), 0.0, false};
  for (double t : f.distinct_values(domain)) {
    const double v = op.raw(t, mu(f.level_geq(t, domain)).value());
    if (v > best.value) best = {v, t, false};
  }
  if (!op.verified(OpFlag::zero_right_annihilator)) {
    const double top = op.scale().top();
    const double v = op.raw(top, 0.0);
    if (v > best.value) best = {v, top, !op.scale().closed()};
  }
  return best;
}

inline XReal upper_integral(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, Mask domain) {
  return evaluate_upper(f, mu, op, domain).value;
}

inline XReal upper_integral(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op) {
  return upper_integral(f, mu, op, f.space().full());
}

/// inf over t in Y of t o mu(D n {f > t}), evaluated at {0} and the values of f on D.
inline IntegralValue evaluate_lower(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, Mask domain) {
  detail::require_same_space(f, mu, "lower_integral");
  detail::require_integrand(f, op, domain, "lower_integral");
  IntegralValue best{op.raw(0.0, mu(f.level_gt(0.0, domain)).value()), 0.0, false};
  for (double t : f.distinct_values(domain)) {
    const double v = op.raw(t, mu(f.level_gt(t, domain)).value());
    if (v < best.value) best = {v, t, false};
  }
  return best;
}

inline XReal lower_integral(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, Mask domain) {
  return evaluate_lower(f, mu, op, domain).value;
}

inline XReal lower_integral(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op) {
  return lower_integral(f, mu, op, f.space().full());
}

inline XReal sugeno_integral(const Fn& f, const MonotoneMeasure& mu, Mask domain) {
  return upper_integral(f, mu, ops::minimum(f.scale()), domain);
}

inline XReal shilkret_integral(const Fn& f, const MonotoneMeasure& mu, Mask domain) {
  return upper_integral(f, mu, ops::product(f.scale()), domain);
}

/// sup_t S(t, mu(D n {f >= t})) for a semicopula S on [0, 1].
inline XReal seminormed_integral(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& s, Mask domain) {
  const auto semi = check_semicopula(s);
  if (!semi.holds()) throw HypothesisError("seminormed_integral: " + semi.note);
  return upper_integral(f, mu, s, domain);
}

inline XReal integral(IntegralKind kind, const Fn& f, const MonotoneMeasure& mu, const std::optional<BinaryOp>& op, Mask domain) {
  auto need_op = [&]() -> const BinaryOp& {
    if (!op) throw std::invalid_argument(std::string(to_string(kind)) + " integral needs an operator");
    return *op;
  };
  switch (kind) {
    case IntegralKind::upper_generalized: return upper_integral(f, mu, need_op(), domain);
    case IntegralKind::lower_generalized: return lower_integral(f, mu, need_op(), domain);
    case IntegralKind::sugeno: return sugeno_integral(f, mu, domain);
    case IntegralKind::shilkret: return shilkret_integral(f, mu, domain);
    case IntegralKind::seminormed: return seminormed_integral(f, mu, need_op(), domain);
  }
  return XReal{};
}

/**
 * sup over A subset of D of (inf_A f) o mu(A), by enumeration. The empty set
 * enters with inf = top of Y, matching the upper integral's t o 0 term.
 */
inline XReal upper_integral_subset_oracle(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, Mask domain) {
  detail::require_same_space(f, mu, "upper_integral_subset_oracle");
  f.space().require_valid(domain);
  if (cardinality(domain) > 20) throw std::invalid_argument("upper_integral_subset_oracle: |D| must be <= 20");
  double best = op.raw(op.scale().top(), 0.0);
  for_each_submask(domain, [&](Mask a) {
    if (a == 0) return;
    best = std::max(best, op.raw(f.inf_over(a), mu(a).value()));
  });
  return best;
}

/// Lower integral with max against the Sugeno integral on the same instance.
inline CheckResult check_cd16(const Fn& f, const MonotoneMeasure& mu, Mask domain) {
  const double lower = lower_integral(f, mu, ops::maximum(f.scale()), domain).value();
  const double upper = sugeno_integral(f, mu, domain).value();
  InequalityTracker track(mu.exact() ? 0.0 : kTolerance);
  auto w = [&] { return Witness{{domain}, {lower, upper}, "lower(max) != sugeno"}; };
  track.record(lower, upper, w);
  track.record(upper, lower, w);
  auto r = track.result();
  r.note = "lower=" + to_string(XReal(lower)) + " sugeno=" + to_string(XReal(upper));
  return r;
}

// ---------------------------------------------------------------------------
// Survival profiles
// ---------------------------------------------------------------------------

struct ProfileIntegral {
  double value = 0.0;
  double argmax = 0.0;
  double uncertainty = 0.0;
  double spacing = 0.0;
  bool grid_bounded = false;
};

/**
 * Grid supremum of t o G(t) at the given spacing, refined once on a 64x finer
 * grid around the coarse argmax. The uncertainty is (1 + L) * spacing for a
 * profile with Lipschitz bound L (assuming o is 1-Lipschitz), else the spacing.
 */
inline ProfileIntegral profile_integral(const SurvivalProfile& profile, const BinaryOp& op, double resolution = 1e-4) {
  if (!(resolution > 0.0)) throw std::invalid_argument("profile_integral: resolution must be > 0");
  if (!(profile.domain() == op.scale()))
    throw std::invalid_argument("profile_integral: profile domain " + profile.domain().describe() + " differs from operator scale " +
                                op.scale().describe());
  op.require({OpFlag::nondecreasing}, "profile_integral");
  const double end = std::min(profile.horizon(), profile.domain().top());
  ProfileIntegral out;
  out.spacing = resolution;
  auto consider = [&](double t) {
    if (t < 0.0 || t > end) return;
    const double v = op.raw(t, profile(t).value());
    if (v > out.value) {
      out.value = v;
      out.argmax = t;
    }
  };
  const auto steps = static_cast<std::size_t>(std::ceil(end / resolution));
  for (std::size_t k = 0; k <= steps; ++k) consider(std::min(end, static_cast<double>(k) * resolution));
  const double centre = out.argmax;
  const double fine = resolution / 64.0;
  for (int k = -64; k <= 64; ++k) consider(centre + k * fine);
  // Past the horizon G is constant, so the sup there sits at the top of Y.
  const double top = profile.domain().top();
  if (top > end) {
    const double v = op.raw(top, profile(top).value());
    if (v > out.value) {
      out.value = v;
      out.argmax = top;
      out.grid_bounded = !profile.domain().closed();
    }
  }
  out.uncertainty = profile.lipschitz() ? (1.0 + *profile.lipschitz()) * resolution : resolution;
  return out;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/**
 * h^-1(lower_o(h(f), mu)) against upper_{o_h}(f, mu_h) on X, with
 * mu_h(A) = h^-1(mu(X \ A)) and a o_h b = h^-1(h(a) o h(b)).
 */
inline CheckResult check_duality_dol13(const Fn& f, const MonotoneMeasure& mu, const BinaryOp& op, const DualityMap& h) {
  if (auto fail = op.missing({OpFlag::nondecreasing}, "dol13")) return *fail;
  const Fn hf = map_values(f, [&](double x) { return h(x); }, h.scale());
  const double lhs = h.inverse(lower_integral(hf, mu, op).value());
  const MonotoneMeasure mu_h = dual_measure_h(mu, h);
  const BinaryOp op_h = op_dual(op, h);
  if (auto fail = op_h.missing({OpFlag::nondecreasing}, "dual")) return *fail;
  const Fn f_in = Fn(f.values(), h.scale());
  const double rhs = upper_integral(f_in, mu_h, op_h).value();
  InequalityTracker track(kTolerance);
  auto w = [&] { return Witness{{}, {lhs, rhs}, "h^-1(lower(h f)) != upper_h(f, mu_h)"}; };
  track.record(lhs, rhs, w);
  track.record(rhs, lhs, w);
  auto r = track.result();
  r.note = "lhs=" + to_string(XReal(lhs)) + " rhs=" + to_string(XReal(rhs));
  return r;
}

}  // namespace nonadditive

#endif  // NONADDITIVE_INTEGRALS_HPP
