#ifndef NONADDITIVE_OPERATORS_HPP
#define NONADDITIVE_OPERATORS_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/maps.hpp"

namespace nonadditive {

enum class OpFlag : unsigned {
  nondecreasing,
  right_continuous,
  left_continuous_second,
  zero_left_annihilator,   // 0 o x = 0
  zero_right_annihilator,  // y o 0 = 0
  neutral_one,
  commutative,
  top_absorbing,  // m o y = y o m = m on a closed scale [0, m]
};

inline constexpr std::size_t kOpFlagCount = 8;

inline const char* to_string(OpFlag f) {
  switch (f) {
    case OpFlag::nondecreasing: return "nondecreasing";
    case OpFlag::right_continuous: return "right_continuous";
    case OpFlag::left_continuous_second: return "left_continuous_second";
    case OpFlag::zero_left_annihilator: return "zero_left_annihilator";
    case OpFlag::zero_right_annihilator: return "zero_right_annihilator";
    case OpFlag::neutral_one: return "neutral_one";
    case OpFlag::commutative: return "commutative";
    case OpFlag::top_absorbing: return "top_absorbing";
  }
  return "?";
}

inline OpFlag parse_op_flag(const std::string& s) {
  for (unsigned i = 0; i < kOpFlagCount; ++i)
    if (s == to_string(static_cast<OpFlag>(i))) return static_cast<OpFlag>(i);
  throw std::invalid_argument("unknown operator flag '" + s + "'");
}

class BinaryOp;
CheckResult check_operator_property(const BinaryOp& op, OpFlag flag);

/**
 * A binary operator on a value scale Y with declared algebraic flags.
 *
 * Declared flags are verified lazily on the standard grid and the results are
 * cached; copies share the cache. Theorem verifiers accept an operator only
 * when each flag they need is both declared and verified.
 */
class BinaryOp {
 public:
  using Eval = std::function<double(double, double)>;

  BinaryOp(std::string name, ValueScale scale, Eval eval, std::vector<OpFlag> declared)
      : name_(std::move(name)), scale_(scale), eval_(std::move(eval)), cache_(std::make_shared<Cache>()) {
    for (auto f : declared) declared_[static_cast<unsigned>(f)] = true;
  }

  const std::string& name() const { return name_; }
  const ValueScale& scale() const { return scale_; }
  bool declares(OpFlag f) const { return declared_[static_cast<unsigned>(f)]; }

  std::vector<OpFlag> declared_flags() const {
    std::vector<OpFlag> out;
    for (unsigned i = 0; i < kOpFlagCount; ++i)
      if (declared_[i]) out.push_back(static_cast<OpFlag>(i));
    return out;
  }

  /// Evaluates with both arguments checked against Y.
  double operator()(double a, double b) const {
    if (!scale_.contains(a) || !scale_.contains(b))
      throw ScaleError("op_eval(" + name_ + "): argument (" + to_string(XReal(std::max(a, 0.0))) + ", " +
                       to_string(XReal(std::max(b, 0.0))) + ") outside " + scale_.describe());
    return eval_(a, b);
  }

  /// Unchecked evaluation; the second argument may be any measure value.
  double raw(double a, double b) const { return eval_(a, b); }

  /// Grid verification of a flag (whether or not it is declared); cached.
  const CheckResult& verification(OpFlag f) const {
    const auto idx = static_cast<unsigned>(f);
    std::call_once(cache_->once[idx], [&] { cache_->results[idx] = check_operator_property(*this, f); });
    return cache_->results[idx];
  }

  bool verified(OpFlag f) const { return declares(f) && verification(f).holds(); }

  /// Hypothesis-failed result naming the first required flag that is undeclared or fails on the grid.
  std::optional<CheckResult> missing(std::initializer_list<OpFlag> flags, const std::string& role) const {
    for (auto f : flags) {
      if (!declares(f))
        return CheckResult::hypothesis_failed(role + " operator '" + name_ + "' does not declare " + to_string(f));
      const auto& v = verification(f);
      if (!v.holds())
        return CheckResult::hypothesis_failed(role + " operator '" + name_ + "' fails declared " + to_string(f) + " on the grid",
                                              v.witness);
    }
    return std::nullopt;
  }

  void require(std::initializer_list<OpFlag> flags, const std::string& role) const {
    if (auto fail = missing(flags, role)) throw HypothesisError(fail->note);
  }

 private:
  struct Cache {
    std::array<std::once_flag, kOpFlagCount> once;
    std::array<CheckResult, kOpFlagCount> results;
  };

  std::string name_;
  ValueScale scale_;
  Eval eval_;
  std::array<bool, kOpFlagCount> declared_{};
  std::shared_ptr<Cache> cache_;
};

inline XReal op_eval(const BinaryOp& op, XReal a, XReal b) { return XReal(op(a.value(), b.value())); }

// ---------------------------------------------------------------------------
// Flag checks
// ---------------------------------------------------------------------------

namespace detail {

/// Jump estimate along a dyadic sequence eps = 2^-k: passes when the gap at
/// 2^-50 is negligible or still shrinking relative to 2^-25.
inline bool dyadic_limit_ok(const std::function<double(double)>& gap) {
  const double far = gap(std::ldexp(1.0, -25));
  const double near = gap(std::ldexp(1.0, -50));
  if (!(near == near)) return false;
  return near <= 1e-9 || near <= 0.5 * far;
}

inline double abs_gap(double x, double y) {
  if (x == y) return 0.0;
  if (std::isinf(x) || std::isinf(y)) return kInf;
  return std::abs(x - y);
}

}  // namespace detail

/// Sampled check of one operator flag on the standard grid of the operator's scale.
inline CheckResult check_operator_property(const BinaryOp& op, OpFlag flag) {
  const auto& scale = op.scale();
  const auto grid = standard_grid(scale);
  InequalityTracker track(kTolerance);
  auto w = [](const std::string& what, std::vector<double> v) { return Witness{{}, std::move(v), what}; };

  switch (flag) {
    case OpFlag::nondecreasing:
      for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const double a = grid[i], b = grid[j], v = op.raw(a, b);
          if (i + 1 < grid.size()) {
            const double v2 = op.raw(grid[i + 1], b);
            track.record(v, v2, [&] { return w("op(a, b) > op(a', b) with a < a'", {a, b, grid[i + 1], v, v2}); });
          }
          if (j + 1 < grid.size()) {
            const double v2 = op.raw(a, grid[j + 1]);
            track.record(v, v2, [&] { return w("op(a, b) > op(a, b') with b < b'", {a, b, grid[j + 1], v, v2}); });
          }
        }
      return track.result(CheckMode::sampled);

    case OpFlag::right_continuous:
      for (double a : grid)
        for (double b : grid) {
          if (std::isinf(a) || std::isinf(b)) continue;
          if (!scale.contains(a + std::ldexp(1.0, -20)) || !scale.contains(b + std::ldexp(1.0, -20))) continue;
          const double v = op.raw(a, b);
          const bool ok = detail::dyadic_limit_ok([&](double e) { return detail::abs_gap(op.raw(a + e, b + e), v); });
          track.record(ok ? 0.0 : 1.0, 0.0, [&] {
            return w("op(a + eps, b + eps) does not approach op(a, b)", {a, b, v, op.raw(a + std::ldexp(1.0, -50), b + std::ldexp(1.0, -50))});
          });
        }
      return track.result(CheckMode::sampled);

    case OpFlag::left_continuous_second:
      for (double a : grid)
        for (double b : grid) {
          if (b == 0.0 || std::isinf(b)) continue;
          const double v = op.raw(a, b);
          const bool ok = detail::dyadic_limit_ok([&](double e) { return detail::abs_gap(op.raw(a, std::max(0.0, b - e)), v); });
          track.record(ok ? 0.0 : 1.0, 0.0, [&] {
            return w("op(a, b - eps) does not approach op(a, b)", {a, b, v, op.raw(a, b - std::ldexp(1.0, -50))});
          });
        }
      return track.result(CheckMode::sampled);

    case OpFlag::zero_left_annihilator:
      for (double x : grid) {
        const double v = op.raw(0.0, x);
        track.record(v, 0.0, [&] { return w("0 o x != 0", {x, v}); });
      }
      return track.result(CheckMode::sampled);

    case OpFlag::zero_right_annihilator:
      for (double y : grid) {
        const double v = op.raw(y, 0.0);
        track.record(v, 0.0, [&] { return w("y o 0 != 0", {y, v}); });
      }
      return track.result(CheckMode::sampled);

    case OpFlag::neutral_one: {
      if (!scale.contains(1.0)) return CheckResult::hypothesis_failed("1 is not in " + scale.describe());
      for (double y : grid) {
        const double l = op.raw(1.0, y), r = op.raw(y, 1.0);
        const double gap = std::max(detail::abs_gap(l, y), detail::abs_gap(r, y));
        track.record(gap, 0.0, [&] { return w("1 o y != y or y o 1 != y", {y, l, r}); });
      }
      return track.result(CheckMode::sampled);
    }

    case OpFlag::commutative:
      for (double a : grid)
        for (double b : grid) {
          const double l = op.raw(a, b), r = op.raw(b, a);
          const double gap = detail::abs_gap(l, r) / std::max(1.0, std::isinf(l) ? 1.0 : std::abs(l));
          track.record(gap, 0.0, [&] { return w("a o b != b o a", {a, b, l, r}); });
        }
      return track.result(CheckMode::sampled);

    case OpFlag::top_absorbing: {
      if (!scale.closed()) return CheckResult::hypothesis_failed("top_absorbing needs a closed scale");
      const double m = scale.upper().value();
      for (double y : grid) {
        const double l = op.raw(m, y), r = op.raw(y, m);
        const double gap = std::max(detail::abs_gap(l, m), detail::abs_gap(r, m));
        track.record(gap, 0.0, [&] { return w("m o y != m or y o m != m", {y, l, r}); });
      }
      return track.result(CheckMode::sampled);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace ops {

namespace detail {

/// x^e with the conventions 0^0 = 1 and inf^e = inf for e > 0.
inline double powe(double x, double e) {
  if (e == 0.0) return 1.0;
  return xpow(x, e);
}

/// One shared instance per key, so flag verification runs once per process.
inline BinaryOp interned(const std::string& key, const std::function<BinaryOp()>& make) {
  static std::mutex mutex;
  static std::map<std::string, BinaryOp> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make()).first;
  return it->second;
}

inline std::string param_name(const std::string& base, std::initializer_list<double> params) {
  std::string s = base + "(";
  bool first = true;
  for (double p : params) {
    if (!first) s += ",";
    s += to_string(XReal(p));
    first = false;
  }
  return s + ")";
}

}  // namespace detail

using enum OpFlag;

inline BinaryOp minimum(ValueScale scale = ValueScale::unit()) {
  return detail::interned("min@" + scale.describe(), [=]() -> BinaryOp {
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator,
                              zero_right_annihilator, commutative};
    if (scale == ValueScale::unit()) flags.push_back(neutral_one);
    return {"min", scale, [](double a, double b) { return std::min(a, b); }, flags};
  });
}

inline BinaryOp maximum(ValueScale scale = ValueScale::unit()) {
  return detail::interned("max@" + scale.describe(), [=]() -> BinaryOp {
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, commutative};
    if (scale.closed()) flags.push_back(top_absorbing);
    return {"max", scale, [](double a, double b) { return std::max(a, b); }, flags};
  });
}

inline BinaryOp product(ValueScale scale = ValueScale::unit()) {
  return detail::interned("product@" + scale.describe(), [=]() -> BinaryOp {
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator,
                              zero_right_annihilator, commutative};
    if (scale.contains(1.0)) flags.push_back(neutral_one);
    return {"product", scale, [](double a, double b) { return xmul(a, b); }, flags};
  });
}

/// S_L(a, b) = (a + b - 1)_+ on [0, 1].
inline BinaryOp lukasiewicz_tnorm() {
  return detail::interned("lukasiewicz_tnorm", [=]() -> BinaryOp {
    return {"lukasiewicz_tnorm", ValueScale::unit(), [](double a, double b) { return std::max(a + b - 1.0, 0.0); },
            {nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator, zero_right_annihilator,
             neutral_one, commutative}};
  });
}

/// (a + b) ^ 1 on [0, 1].
inline BinaryOp bounded_sum() {
  return detail::interned("bounded_sum", [=]() -> BinaryOp {
    return {"bounded_sum", ValueScale::unit(), [](double a, double b) { return std::min(a + b, 1.0); },
            {nondecreasing, right_continuous, left_continuous_second, commutative, top_absorbing}};
  });
}

inline BinaryOp sum(ValueScale scale = ValueScale::extended_half_line()) {
  return detail::interned("sum@" + scale.describe(), [=]() -> BinaryOp {
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, commutative};
    if (!scale.bounded() && scale.closed()) flags.push_back(top_absorbing);
    return {"sum", scale, [](double a, double b) { return a + b; }, flags};
  });
}

/// a + b - ab on [0, 1].
inline BinaryOp probabilistic_sum() {
  return detail::interned("probabilistic_sum", [=]() -> BinaryOp {
    return {"probabilistic_sum", ValueScale::unit(), [](double a, double b) { return a + b - a * b; },
            {nondecreasing, right_continuous, left_continuous_second, commutative, top_absorbing}};
  });
}

/// Marshall-Olkin semicopula (x^(1-alpha) y) ^ (x y^(1-beta)), alpha, beta in [0, 1].
inline BinaryOp marshall_olkin(double alpha, double beta) {
  return detail::interned(detail::param_name("marshall_olkin", {alpha, beta}), [=]() -> BinaryOp {
    if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
      throw std::invalid_argument("marshall_olkin: alpha and beta must lie in [0, 1]");
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator,
                              zero_right_annihilator, neutral_one};
    if (alpha == beta) flags.push_back(commutative);
    return {detail::param_name("marshall_olkin", {alpha, beta}), ValueScale::unit(),
            [alpha, beta](double x, double y) {
              if (x == 0.0 || y == 0.0) return 0.0;
              return std::min(detail::powe(x, 1.0 - alpha) * y, x * detail::powe(y, 1.0 - beta));
            },
            flags};
  });
}

/// (ab)^q.
inline BinaryOp modified_shilkret(double q, ValueScale scale = ValueScale::half_line()) {
  return detail::interned(detail::param_name("modified_shilkret", {q}) + "@" + scale.describe(), [=]() -> BinaryOp {
    if (!(q > 0.0)) throw std::invalid_argument("modified_shilkret: q must be > 0");
    return {detail::param_name("modified_shilkret", {q}), scale, [q](double a, double b) { return xpow(xmul(a, b), q); },
            {nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator, zero_right_annihilator,
             commutative}};
  });
}

/// x^p ^ y^u.
inline BinaryOp power_min(double p, double u, ValueScale scale = ValueScale::extended_half_line()) {
  return detail::interned(detail::param_name("power_min", {p, u}) + "@" + scale.describe(), [=]() -> BinaryOp {
    if (!(p > 0.0) || !(u > 0.0)) throw std::invalid_argument("power_min: exponents must be > 0");
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator,
                              zero_right_annihilator};
    if (p == u) flags.push_back(commutative);
    return {detail::param_name("power_min", {p, u}), scale, [p, u](double x, double y) { return std::min(xpow(x, p), xpow(y, u)); },
            flags};
  });
}

/// x^p y^u with 0 * inf = 0.
inline BinaryOp power_product(double p, double u, ValueScale scale = ValueScale::extended_half_line()) {
  return detail::interned(detail::param_name("power_product", {p, u}) + "@" + scale.describe(), [=]() -> BinaryOp {
    if (!(p > 0.0) || !(u > 0.0)) throw std::invalid_argument("power_product: exponents must be > 0");
    std::vector<OpFlag> flags{nondecreasing, right_continuous, left_continuous_second, zero_left_annihilator,
                              zero_right_annihilator};
    if (p == u) flags.push_back(commutative);
    return {detail::param_name("power_product", {p, u}), scale, [p, u](double x, double y) { return xmul(xpow(x, p), xpow(y, u)); },
            flags};
  });
}

/// Operator built by name, as referenced from scenarios.
inline BinaryOp by_name(const std::string& name, const std::vector<double>& params, std::optional<ValueScale> scale = std::nullopt) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("operator '" + name + "' takes " + std::to_string(k) + " parameter(s), got " +
                                  std::to_string(params.size()));
  };
  auto fixed_unit = [&] {
    if (scale && !(*scale == ValueScale::unit()))
      throw std::invalid_argument("operator '" + name + "' is only defined on [0,1]");
  };
  if (name == "min") return need(0), minimum(scale.value_or(ValueScale::unit()));
  if (name == "max") return need(0), maximum(scale.value_or(ValueScale::unit()));
  if (name == "product") return need(0), product(scale.value_or(ValueScale::unit()));
  if (name == "sum") return need(0), sum(scale.value_or(ValueScale::extended_half_line()));
  if (name == "lukasiewicz_tnorm") return need(0), fixed_unit(), lukasiewicz_tnorm();
  if (name == "bounded_sum") return need(0), fixed_unit(), bounded_sum();
  if (name == "probabilistic_sum") return need(0), fixed_unit(), probabilistic_sum();
  if (name == "marshall_olkin") return need(2), fixed_unit(), marshall_olkin(params[0], params[1]);
  if (name == "modified_shilkret") return need(1), modified_shilkret(params[0], scale.value_or(ValueScale::half_line()));
  if (name == "power_min") return need(2), power_min(params[0], params[1], scale.value_or(ValueScale::extended_half_line()));
  if (name == "power_product")
    return need(2), power_product(params[0], params[1], scale.value_or(ValueScale::extended_half_line()));
  throw std::invalid_argument("unknown operator '" + name + "'");
}

inline std::vector<std::string> catalog_names() {
  return {"min", "max", "product", "sum", "lukasiewicz_tnorm", "bounded_sum", "probabilistic_sum", "marshall_olkin",
          "modified_shilkret", "power_min", "power_product"};
}

}  // namespace ops

/**
 * The h-dual a o_h b = h^-1(h(a) o h(b)). Flags are inferred: every flag that
 * passes the grid check on the dual is declared. Duals are memoized by operator
 * name, so distinct operators must carry distinct names.
 */
inline BinaryOp op_dual(const BinaryOp& op, const DualityMap& h) {
  const auto valid = h.validate();
  if (!valid.holds()) throw std::invalid_argument("op_dual: invalid duality map '" + h.name() + "'");
  if (!(op.scale() == h.scale()))
    throw std::invalid_argument("op_dual: operator scale " + op.scale().describe() + " differs from h scale " +
                                h.scale().describe());
  return ops::detail::interned("dual:" + op.name() + "@" + op.scale().describe() + "|" + h.name(), [&] {
  BinaryOp probe(op.name() + "_" + h.name(), h.scale(),
                 [op, h](double a, double b) { return h.inverse(op.raw(h(a), h(b))); }, {});
  std::vector<OpFlag> flags;
  for (unsigned i = 0; i < kOpFlagCount; ++i) {
    const auto f = static_cast<OpFlag>(i);
    if (check_operator_property(probe, f).holds()) flags.push_back(f);
  }
  return BinaryOp{probe.name(), h.scale(), [op, h](double a, double b) { return h.inverse(op.raw(h(a), h(b))); }, flags};
  });
}

/// True when op is a semicopula on [0, 1]: nondecreasing with neutral element 1 (grid-verified).
inline CheckResult check_semicopula(const BinaryOp& op) {
  if (!(op.scale() == ValueScale::unit())) return CheckResult::hypothesis_failed("semicopula must act on [0,1]");
  if (auto fail = op.missing({OpFlag::nondecreasing, OpFlag::neutral_one}, "semicopula")) return *fail;
  CheckResult r;
  r.mode = CheckMode::sampled;
  r.margin = 0.0;
  return r;
}

}  // namespace nonadditive

#endif  // NONADDITIVE_OPERATORS_HPP
