#ifndef NONADDITIVE_CORE_HPP
#define NONADDITIVE_CORE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nonadditive {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default comparison tolerance for inequality checks (scaled by max(1, |rhs|)).
inline constexpr double kTolerance = 1e-12;

/// Raised when a value falls outside the scale an operation is defined on.
class ScaleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a function's preconditions (verified hypotheses) do not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// XReal
// ---------------------------------------------------------------------------

/**
 * An extended nonnegative real: a value in [0, inf].
 *
 * Arithmetic is total: 0 * inf = 0, inf + x = inf, x / 0 = inf for x > 0,
 * x / inf = 0. Division is defined as a * (1 / b), so 0 / 0 = 0 and
 * inf / inf = 0 follow from the product convention.
 */
class XReal {
 public:
  constexpr XReal() = default;
  // Implicit on purpose: doubles flow in everywhere; the invariant is still enforced.
  constexpr XReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (!(v >= 0.0)) throw std::domain_error("XReal: value must be >= 0 or +inf, got " + std::to_string(v));
  }

  static constexpr XReal infinity() { return XReal(kInf); }

  constexpr double value() const { return v_; }
  constexpr bool is_inf() const { return v_ == kInf; }
  constexpr explicit operator double() const { return v_; }

  friend constexpr auto operator<=>(XReal a, XReal b) = default;

  friend constexpr XReal operator+(XReal a, XReal b) { return XReal(a.v_ + b.v_); }
  friend constexpr XReal operator*(XReal a, XReal b) {
    if (a.v_ == 0.0 || b.v_ == 0.0) return XReal(0.0);
    return XReal(a.v_ * b.v_);
  }

 private:
  double v_ = 0.0;
};

/// 1/0 = inf, 1/inf = 0.
constexpr XReal reciprocal(XReal a) {
  if (a.value() == 0.0) return XReal::infinity();
  if (a.is_inf()) return XReal(0.0);
  return XReal(1.0 / a.value());
}

constexpr XReal operator/(XReal a, XReal b) { return a * reciprocal(b); }

inline XReal min(XReal a, XReal b) { return a < b ? a : b; }
inline XReal max(XReal a, XReal b) { return a < b ? b : a; }

/// Shortest round-trip-safe text for any double, including signed infinities and NaN.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string to_string(XReal x) { return format_number(x.value()); }

enum class Combine { add, mul, div, min, max };

/// Total combination of two extended reals following the convention table.
inline XReal xreal_combine(XReal a, XReal b, Combine kind) {
  switch (kind) {
    case Combine::add: return a + b;
    case Combine::mul: return a * b;
    case Combine::div: return a / b;
    case Combine::min: return min(a, b);
    case Combine::max: return max(a, b);
  }
  return XReal{};
}

/// 0 * inf = 0 on raw doubles (both nonnegative).
inline double xmul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

/// x^p for x in [0, inf] and p > 0, with inf^p = inf and 0^p = 0.
inline double xpow(double x, double p) {
  if (x == 0.0) return 0.0;
  if (x == kInf) return kInf;
  return std::pow(x, p);
}

/// x^(1/p).
inline double xroot(double x, double p) { return xpow(x, 1.0 / p); }

/// a <= b within tolerance tol * max(1, |b|); infinities compare exactly.
inline bool approx_le(double a, double b, double tol = kTolerance) {
  if (a <= b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return a - b <= tol * std::max(1.0, std::abs(b));
}

inline bool approx_eq(double a, double b, double tol = kTolerance) {
  return approx_le(a, b, tol) && approx_le(b, a, tol);
}

// ---------------------------------------------------------------------------
// ValueScale
// ---------------------------------------------------------------------------

/// The range Y = [0, m] (closed) or [0, m) (half-open), 0 < m <= inf.
class ValueScale {
 public:
  ValueScale(XReal upper, bool closed) : upper_(upper), closed_(closed) {
    if (!(upper.value() > 0.0)) throw std::invalid_argument("ValueScale: upper bound must be > 0");
  }

  static ValueScale unit() { return {1.0, true}; }
  static ValueScale half_line() { return {XReal::infinity(), false}; }
  static ValueScale extended_half_line() { return {XReal::infinity(), true}; }

  XReal upper() const { return upper_; }
  bool closed() const { return closed_; }
  bool bounded() const { return !upper_.is_inf(); }

  bool contains(double y) const {
    if (!(y >= 0.0)) return false;
    return closed_ ? y <= upper_.value() : y < upper_.value();
  }
  bool contains(XReal y) const { return contains(y.value()); }

  /// Largest element of Y if it exists, otherwise a representative top used for
  /// grid-bounded evaluation (2^10 for unbounded scales, m - 2^-20 for [0, m)).
  double top() const {
    if (closed_) return upper_.value();
    if (upper_.is_inf()) return 1024.0;
    return upper_.value() - std::ldexp(1.0, -20) * upper_.value();
  }

  std::string describe() const {
    return "[0," + to_string(upper_) + (closed_ ? "]" : ")");
  }

  friend bool operator==(const ValueScale&, const ValueScale&) = default;

 private:
  XReal upper_;
  bool closed_;
};

inline bool scale_contains(const ValueScale& scale, XReal y) { return scale.contains(y); }

/**
 * Standard evaluation grid over Y: every multiple of `step` inside Y capped at
 * max(1, m) when m is finite, the endpoints, and for unbounded Y a geometric
 * ladder 2, 4, ..., 2^10 plus inf when Y is closed.
 */
inline std::vector<double> standard_grid(const ValueScale& scale, double step = 1.0 / 64.0) {
  std::vector<double> grid;
  const double cap = scale.bounded() ? scale.upper().value() : 1.0;
  for (std::size_t k = 0;; ++k) {
    const double v = static_cast<double>(k) * step;
    if (v > cap) break;
    if (scale.contains(v)) grid.push_back(v);
  }
  if (scale.bounded()) {
    if (scale.closed() && (grid.empty() || grid.back() != scale.upper().value()))
      grid.push_back(scale.upper().value());
  } else {
    for (int k = 1; k <= 10; ++k) grid.push_back(std::ldexp(1.0, k));
    if (scale.closed()) grid.push_back(kInf);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// ---------------------------------------------------------------------------
// FiniteSpace and subsets
// ---------------------------------------------------------------------------

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 24;
inline constexpr std::size_t kMaxPairwisePoints = 12;

/// A finite ground set {0, ..., n-1}; subsets are bitmasks, 0 is the empty set.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::size_t n) : n_(n) {
    if (n < 1 || n > kMaxPoints)
      throw std::invalid_argument("FiniteSpace: point count must be in [1, 24], got " + std::to_string(n));
  }

  std::size_t size() const { return n_; }
  Mask full() const { return static_cast<Mask>((std::uint64_t{1} << n_) - 1); }
  std::uint64_t subset_count() const { return std::uint64_t{1} << n_; }
  bool valid(Mask a) const { return (a & ~full()) == 0; }
  Mask complement(Mask a) const { return full() & ~a; }

  void require_valid(Mask a) const {
    if (!valid(a)) throw std::invalid_argument("subset bitmask " + std::to_string(a) + " outside a space of " + std::to_string(n_) + " points");
  }

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::size_t n_;
};

inline constexpr Mask singleton(std::size_t i) { return Mask{1} << i; }
inline constexpr bool contains_point(Mask a, std::size_t i) { return (a >> i) & 1U; }
inline int cardinality(Mask a) { return std::popcount(a); }

/// Calls fn(sub) for every submask of `set`, including 0 and `set` itself.
template <typename F>
void for_each_submask(Mask set, F&& fn) {
  Mask sub = set;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & set;
  }
}

inline std::string mask_to_string(Mask a) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < 32; ++i) {
    if (contains_point(a, i)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Fn
// ---------------------------------------------------------------------------

/// A measurable function f: X -> Y on a finite space, stored as its value vector.
class Fn {
 public:
  Fn(std::vector<XReal> values, ValueScale scale) : values_(std::move(values)), scale_(scale) {
    (void)FiniteSpace{values_.size()};
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!scale_.contains(values_[i]))
        throw ScaleError("Fn: value " + to_string(values_[i]) + " at point " + std::to_string(i) + " outside " + scale_.describe());
  }
  Fn(const std::vector<double>& values, ValueScale scale) : Fn(std::vector<XReal>(values.begin(), values.end()), scale) {}

  std::size_t size() const { return values_.size(); }
  FiniteSpace space() const { return FiniteSpace{values_.size()}; }
  const ValueScale& scale() const { return scale_; }
  XReal operator[](std::size_t i) const { return values_[i]; }
  const std::vector<XReal>& values() const { return values_; }

  std::vector<double> raw() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (auto v : values_) out.push_back(v.value());
    return out;
  }

  /// {x in D : f(x) >= t}
  Mask level_geq(double t, Mask domain) const {
    Mask out = 0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (contains_point(domain, i) && values_[i].value() >= t) out |= singleton(i);
    return out;
  }

  /// {x in D : f(x) > t}
  Mask level_gt(double t, Mask domain) const {
    Mask out = 0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (contains_point(domain, i) && values_[i].value() > t) out |= singleton(i);
    return out;
  }

  /// Distinct values of f on D, ascending.
  std::vector<double> distinct_values(Mask domain) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (contains_point(domain, i)) out.push_back(values_[i].value());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// inf of f over a nonempty subset A.
  double inf_over(Mask a) const {
    double m = kInf;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (contains_point(a, i)) m = std::min(m, values_[i].value());
    return m;
  }

  friend bool operator==(const Fn& a, const Fn& b) { return a.values_ == b.values_; }

 private:
  std::vector<XReal> values_;
  ValueScale scale_;
};

/// a * 1_A on a space of n points.
inline Fn indicator(std::size_t n, Mask a, double height, ValueScale scale) {
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (contains_point(a, i)) v[i] = height;
  return Fn(v, scale);
}

/// Pointwise map of f into a new scale.
template <typename F>
Fn map_values(const Fn& f, F&& fn, ValueScale scale) {
  std::vector<XReal> v;
  v.reserve(f.size());
  for (auto x : f.values()) v.emplace_back(fn(x.value()));
  return Fn(std::move(v), scale);
}

/// The absolute-power adapter |f|^p taking a signed real vector into Y.
inline Fn abs_pow(const std::vector<double>& f, double p, ValueScale scale) {
  std::vector<XReal> v;
  v.reserve(f.size());
  for (double x : f) v.emplace_back(xpow(std::abs(x), p));
  return Fn(std::move(v), scale);
}

// ---------------------------------------------------------------------------
// SurvivalProfile
// ---------------------------------------------------------------------------

/**
 * A nonincreasing map G(t) = mu(D and {f >= t}) on a value scale, given either
 * in closed form or as a tabulation with right-continuous step interpolation.
 */
class SurvivalProfile {
 public:
  struct Knot {
    double t;
    double value;
  };

  /// Closed form. `horizon` bounds the support: G(t) is constant for t >= horizon.
  /// `lipschitz`, when known, bounds |G(s) - G(t)| / |s - t| on [0, horizon].
  static SurvivalProfile closed_form(std::string name, std::function<double(double)> g, ValueScale domain, XReal total,
                                     double horizon, std::optional<double> lipschitz = std::nullopt) {
    SurvivalProfile p(std::move(name), domain, total);
    p.closed_ = std::move(g);
    p.horizon_ = horizon;
    p.lipschitz_ = lipschitz;
    p.validate();
    return p;
  }

  /// Tabulated knots, strictly increasing in t with the first knot at t = 0.
  static SurvivalProfile tabulated(std::string name, std::vector<Knot> knots, ValueScale domain, XReal total) {
    if (knots.empty() || knots.front().t != 0.0) throw std::invalid_argument("SurvivalProfile: first knot must be at t = 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (!(knots[i].t > knots[i - 1].t)) throw std::invalid_argument("SurvivalProfile: knots must be strictly increasing");
    SurvivalProfile p(std::move(name), domain, total);
    p.horizon_ = knots.back().t;
    p.knots_ = std::move(knots);
    p.validate();
    return p;
  }

  const std::string& name() const { return name_; }
  const ValueScale& domain() const { return domain_; }
  XReal total() const { return total_; }
  double horizon() const { return horizon_; }
  std::optional<double> lipschitz() const { return lipschitz_; }
  bool is_tabulated() const { return !knots_.empty(); }

  XReal operator()(double t) const {
    if (!domain_.contains(t)) throw ScaleError("profile_eval: t = " + std::to_string(t) + " outside " + domain_.describe());
    return XReal(raw(t));
  }

 private:
  SurvivalProfile(std::string name, ValueScale domain, XReal total) : name_(std::move(name)), domain_(domain), total_(total) {}

  double raw(double t) const {
    if (knots_.empty()) return closed_(std::min(t, horizon_));
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t, [](double x, const Knot& k) { return x < k.t; });
    return std::prev(it)->value;
  }

  void validate() const {
    const double end = std::min(horizon_, domain_.top());
    double prev = kInf;
    constexpr int kSamples = 1024;
    for (int i = 0; i <= kSamples; ++i) {
      const double t = end * i / kSamples;
      const double g = raw(t);
      if (!(g >= 0.0)) throw std::invalid_argument("SurvivalProfile '" + name_ + "': negative value at t = " + std::to_string(t));
      if (g > prev + kTolerance) throw std::invalid_argument("SurvivalProfile '" + name_ + "': not nonincreasing near t = " + std::to_string(t));
      prev = g;
    }
    if (!approx_le(raw(0.0), total_.value())) throw std::invalid_argument("SurvivalProfile '" + name_ + "': G(0) exceeds mu(D)");
  }

  std::string name_;
  ValueScale domain_;
  XReal total_;
  double horizon_ = 0.0;
  std::optional<double> lipschitz_;
  std::function<double(double)> closed_;
  std::vector<Knot> knots_;
};

inline XReal profile_eval(const SurvivalProfile& profile, XReal t) { return profile(t.value()); }

// ---------------------------------------------------------------------------
// Check results
// ---------------------------------------------------------------------------

enum class Verdict { holds, violated, hypothesis_failed };
enum class CheckMode { exhaustive, sampled };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::hypothesis_failed: return "hypothesis_failed";
  }
  return "?";
}

inline const char* to_string(CheckMode m) { return m == CheckMode::exhaustive ? "exhaustive" : "sampled"; }

/// Concrete data reproducing a check outcome: subsets, scalar values, and a label.
struct Witness {
  std::vector<Mask> sets;
  std::vector<double> values;
  std::string detail;
};

struct CheckResult {
  Verdict verdict = Verdict::holds;
  /// Smallest slack when the check holds, largest violation otherwise (>= 0).
  double margin = kInf;
  std::optional<Witness> witness;
  /// Instance exhibiting a failing inequality (necessity directions).
  std::optional<Witness> exhibit;
  CheckMode mode = CheckMode::exhaustive;
  std::size_t evaluated = 0;
  std::string note;

  bool holds() const { return verdict == Verdict::holds; }

  static CheckResult hypothesis_failed(std::string why, std::optional<Witness> w = std::nullopt) {
    CheckResult r;
    r.verdict = Verdict::hypothesis_failed;
    r.margin = 0.0;
    r.witness = std::move(w);
    r.note = std::move(why);
    return r;
  }
};

/**
 * Accumulates lhs <= rhs comparisons. Keeps the smallest slack while all hold
 * and the witness of the largest violation once any fails.
 */
class InequalityTracker {
 public:
  explicit InequalityTracker(double tol = kTolerance) : tol_(tol) {}

  template <typename MakeWitness>
  bool record(double lhs, double rhs, MakeWitness&& make_witness) {
    ++evaluated_;
    if (approx_le(lhs, rhs, tol_)) {
      double slack = (lhs == rhs) ? 0.0 : rhs - lhs;
      if (!(slack >= 0.0)) slack = 0.0;
      min_slack_ = std::min(min_slack_, slack);
      return true;
    }
    const double violation = lhs - rhs;
    if (!violated_ || violation > max_violation_) {
      max_violation_ = violation;
      witness_ = make_witness();
    }
    violated_ = true;
    ++violations_;
    return false;
  }

  bool record(double lhs, double rhs) {
    return record(lhs, rhs, [] { return Witness{}; });
  }

  bool violated() const { return violated_; }
  std::size_t violations() const { return violations_; }
  std::size_t evaluated() const { return evaluated_; }

  CheckResult result(CheckMode mode = CheckMode::exhaustive) const {
    CheckResult r;
    r.mode = mode;
    r.evaluated = evaluated_;
    if (violated_) {
      r.verdict = Verdict::violated;
      r.margin = max_violation_;
      r.witness = witness_;
    } else {
      r.margin = min_slack_;
    }
    return r;
  }

 private:
  double tol_;
  bool violated_ = false;
  double min_slack_ = kInf;
  double max_violation_ = 0.0;
  std::size_t evaluated_ = 0;
  std::size_t violations_ = 0;
  Witness witness_;
};

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// SplitMix64 stream; bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Stream for instance `index` of a campaign seeded with `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ 0x9E3779B97F4A7C15ULL);
    const std::uint64_t a = r.next();
    return Rng(a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  bool coin(double p = 0.5) { return uniform() < p; }

  /// Uniform multiple of `step` in [0, hi].
  double grid_value(double hi, double step) {
    const auto k = static_cast<std::uint64_t>(std::floor(hi / step + 1e-9));
    return static_cast<double>(below(k + 1)) * step;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nonadditive

#endif  // NONADDITIVE_CORE_HPP
