#ifndef NONADDITIVE_MEASURES_HPP
#define NONADDITIVE_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/maps.hpp"

namespace nonadditive {

/// Monotone map g: [0,1] -> [0, inf) with g(0) = 0, used by distortion measures.
struct DistortionMap {
  std::string name;
  double exponent = 1.0;  // g(x) = x^exponent for the built-in power family
  std::function<double(double)> g;

  static DistortionMap power(double exponent) {
    if (!(exponent > 0.0)) throw std::invalid_argument("DistortionMap::power: exponent must be > 0");
    return {"power", exponent, [exponent](double x) { return xpow(x, exponent); }};
  }
};

/**
 * A monotone measure on a finite space. Parametric families are evaluated on
 * demand; `tabulated()` materializes any of them into an explicit table.
 */
class MonotoneMeasure {
 public:
  struct Explicit {
    std::vector<XReal> table;  // indexed by bitmask
  };
  struct Possibility {
    std::vector<double> density;
  };
  struct Distortion {
    DistortionMap g;
    std::vector<double> probabilities;
  };
  struct LambdaSugeno {
    double lambda;
    std::vector<double> density;
  };
  using Repr = std::variant<Explicit, Possibility, Distortion, LambdaSugeno>;

  static MonotoneMeasure explicit_table(std::vector<XReal> table) {
    const auto n = static_cast<std::size_t>(std::countr_zero(table.size()));
    if (table.empty() || (std::size_t{1} << n) != table.size())
      throw std::invalid_argument("explicit measure table size must be a power of two");
    MonotoneMeasure m(n, Explicit{std::move(table)});
    m.require_measure_axioms();
    return m;
  }

  static MonotoneMeasure possibility(std::vector<double> density) {
    for (double v : density)
      if (!(v >= 0.0)) throw std::invalid_argument("possibility density must be >= 0");
    const auto n = density.size();
    return MonotoneMeasure(n, Possibility{std::move(density)});
  }

  static MonotoneMeasure distortion(DistortionMap g, std::vector<double> probabilities) {
    double total = 0.0;
    for (double v : probabilities) {
      if (!(v >= 0.0)) throw std::invalid_argument("distortion probabilities must be >= 0");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distortion probabilities must sum to 1");
    if (g.g(0.0) != 0.0) throw std::invalid_argument("distortion map must satisfy g(0) = 0");
    const auto n = probabilities.size();
    return MonotoneMeasure(n, Distortion{std::move(g), std::move(probabilities)});
  }

  /// Sugeno lambda-measure from singleton densities. Requires lambda > -1/mu(X).
  static MonotoneMeasure lambda_sugeno(double lambda, std::vector<double> density) {
    for (double v : density)
      if (!(v >= 0.0)) throw std::invalid_argument("lambda-measure density must be >= 0");
    const auto n = density.size();
    MonotoneMeasure m(n, LambdaSugeno{lambda, std::move(density)});
    const double total = m(m.space().full()).value();
    if (!(lambda > -1.0 / total)) throw std::invalid_argument("lambda-measure requires lambda > -1/mu(X)");
    if (n <= 16) m.require_measure_axioms();
    return m;
  }

  FiniteSpace space() const { return FiniteSpace{n_}; }
  std::size_t size() const { return n_; }
  const Repr& repr() const { return repr_; }

  /// True when evaluation involves no rounding beyond table lookup or max.
  bool exact() const {
    return std::holds_alternative<Explicit>(repr_) || std::holds_alternative<Possibility>(repr_);
  }

  std::string family() const {
    switch (repr_.index()) {
      case 0: return "explicit";
      case 1: return "possibility";
      case 2: return "distortion";
      default: return "lambda_sugeno";
    }
  }

  XReal operator()(Mask a) const {
    if ((a >> n_) != 0) throw std::invalid_argument("measure_eval: bitmask " + std::to_string(a) + " outside the space");
    return eval_unchecked(a);
  }

  XReal total() const { return eval_unchecked(space().full()); }

  /// Explicit-table copy of this measure.
  MonotoneMeasure tabulated() const {
    if (std::holds_alternative<Explicit>(repr_)) return *this;
    std::vector<XReal> table(std::size_t{1} << n_);
    for (std::size_t a = 0; a < table.size(); ++a) table[a] = eval_unchecked(static_cast<Mask>(a));
    return MonotoneMeasure(n_, Explicit{std::move(table)});
  }

  /// Pointwise dominance mu(A) <= other(A) for all A.
  bool dominated_by(const MonotoneMeasure& other) const {
    for (std::uint64_t a = 0; a < space().subset_count(); ++a)
      if ((*this)(static_cast<Mask>(a)) > other(static_cast<Mask>(a))) return false;
    return true;
  }

 private:
  MonotoneMeasure(std::size_t n, Repr repr) : n_(n), repr_(std::move(repr)) { (void)FiniteSpace{n}; }

  XReal eval_unchecked(Mask a) const {
    return std::visit(
        [&](const auto& r) -> XReal {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Explicit>) {
            return r.table[a];
          } else if constexpr (std::is_same_v<T, Possibility>) {
            double m = 0.0;
            for (std::size_t i = 0; i < n_; ++i)
              if (contains_point(a, i)) m = std::max(m, r.density[i]);
            return m;
          } else if constexpr (std::is_same_v<T, Distortion>) {
            double p = 0.0;
            for (std::size_t i = 0; i < n_; ++i)
              if (contains_point(a, i)) p += r.probabilities[i];
            return r.g.g(std::min(p, 1.0));
          } else {
            double v = 0.0;
            for (std::size_t i = 0; i < n_; ++i)
              if (contains_point(a, i)) v = v + r.density[i] + r.lambda * v * r.density[i];
            return std::max(v, 0.0);
          }
        },
        repr_);
  }

  void require_measure_axioms() const {
    if (eval_unchecked(0) != XReal(0.0)) throw std::invalid_argument("monotone measure requires mu(empty) = 0");
    const Mask full = space().full();
    for (std::uint64_t a = 0; a <= full; ++a)
      for (std::size_t i = 0; i < n_; ++i) {
        const auto am = static_cast<Mask>(a);
        if (contains_point(am, i)) continue;
        if (eval_unchecked(am) > eval_unchecked(am | singleton(i)))
          throw std::invalid_argument("measure is not monotone: mu(" + mask_to_string(am) + ") > mu(" +
                                      mask_to_string(am | singleton(i)) + ")");
      }
  }

  std::size_t n_;
  Repr repr_;
};

inline XReal measure_eval(const MonotoneMeasure& mu, Mask a) { return mu(a); }

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

enum class MeasureProperty { monotone, subadditive, maxitive, submodular, null_additive, finite };

inline const char* to_string(MeasureProperty p) {
  switch (p) {
    case MeasureProperty::monotone: return "monotone";
    case MeasureProperty::subadditive: return "subadditive";
    case MeasureProperty::maxitive: return "maxitive";
    case MeasureProperty::submodular: return "submodular";
    case MeasureProperty::null_additive: return "null_additive";
    case MeasureProperty::finite: return "finite";
  }
  return "?";
}

inline MeasureProperty parse_measure_property(const std::string& s) {
  for (auto p : {MeasureProperty::monotone, MeasureProperty::subadditive, MeasureProperty::maxitive,
                 MeasureProperty::submodular, MeasureProperty::null_additive, MeasureProperty::finite})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown measure property '" + s + "'");
}

namespace detail {

/// Calls fn(A, B) for every ordered pair of disjoint subsets of the space (3^n pairs).
template <typename F>
void for_each_disjoint_pair(const FiniteSpace& space, F&& fn) {
  const Mask full = space.full();
  for (std::uint64_t a = 0; a <= full; ++a) {
    const auto am = static_cast<Mask>(a);
    for_each_submask(full & ~am, [&](Mask b) { fn(am, b); });
  }
}

inline CheckResult check_monotone(const MonotoneMeasure& mu, double tol) {
  InequalityTracker track(tol);
  const auto space = mu.space();
  const XReal empty = mu(0);
  track.record(empty.value(), 0.0, [] { return Witness{{0}, {}, "mu(empty) != 0"}; });
  const Mask full = space.full();
  for (std::uint64_t a = 0; a <= full; ++a) {
    const auto am = static_cast<Mask>(a);
    const double va = mu(am).value();
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (contains_point(am, i)) continue;
      const Mask bigger = am | singleton(i);
      const double vb = mu(bigger).value();
      track.record(va, vb, [&] { return Witness{{am, bigger}, {va, vb}, "mu(A) > mu(A + {i})"}; });
    }
  }
  return track.result();
}

}  // namespace detail

/**
 * Exhaustive check of a measure property, with a witness on failure.
 *
 * Subadditivity and maxitivity are checked on disjoint pairs: for a monotone
 * measure, mu(A u B) = mu(A u (B \ A)) and mu(B \ A) <= mu(B), so disjoint pairs
 * decide the all-pairs form. Maxitivity additionally re-asserts the all-pairs
 * identity once the disjoint form holds. Null-additivity reduces to the union N
 * of null atoms: mu is null-additive iff mu(B u N) = mu(B) for every B.
 */
inline CheckResult check_measure_property(const MonotoneMeasure& measure, MeasureProperty prop) {
  const auto space = measure.space();
  const bool pairwise = prop == MeasureProperty::subadditive || prop == MeasureProperty::maxitive ||
                        prop == MeasureProperty::submodular;
  if (pairwise && space.size() > kMaxPairwisePoints)
    throw std::invalid_argument(std::string("check_measure_property(") + to_string(prop) +
                                "): space too large for an exhaustive pairwise check (n > 12)");
  const double tol = measure.exact() ? 0.0 : kTolerance;
  const MonotoneMeasure mu = (space.size() <= 16 && !measure.exact()) ? measure.tabulated() : measure;

  switch (prop) {
    case MeasureProperty::monotone:
      return detail::check_monotone(mu, tol);

    case MeasureProperty::finite: {
      CheckResult r;
      const XReal total = mu.total();
      r.evaluated = 1;
      if (total.is_inf()) {
        r.verdict = Verdict::violated;
        r.witness = Witness{{space.full()}, {total.value()}, "mu(X) = inf"};
        r.margin = kInf;
      } else {
        r.margin = kInf;
      }
      return r;
    }

    case MeasureProperty::subadditive: {
      auto mono = detail::check_monotone(mu, tol);
      if (!mono.holds()) {
        mono.note = "not a monotone measure";
        return mono;
      }
      InequalityTracker track(tol);
      detail::for_each_disjoint_pair(space, [&](Mask a, Mask b) {
        if (a == 0 || b == 0 || a > b) return;
        const double u = mu(a | b).value(), va = mu(a).value(), vb = mu(b).value();
        track.record(u, (XReal(va) + XReal(vb)).value(),
                     [&] { return Witness{{a, b}, {u, va, vb}, "mu(A u B) > mu(A) + mu(B)"}; });
      });
      return track.result();
    }

    case MeasureProperty::maxitive: {
      InequalityTracker track(tol);
      detail::for_each_disjoint_pair(space, [&](Mask a, Mask b) {
        if (a == 0 || b == 0 || a > b) return;
        const double u = mu(a | b).value(), va = mu(a).value(), vb = mu(b).value();
        track.record(u, std::max(va, vb), [&] { return Witness{{a, b}, {u, va, vb}, "mu(A u B) > mu(A) v mu(B), A, B disjoint"}; });
        // mu(A u B) >= mu(A) v mu(B) is monotonicity; a failure here is reported too.
        track.record(std::max(va, vb), u, [&] { return Witness{{a, b}, {u, va, vb}, "mu(A u B) < mu(A) v mu(B)"}; });
      });
      auto r = track.result();
      if (!r.holds()) return r;
      // Derived all-pairs form.
      InequalityTracker all(tol);
      const Mask full = space.full();
      for (std::uint64_t a = 0; a <= full; ++a)
        for (std::uint64_t b = a; b <= full; ++b) {
          const auto am = static_cast<Mask>(a), bm = static_cast<Mask>(b);
          const double u = mu(am | bm).value(), va = mu(am).value(), vb = mu(bm).value();
          all.record(u, std::max(va, vb), [&] { return Witness{{am, bm}, {u, va, vb}, "all-pairs maxitivity failed"}; });
        }
      auto derived = all.result();
      derived.evaluated += r.evaluated;
      if (derived.holds()) derived.margin = r.margin;
      return derived;
    }

    case MeasureProperty::submodular: {
      InequalityTracker track(tol);
      const Mask full = space.full();
      for (std::uint64_t a = 0; a <= full; ++a)
        for (std::uint64_t b = a + 1; b <= full; ++b) {
          const auto am = static_cast<Mask>(a), bm = static_cast<Mask>(b);
          const XReal lhs = mu(am | bm) + mu(am & bm);
          const XReal rhs = mu(am) + mu(bm);
          track.record(lhs.value(), rhs.value(), [&] {
            return Witness{{am, bm}, {lhs.value(), rhs.value()}, "mu(A u B) + mu(A n B) > mu(A) + mu(B)"};
          });
        }
      return track.result();
    }

    case MeasureProperty::null_additive: {
      Mask null_atoms = 0;
      for (std::size_t i = 0; i < space.size(); ++i)
        if (mu(singleton(i)).value() == 0.0) null_atoms |= singleton(i);
      CheckResult r;
      // Grow the null set one atom at a time; the first jump is a witness.
      Mask acc = 0;
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (!contains_point(null_atoms, i)) continue;
        const double next = mu(acc | singleton(i)).value();
        if (next != 0.0) {
          r.verdict = Verdict::violated;
          r.margin = next;
          r.witness = Witness{{acc, singleton(i)}, {next, 0.0}, "mu(A) = 0 but mu(A u B) != mu(B)"};
          return r;
        }
        acc |= singleton(i);
      }
      const Mask full = space.full();
      for (std::uint64_t b = 0; b <= full; ++b) {
        const auto bm = static_cast<Mask>(b);
        ++r.evaluated;
        const double with = mu(bm | null_atoms).value(), without = mu(bm).value();
        if (with != without) {
          r.verdict = Verdict::violated;
          r.margin = with - without;
          r.witness = Witness{{null_atoms, bm}, {with, without}, "mu(A) = 0 but mu(A u B) != mu(B)"};
          return r;
        }
      }
      r.margin = 0.0;
      return r;
    }
  }
  return {};
}

inline bool has_property(const MonotoneMeasure& mu, MeasureProperty p) { return check_measure_property(mu, p).holds(); }

// ---------------------------------------------------------------------------
// h-dual
// ---------------------------------------------------------------------------

/**
 * mu_h(A) = h^-1(mu(X \ A)). For mu_h to be a monotone measure, mu_h(empty) =
 * h^-1(mu(X)) must be 0, i.e. mu(X) = h(0); this is required.
 */
inline MonotoneMeasure dual_measure_h(const MonotoneMeasure& mu, const DualityMap& h) {
  const auto valid = h.validate();
  if (!valid.holds()) throw std::invalid_argument("dual_measure_h: " + valid.witness->detail);
  const auto space = mu.space();
  if (mu.total().value() != h(0.0))
    throw std::invalid_argument("dual_measure_h: requires mu(X) = h(0) = " + to_string(XReal(h(0.0))) + ", got " +
                                to_string(mu.total()));
  std::vector<XReal> table(space.subset_count());
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    const double v = mu(space.complement(static_cast<Mask>(a))).value();
    if (!h.scale().contains(v)) throw ScaleError("dual_measure_h: mu value " + std::to_string(v) + " outside " + h.scale().describe());
    table[a] = h.inverse(v);
  }
  return MonotoneMeasure::explicit_table(std::move(table));
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class MeasureFamily {
  monotonized_random,
  possibility,
  distortion_concave,
  distortion_convex,  // x^a with a > 1; never subadditive on >= 2 positive atoms
  lambda_sugeno,      // lambda in (-1/mu(X), 0), subadditive
  non_maxitive,
};

inline const char* to_string(MeasureFamily f) {
  switch (f) {
    case MeasureFamily::monotonized_random: return "monotonized_random";
    case MeasureFamily::possibility: return "possibility";
    case MeasureFamily::distortion_concave: return "distortion_concave";
    case MeasureFamily::distortion_convex: return "distortion_convex";
    case MeasureFamily::lambda_sugeno: return "lambda_sugeno";
    case MeasureFamily::non_maxitive: return "non_maxitive";
  }
  return "?";
}

inline MeasureFamily parse_measure_family(const std::string& s) {
  for (auto f : {MeasureFamily::monotonized_random, MeasureFamily::possibility, MeasureFamily::distortion_concave,
                 MeasureFamily::distortion_convex, MeasureFamily::lambda_sugeno, MeasureFamily::non_maxitive})
    if (s == to_string(f)) return f;
  throw std::invalid_argument("unknown measure family '" + s + "'");
}

namespace detail {

inline std::vector<double> random_probabilities(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) {
    v = 0.05 + rng.uniform();
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace detail

/// Deterministic measure generator; possibility densities put a null atom with probability 1/8.
inline MonotoneMeasure generate_measure(Rng& rng, MeasureFamily family, std::size_t n) {
  if (n < 1 || n > kMaxPairwisePoints) throw std::invalid_argument("generate_measure: n must be in [1, 12]");
  const FiniteSpace space(n);
  switch (family) {
    case MeasureFamily::monotonized_random: {
      std::vector<XReal> table(space.subset_count());
      std::vector<double> raw(table.size());
      for (std::size_t a = 1; a < raw.size(); ++a) raw[a] = rng.uniform();
      for (std::size_t a = 1; a < table.size(); ++a) {
        double best = raw[a];
        for (std::size_t i = 0; i < n; ++i)
          if (contains_point(static_cast<Mask>(a), i)) best = std::max(best, table[a & ~singleton(i)].value());
        table[a] = best;
      }
      return MonotoneMeasure::explicit_table(std::move(table));
    }
    case MeasureFamily::possibility: {
      std::vector<double> psi(n);
      for (auto& v : psi) v = rng.coin(0.125) ? 0.0 : rng.uniform();
      return MonotoneMeasure::possibility(std::move(psi));
    }
    case MeasureFamily::distortion_concave:
      return MonotoneMeasure::distortion(DistortionMap::power(rng.uniform(0.2, 1.0)), detail::random_probabilities(rng, n));
    case MeasureFamily::distortion_convex:
      return MonotoneMeasure::distortion(DistortionMap::power(rng.uniform(1.5, 3.0)), detail::random_probabilities(rng, n));
    case MeasureFamily::lambda_sugeno: {
      std::vector<double> density(n);
      for (auto& v : density) v = rng.uniform(0.05, 1.0);
      double total = 0.0;
      for (double v : density) total += v;
      // Any lambda in (-1/total, 0) works; total bounds mu(X) from above when lambda < 0.
      const double lambda = -rng.uniform(0.05, 0.95) / total;
      return MonotoneMeasure::lambda_sugeno(lambda, std::move(density));
    }
    case MeasureFamily::non_maxitive: {
      if (n < 2) throw std::invalid_argument("generate_measure(non_maxitive): needs n >= 2");
      std::vector<double> psi(n);
      for (auto& v : psi) v = rng.uniform(0.0, 0.5);
      const auto i = static_cast<std::size_t>(rng.below(n));
      auto j = static_cast<std::size_t>(rng.below(n - 1));
      if (j >= i) ++j;
      const Mask pair = singleton(i) | singleton(j);
      const double bump = std::max(psi[i], psi[j]) + rng.uniform(0.05, 0.5);
      std::vector<XReal> table(space.subset_count());
      for (std::size_t a = 1; a < table.size(); ++a) {
        double v = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          if (contains_point(static_cast<Mask>(a), k)) v = std::max(v, psi[k]);
        if ((static_cast<Mask>(a) & pair) == pair) v = std::max(v, bump);
        table[a] = v;
      }
      return MonotoneMeasure::explicit_table(std::move(table));
    }
  }
  throw std::invalid_argument("generate_measure: unknown family");
}

inline MonotoneMeasure generate_measure(std::uint64_t seed, MeasureFamily family, std::size_t n) {
  Rng rng(seed);
  return generate_measure(rng, family, n);
}

/// Copy of mu as an explicit table scaled so that mu(X) = 1 (mu(X) must be positive and finite).
inline MonotoneMeasure normalized(const MonotoneMeasure& mu) {
  const double total = mu.total().value();
  if (!(total > 0.0) || std::isinf(total)) throw std::invalid_argument("normalized: mu(X) must be positive and finite");
  auto t = mu.tabulated();
  auto table = std::get<MonotoneMeasure::Explicit>(t.repr()).table;
  for (auto& v : table) v = v.value() / total;
  table.back() = 1.0;
  return MonotoneMeasure::explicit_table(std::move(table));
}

/// Copy of mu as an explicit table with mu(X) replaced by inf.
inline MonotoneMeasure with_infinite_total(const MonotoneMeasure& mu) {
  auto t = mu.tabulated();
  auto table = std::get<MonotoneMeasure::Explicit>(t.repr()).table;
  table.back() = XReal::infinity();
  return MonotoneMeasure::explicit_table(std::move(table));
}

}  // namespace nonadditive

#endif  // NONADDITIVE_MEASURES_HPP
