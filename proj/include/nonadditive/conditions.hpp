#ifndef NONADDITIVE_CONDITIONS_HPP
#define NONADDITIVE_CONDITIONS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/maps.hpp"
#include "nonadditive/measures.hpp"
#include "nonadditive/operators.hpp"

namespace nonadditive {

enum class ConditionId { c52, wu, c54, daraby, c55, c57, cwn1, tw_subad_hyp, cd6, cd14, colh, colh2, doltw2_hyp };

inline const char* to_string(ConditionId c) {
  switch (c) {
    case ConditionId::c52: return "c52";
    case ConditionId::wu: return "wu";
    case ConditionId::c54: return "c54";
    case ConditionId::daraby: return "daraby";
    case ConditionId::c55: return "c55";
    case ConditionId::c57: return "c57";
    case ConditionId::cwn1: return "cwn1";
    case ConditionId::tw_subad_hyp: return "tw_subad_hyp";
    case ConditionId::cd6: return "cd6";
    case ConditionId::cd14: return "cd14";
    case ConditionId::colh: return "colh";
    case ConditionId::colh2: return "colh2";
    case ConditionId::doltw2_hyp: return "doltw2_hyp";
  }
  return "?";
}

inline ConditionId parse_condition(const std::string& s) {
  for (auto c : {ConditionId::c52, ConditionId::wu, ConditionId::c54, ConditionId::daraby, ConditionId::c55,
                 ConditionId::c57, ConditionId::cwn1, ConditionId::tw_subad_hyp, ConditionId::cd6, ConditionId::cd14,
                 ConditionId::colh, ConditionId::colh2, ConditionId::doltw2_hyp})
    if (s == to_string(c)) return c;
  throw std::invalid_argument("unknown condition identifier '" + s + "'");
}

/**
 * Operators, maps and parameters a condition is evaluated with. Which fields a
 * condition reads:
 *
 *   c52, cd6   star, combiner, circ[0..2], phi[0..2] (cd6 also boxplus)
 *   wu, cd14   star, phi[0..2]
 *   c54        exponents[0..2]
 *   daraby     star, op (the semicopula S)
 *   c55        star, op, p
 *   c57, cwn1  op
 *   tw_subad_hyp, doltw2_hyp  op (plus q, r)
 *   colh, colh2               star, op, h (colh2 also boxplus)
 */
struct ConditionBinding {
  std::optional<BinaryOp> star;
  std::optional<BinaryOp> combiner;
  std::optional<BinaryOp> boxplus;
  std::optional<BinaryOp> op;
  std::array<std::optional<BinaryOp>, 3> circ;
  std::array<PhiMap, 3> phi{PhiMap::identity(), PhiMap::identity(), PhiMap::identity()};
  std::optional<DualityMap> h;
  std::array<double, 3> exponents{1.0, 1.0, 1.0};
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
};

/**
 * The value set a condition is quantified over: `ab` for the Y-valued
 * variables (a, b, and x, y, z), `cd` for the measure-valued ones (c, d).
 * When `tuples` is non-empty only those tuples are evaluated, in the variable
 * order of the condition.
 */
struct ConditionDomain {
  std::vector<double> ab;
  std::vector<double> cd;
  std::vector<std::vector<double>> tuples;

  static ConditionDomain grid(const ValueScale& scale, double step = 1.0 / 64.0) {
    auto g = standard_grid(scale, step);
    return {g, g, {}};
  }

  /// Y-grid for a, b with c, d ranging over the given realized measure values.
  static ConditionDomain realized(const ValueScale& scale, std::vector<double> measure_values, double step = 1.0 / 64.0) {
    return {standard_grid(scale, step), std::move(measure_values), {}};
  }

  static ConditionDomain explicit_tuples(std::vector<std::vector<double>> tuples) { return {{}, {}, std::move(tuples)}; }
};

/// Distinct values of mu(A n D) over all A, ascending.
inline std::vector<double> measure_values(const MonotoneMeasure& mu, Mask domain) {
  std::vector<double> out;
  for_each_submask(domain, [&](Mask a) { out.push_back(mu(a).value()); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline const BinaryOp& need(const std::optional<BinaryOp>& o, ConditionId id, const char* field) {
  if (!o) throw std::invalid_argument(std::string("check_condition(") + to_string(id) + "): binding '" + field + "' missing");
  return *o;
}

inline int arity(ConditionId id) {
  switch (id) {
    case ConditionId::cd6:
    case ConditionId::cd14:
    case ConditionId::colh2: return 4;
    case ConditionId::doltw2_hyp: return 2;
    default: return 3;
  }
}

/// Which domain list each variable draws from: true for `cd`.
inline std::array<bool, 4> measure_slots(ConditionId id) {
  switch (id) {
    case ConditionId::cd6:
    case ConditionId::cd14: return {false, false, true, true};
    case ConditionId::colh2: return {false, false, false, false};
    case ConditionId::doltw2_hyp: return {false, false, false, false};
    case ConditionId::colh: return {false, false, false, false};
    case ConditionId::tw_subad_hyp: return {false, false, false, false};
    default: return {false, false, true, false};
  }
}

struct Side {
  double lhs;
  double rhs;
  bool applicable = true;
};

}  // namespace detail

/**
 * Evaluates a named operator-level condition lhs <= rhs over a value domain.
 * tw_subad_hyp checks both of its inequalities; the scaling part uses a
 * fixed ladder of factors a > 1. doltw2_hyp reads (x, y) and checks x <= y whenever 1 o x <= y with
 * 0 < y < 1.
 */
inline CheckResult check_condition(ConditionId id, const ConditionBinding& bind, const ConditionDomain& domain,
                                   double tol = kTolerance) {
  using detail::need;
  InequalityTracker track(tol);

  // Binds the evaluator for one tuple (a, b, c, d).
  std::function<detail::Side(double, double, double, double)> eval;
  switch (id) {
    case ConditionId::c52:
    case ConditionId::cd6: {
      const auto& star = need(bind.star, id, "star");
      const auto& comb = need(bind.combiner, id, "combiner");
      const auto& c1 = need(bind.circ[0], id, "circ[0]");
      const auto& c2 = need(bind.circ[1], id, "circ[1]");
      const auto& c3 = need(bind.circ[2], id, "circ[2]");
      const auto& phi = bind.phi;
      if (id == ConditionId::c52) {
        eval = [&, star, comb, c1, c2, c3](double a, double b, double c, double) -> detail::Side {
          const double l = phi[0].inverse(c1.raw(phi[0].forward(star.raw(a, b)), c));
          const double r = comb.raw(phi[1].inverse(c2.raw(phi[1].forward(a), c)), phi[2].inverse(c3.raw(phi[2].forward(b), c)));
          return {l, r};
        };
      } else {
        const auto& bp = need(bind.boxplus, id, "boxplus");
        eval = [&, star, comb, c1, c2, c3, bp](double a, double b, double c, double d) -> detail::Side {
          const double l = phi[0].inverse(c1.raw(phi[0].forward(star.raw(a, b)), bp.raw(c, d)));
          const double r = comb.raw(phi[1].inverse(c2.raw(phi[1].forward(a), c)), phi[2].inverse(c3.raw(phi[2].forward(b), d)));
          return {l, r};
        };
      }
      break;
    }
    case ConditionId::wu: {
      const auto& star = need(bind.star, id, "star");
      const auto& phi = bind.phi;
      eval = [&, star](double a, double b, double c, double) -> detail::Side {
        const double l = std::min(star.raw(a, b), phi[0].inverse(c));
        const double r = star.raw(std::min(a, phi[1].inverse(c)), std::min(b, phi[2].inverse(c)));
        return {l, r};
      };
      break;
    }
    case ConditionId::c54: {
      const auto p = bind.exponents;
      eval = [p](double a, double b, double c, double) -> detail::Side {
        const double c1 = xroot(c, p[0]), c2 = xroot(c, p[1]), c3 = xroot(c, p[2]);
        return {0.0, a * (c2 - c1) + b * (c3 - c1) + a * b * (c1 - c2 * c3)};
      };
      break;
    }
    case ConditionId::daraby: {
      const auto& star = need(bind.star, id, "star");
      const auto& s = need(bind.op, id, "op");
      eval = [star, s](double a, double b, double c, double) -> detail::Side {
        return {s.raw(star.raw(a, b), c), std::min(star.raw(s.raw(a, c), b), star.raw(a, s.raw(b, c)))};
      };
      break;
    }
    case ConditionId::c55: {
      const auto& star = need(bind.star, id, "star");
      const auto& s = need(bind.op, id, "op");
      const double p = bind.p;
      eval = [star, s, p](double a, double b, double c, double) -> detail::Side {
        const double l = xroot(s.raw(xpow(star.raw(a, b), p), c), p);
        const double r = star.raw(xroot(s.raw(xpow(a, p), c), p), xroot(s.raw(xpow(b, p), c), p));
        return {l, r};
      };
      break;
    }
    case ConditionId::c57:
    case ConditionId::cwn1: {
      const auto& s = need(bind.op, id, "op");
      eval = [s](double a, double b, double c, double) -> detail::Side {
        if (!s.scale().contains(a + b)) return {0.0, 0.0, false};
        return {s.raw(a + b, c), s.raw(a, c) + s.raw(b, c)};
      };
      break;
    }
    case ConditionId::cd14: {
      const auto& star = need(bind.star, id, "star");
      const auto& phi = bind.phi;
      eval = [&, star](double a, double b, double c, double d) -> detail::Side {
        const double l = std::max(star.raw(a, b), std::max(phi[0].inverse(c), phi[0].inverse(d)));
        const double r = star.raw(std::max(a, phi[1].inverse(c)), std::max(b, phi[2].inverse(d)));
        return {l, r};
      };
      break;
    }
    case ConditionId::colh:
    case ConditionId::colh2: {
      const auto& star = need(bind.star, id, "star");
      const auto& o = need(bind.op, id, "op");
      if (!bind.h) throw std::invalid_argument(std::string("check_condition(") + to_string(id) + "): binding 'h' missing");
      const BinaryOp oh = op_dual(o, *bind.h);
      if (id == ConditionId::colh) {
        eval = [star, oh](double a, double b, double c, double) -> detail::Side {
          return {oh.raw(star.raw(a, b), c), star.raw(oh.raw(a, c), oh.raw(b, c))};
        };
      } else {
        const auto& bp = need(bind.boxplus, id, "boxplus");
        eval = [star, oh, bp](double a, double b, double c, double d) -> detail::Side {
          return {oh.raw(star.raw(a, b), bp.raw(c, d)), star.raw(oh.raw(a, c), oh.raw(b, d))};
        };
      }
      break;
    }
    case ConditionId::doltw2_hyp: {
      const auto& o = need(bind.op, id, "op");
      eval = [o](double x, double y, double, double) -> detail::Side {
        if (!(y > 0.0 && y < 1.0)) return {0.0, 0.0, false};
        if (!(o.raw(1.0, x) <= y)) return {0.0, 0.0, false};
        return {x, y};
      };
      break;
    }
    case ConditionId::tw_subad_hyp: {
      const auto& o = need(bind.op, id, "op");
      const double q = bind.q, r = bind.r;
      // Subadditivity in the second argument over (x, y, z) in the `ab` list.
      auto record = [&](double lhs, double rhs, std::vector<double> vals, const char* what) {
        track.record(lhs, rhs, [&] { return Witness{{}, std::move(vals), what}; });
      };
      const auto& pts = domain.ab;
      if (!domain.tuples.empty()) {
        for (const auto& t : domain.tuples) {
          if (t.size() == 3) {
            if (!o.scale().contains(t[1] + t[2])) continue;
            record(o.raw(t[0], t[1] + t[2]), o.raw(t[0], t[1]) + o.raw(t[0], t[2]), t, "x o (y + z) > x o y + x o z");
          } else if (t.size() == 4) {  // (a, x, y, unused)
            const double a = t[0], x = t[1], y = t[2];
            if (!(a > 1.0) || !o.scale().contains(a * x)) continue;
            record(o.raw(a * x, y), xmul(xpow(a, q), xpow(o.raw(x, y), r)), t, "(ax) o y > a^q (x o y)^r");
          }
        }
        return track.result(CheckMode::exhaustive);
      }
      for (double x : pts)
        for (double y : pts)
          for (double z : pts) {
            if (!o.scale().contains(y + z)) continue;
            record(o.raw(x, y + z), o.raw(x, y) + o.raw(x, z), {x, y, z}, "x o (y + z) > x o y + x o z");
          }
      const std::vector<double> factors{1.0 + 1.0 / 64.0, 1.0625, 1.125, 1.25, 4.0 / 3.0, 1.5, 5.0 / 3.0, 2.0,
                                        2.5,  3.0,    4.0,   6.0,  8.0,        16.0, 64.0,       256.0, 1024.0};
      for (double a : factors)
        for (double x : pts) {
          if (!o.scale().contains(a * x)) continue;
          for (double y : pts)
            record(o.raw(a * x, y), xmul(xpow(a, q), xpow(o.raw(x, y), r)), {a, x, y}, "(ax) o y > a^q (x o y)^r");
        }
      return track.result(CheckMode::sampled);
    }
  }

  const int n = detail::arity(id);
  auto run = [&](const std::vector<double>& t) {
    const double a = t[0], b = t.size() > 1 ? t[1] : 0.0, c = t.size() > 2 ? t[2] : 0.0, d = t.size() > 3 ? t[3] : 0.0;
    const auto side = eval(a, b, c, d);
    if (!side.applicable) return;
    track.record(side.lhs, side.rhs, [&] {
      return Witness{{}, {a, b, c, d, side.lhs, side.rhs}, std::string(to_string(id)) + ": lhs > rhs at (a, b, c, d)"};
    });
  };

  if (!domain.tuples.empty()) {
    for (const auto& t : domain.tuples) {
      if (static_cast<int>(t.size()) < n)
        throw std::invalid_argument(std::string("check_condition(") + to_string(id) + "): tuple needs " + std::to_string(n) + " values");
      run(t);
    }
    return track.result(CheckMode::exhaustive);
  }

  const auto slots = detail::measure_slots(id);
  std::array<const std::vector<double>*, 4> lists{};
  for (int i = 0; i < 4; ++i) lists[i] = slots[i] ? &domain.cd : &domain.ab;
  std::vector<double> t(n);
  // Odometer over the n variable lists.
  std::vector<std::size_t> idx(n, 0);
  for (int i = 0; i < n; ++i)
    if (lists[i]->empty()) return track.result(CheckMode::sampled);
  while (true) {
    for (int i = 0; i < n; ++i) t[i] = (*lists[i])[idx[i]];
    run(t);
    int k = n - 1;
    while (k >= 0 && ++idx[k] == lists[k]->size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return track.result(CheckMode::sampled);
}

inline CheckResult check_condition(const std::string& id, const ConditionBinding& bind, const ConditionDomain& domain,
                                   double tol = kTolerance) {
  return check_condition(parse_condition(id), bind, domain, tol);
}

}  // namespace nonadditive

#endif  // NONADDITIVE_CONDITIONS_HPP
