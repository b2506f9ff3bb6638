#ifndef NONADDITIVE_RELATIONS_HPP
#define NONADDITIVE_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/measures.hpp"
#include "nonadditive/operators.hpp"

namespace nonadditive {

enum class Relation { comonotone, star_associated, mu_subadditive, pqd };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::comonotone: return "comonotone";
    case Relation::star_associated: return "star_associated";
    case Relation::mu_subadditive: return "mu_subadditive";
    case Relation::pqd: return "pqd";
  }
  return "?";
}

inline Relation parse_relation(const std::string& s) {
  for (auto r : {Relation::comonotone, Relation::star_associated, Relation::mu_subadditive, Relation::pqd})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown relation '" + s + "'");
}

/// In sampled mode `holds` only means no violation was found.
struct RelationVerdict {
  Relation relation = Relation::comonotone;
  bool holds = true;
  std::optional<Witness> witness;
  CheckMode mode = CheckMode::exhaustive;
  std::size_t evaluated = 0;

  explicit operator bool() const { return holds; }
};

/// Largest |D| for which star-association is decided over every subset.
inline constexpr int kStarExhaustiveLimit = 14;
inline constexpr std::size_t kStarSamples = 10000;

namespace detail {

inline void require_same_size(const Fn& f, const Fn& g, const char* who) {
  if (f.size() != g.size()) throw std::invalid_argument(std::string(who) + ": functions live on different spaces");
}

inline std::vector<std::size_t> points_of(Mask d) {
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < 32; ++i)
    if (contains_point(d, i)) pts.push_back(i);
  return pts;
}

/// {0} together with the distinct values of f on D.
inline std::vector<double> thresholds(const Fn& f, Mask d) {
  auto v = f.distinct_values(d);
  if (v.empty() || v.front() != 0.0) v.insert(v.begin(), 0.0);
  return v;
}

}  // namespace detail

inline RelationVerdict is_comonotone(const Fn& f, const Fn& g, Mask domain) {
  detail::require_same_size(f, g, "is_comonotone");
  f.space().require_valid(domain);
  RelationVerdict v;
  v.relation = Relation::comonotone;
  const auto pts = detail::points_of(domain);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++v.evaluated;
      const double fx = f[pts[i]].value(), fy = f[pts[j]].value();
      const double gx = g[pts[i]].value(), gy = g[pts[j]].value();
      if ((fx < fy && gx > gy) || (fx > fy && gx < gy)) {
        v.holds = false;
        v.witness = Witness{{singleton(pts[i]), singleton(pts[j])}, {fx, fy, gx, gy}, "f and g ordered oppositely"};
        return v;
      }
    }
  return v;
}

inline RelationVerdict is_comonotone(const Fn& f, const Fn& g) { return is_comonotone(f, g, f.space().full()); }

/**
 * inf_A (f * g) = (inf_A f) * (inf_A g) for nonempty A subset of D. Exhaustive
 * up to 14 points; beyond that, `samples` random subsets drawn from `seed`.
 */
inline RelationVerdict is_star_associated(const Fn& f, const Fn& g, const BinaryOp& star, Mask domain,
                                          std::size_t samples = kStarSamples, std::uint64_t seed = 1) {
  detail::require_same_size(f, g, "is_star_associated");
  f.space().require_valid(domain);
  RelationVerdict v;
  v.relation = Relation::star_associated;
  const auto pts = detail::points_of(domain);
  const std::size_t k = pts.size();
  std::vector<double> fv(k), gv(k), sv(k);
  for (std::size_t i = 0; i < k; ++i) {
    fv[i] = f[pts[i]].value();
    gv[i] = g[pts[i]].value();
    sv[i] = star.raw(fv[i], gv[i]);
  }
  // Subsets are over the compressed index set {0..k-1}.
  auto test = [&](std::uint32_t sub) {
    double fi = kInf, gi = kInf, si = kInf;
    for (std::size_t i = 0; i < k; ++i)
      if ((sub >> i) & 1U) {
        fi = std::min(fi, fv[i]);
        gi = std::min(gi, gv[i]);
        si = std::min(si, sv[i]);
      }
    ++v.evaluated;
    const double rhs = star.raw(fi, gi);
    if (approx_eq(si, rhs)) return true;
    Mask a = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((sub >> i) & 1U) a |= singleton(pts[i]);
    v.holds = false;
    v.witness = Witness{{a}, {si, fi, gi, rhs}, "inf(f * g) != inf f * inf g on A"};
    return false;
  };
  if (static_cast<int>(k) <= kStarExhaustiveLimit) {
    for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << k); ++sub)
      if (!test(sub)) return v;
    return v;
  }
  v.mode = CheckMode::sampled;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint32_t sub = 0;
    while (sub == 0) sub = static_cast<std::uint32_t>(rng.next()) & ((std::uint32_t{1} << k) - 1);
    if (!test(sub)) return v;
  }
  return v;
}

/**
 * mu(D n ({f > a} u {g > b})) <= mu(D n {f > a}) [+] mu(D n {g > b}) for a, b in
 * {0} and the realized values; level sets are constant between those.
 */
inline RelationVerdict is_mu_subadditive(const Fn& f, const Fn& g, const BinaryOp& boxplus, const MonotoneMeasure& mu,
                                         Mask domain) {
  detail::require_same_size(f, g, "is_mu_subadditive");
  if (f.size() != mu.size()) throw std::invalid_argument("is_mu_subadditive: measure lives on a different space");
  f.space().require_valid(domain);
  RelationVerdict v;
  v.relation = Relation::mu_subadditive;
  for (double a : detail::thresholds(f, domain))
    for (double b : detail::thresholds(g, domain)) {
      ++v.evaluated;
      const Mask fa = f.level_gt(a, domain), gb = g.level_gt(b, domain);
      const double lhs = mu(fa | gb).value();
      const double rhs = boxplus.raw(mu(fa).value(), mu(gb).value());
      if (!approx_le(lhs, rhs)) {
        v.holds = false;
        v.witness = Witness{{fa, gb}, {a, b, lhs, rhs}, "mu({f > a} u {g > b}) > mu({f > a}) [+] mu({g > b})"};
        return v;
      }
    }
  return v;
}

/// mu({f > t} n {g > s}) >= mu({f > t}) mu({g > s}) over {0} and the realized values.
inline RelationVerdict is_pqd(const Fn& f, const Fn& g, const MonotoneMeasure& mu) {
  detail::require_same_size(f, g, "is_pqd");
  if (f.size() != mu.size()) throw std::invalid_argument("is_pqd: measure lives on a different space");
  RelationVerdict v;
  v.relation = Relation::pqd;
  const Mask x = f.space().full();
  for (double t : detail::thresholds(f, x))
    for (double s : detail::thresholds(g, x)) {
      ++v.evaluated;
      const Mask ft = f.level_gt(t, x), gs = g.level_gt(s, x);
      const double joint = mu(ft & gs).value();
      const double prod = xmul(mu(ft).value(), mu(gs).value());
      if (!approx_le(prod, joint)) {
        v.holds = false;
        v.witness = Witness{{ft, gs}, {t, s, joint, prod}, "mu({f > t} n {g > s}) < mu({f > t}) mu({g > s})"};
        return v;
      }
    }
  return v;
}

}  // namespace nonadditive

#endif  // NONADDITIVE_RELATIONS_HPP
