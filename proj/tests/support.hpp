// Shared generators for the unit and property tests.
#ifndef NONADDITIVE_TESTS_SUPPORT_HPP
#define NONADDITIVE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "nonadditive/core.hpp"
#include "nonadditive/measures.hpp"

namespace testgen {

using namespace nonadditive;

/// Values on a 1/16 grid of [0, hi].
inline std::vector<double> grid_values(Rng& rng, std::size_t n, double hi = 1.0, double step = 1.0 / 16.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.grid_value(hi, step);
  return v;
}

inline Fn unit_fn(Rng& rng, std::size_t n) { return Fn(grid_values(rng, n), ValueScale::unit()); }

/// Values in [0, 4] with an occasional +inf entry.
inline Fn extended_fn(Rng& rng, std::size_t n, double inf_rate = 0.0) {
  std::vector<XReal> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.coin(inf_rate) ? kInf : rng.grid_value(4.0, 0.125));
  return Fn(std::move(v), ValueScale::extended_half_line());
}

/// Comonotone pair: both functions sorted along one random permutation of the points.
inline std::pair<Fn, Fn> comonotone_pair(Rng& rng, std::size_t n, ValueScale scale, double hi = 1.0) {
  auto a = grid_values(rng, n, hi), b = grid_values(rng, n, hi);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[perm[i]] = a[i];
    g[perm[i]] = b[i];
  }
  return {Fn(f, scale), Fn(g, scale)};
}

inline MeasureFamily any_family(Rng& rng) {
  static const MeasureFamily all[] = {MeasureFamily::monotonized_random, MeasureFamily::possibility, MeasureFamily::distortion_concave,
                                      MeasureFamily::distortion_convex, MeasureFamily::lambda_sugeno, MeasureFamily::non_maxitive};
  return all[rng.below(6)];
}

/// Random family normalized to mu(X) = 1; zero measures are redrawn.
inline MonotoneMeasure unit_measure(Rng& rng, std::size_t n) {
  while (true) {
    const auto fam = any_family(rng);
    auto mu = generate_measure(rng, fam, n);
    if (mu.total().value() > 0.0) return normalized(mu);
  }
}

inline std::size_t size_between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

}  // namespace testgen

#endif
