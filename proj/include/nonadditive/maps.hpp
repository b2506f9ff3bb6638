#ifndef NONADDITIVE_MAPS_HPP
#define NONADDITIVE_MAPS_HPP

#include <functional>
#include <string>
#include <utility>

#include "nonadditive/core.hpp"

namespace nonadditive {

/// An increasing bijection phi: Y -> Y together with its inverse.
class PhiMap {
 public:
  PhiMap(std::string name, ValueScale scale, std::function<double(double)> forward, std::function<double(double)> inverse)
      : name_(std::move(name)), scale_(scale), forward_(std::move(forward)), inverse_(std::move(inverse)) {}

  static PhiMap identity(ValueScale scale = ValueScale::extended_half_line()) {
    return {"identity", scale, [](double x) { return x; }, [](double x) { return x; }};
  }

  /// x -> x^p, p > 0.
  static PhiMap power(double p, ValueScale scale = ValueScale::extended_half_line()) {
    if (!(p > 0.0)) throw std::invalid_argument("PhiMap::power: exponent must be > 0");
    if (p == 1.0) return identity(scale);
    return {"power(" + to_string(XReal(p)) + ")", scale, [p](double x) { return xpow(x, p); },
            [p](double x) { return xroot(x, p); }};
  }

  const std::string& name() const { return name_; }
  const ValueScale& scale() const { return scale_; }
  bool is_identity() const { return name_ == "identity"; }

  double forward(double x) const { return forward_(x); }
  double inverse(double y) const { return inverse_(y); }

  /// Increasing on the grid, onto Y at the endpoints, and inverse(forward(y)) = y to 1e-12.
  CheckResult validate(double step = 1.0 / 64.0) const {
    const auto grid = standard_grid(scale_, step);
    double prev = -1.0;
    for (double y : grid) {
      const double fy = forward_(y);
      if (!scale_.contains(fy) || !(fy > prev))
        return failure("forward not strictly increasing into Y", y, fy);
      const double back = inverse_(fy);
      if (!approx_eq(back, y)) return failure("inverse(forward(y)) != y", y, back);
      prev = fy;
    }
    if (forward_(0.0) != 0.0) return failure("forward(0) != 0", 0.0, forward_(0.0));
    if (scale_.closed() && !approx_eq(forward_(scale_.upper().value()), scale_.upper().value()))
      return failure("forward(m) != m", scale_.upper().value(), forward_(scale_.upper().value()));
    CheckResult r;
    r.margin = 0.0;
    r.evaluated = grid.size();
    return r;
  }

 private:
  static CheckResult failure(const std::string& what, double y, double v) {
    CheckResult r;
    r.verdict = Verdict::violated;
    r.margin = 0.0;
    r.witness = Witness{{}, {y, v}, "PhiMap: " + what};
    return r;
  }

  std::string name_;
  ValueScale scale_;
  std::function<double(double)> forward_;
  std::function<double(double)> inverse_;
};

/// A decreasing bijection h: Y -> Y with h(0) > 0 and h(m) = 0, Y = [0, m].
class DualityMap {
 public:
  DualityMap(std::string name, ValueScale scale, std::function<double(double)> h, std::function<double(double)> h_inverse,
             bool involution)
      : name_(std::move(name)), scale_(scale), h_(std::move(h)), h_inverse_(std::move(h_inverse)), involution_(involution) {}

  /// h(x) = 1 - x on [0, 1].
  static DualityMap one_minus() {
    auto h = [](double x) { return 1.0 - x; };
    return {"one_minus", ValueScale::unit(), h, h, true};
  }

  /// h(x) = 1/x on [0, inf] with 1/0 = inf and 1/inf = 0.
  static DualityMap reciprocal() {
    auto h = [](double x) { return ::nonadditive::reciprocal(XReal(x)).value(); };
    return {"reciprocal", ValueScale::extended_half_line(), h, h, true};
  }

  const std::string& name() const { return name_; }
  const ValueScale& scale() const { return scale_; }
  bool involution() const { return involution_; }

  double operator()(double x) const { return h_(x); }
  double inverse(double y) const { return h_inverse_(y); }

  CheckResult validate(double step = 1.0 / 64.0) const {
    auto fail = [](const std::string& what, double y, double v) {
      CheckResult r;
      r.verdict = Verdict::violated;
      r.margin = 0.0;
      r.witness = Witness{{}, {y, v}, "DualityMap: " + what};
      return r;
    };
    if (!scale_.closed()) return fail("scale must be closed [0, m]", 0.0, 0.0);
    const double m = scale_.upper().value();
    if (!(h_(0.0) > 0.0)) return fail("h(0) must be > 0", 0.0, h_(0.0));
    if (h_(m) != 0.0) return fail("h(m) must be 0", m, h_(m));
    const auto grid = standard_grid(scale_, step);
    double prev = kInf;
    bool first = true;
    for (double y : grid) {
      const double hy = h_(y);
      if (!scale_.contains(hy)) return fail("h(y) outside Y", y, hy);
      if (!first && !(hy < prev)) return fail("h not strictly decreasing", y, hy);
      if (!approx_eq(h_(h_inverse_(y)), y)) return fail("h(h^-1(y)) != y", y, h_(h_inverse_(y)));
      if (!approx_eq(h_inverse_(hy), y)) return fail("h^-1(h(y)) != y", y, h_inverse_(hy));
      prev = hy;
      first = false;
    }
    CheckResult r;
    r.margin = 0.0;
    r.evaluated = grid.size();
    return r;
  }

 private:
  std::string name_;
  ValueScale scale_;
  std::function<double(double)> h_;
  std::function<double(double)> h_inverse_;
  bool involution_;
};

}  // namespace nonadditive

#endif  // NONADDITIVE_MAPS_HPP
