#pragma once

// Independent reference computations. Nothing here calls into the library,
// so agreement with it is evidence rather than a restatement.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline double lp_norm(double x, double y, double p) {
  if (std::isinf(p)) return std::max(std::abs(x), std::abs(y));
  return std::pow(std::pow(std::abs(x), p) + std::pow(std::abs(y), p), 1.0 / p);
}

/// Point of the l_p unit circle at the Euclidean angle parameter theta:
/// (sgn c |c|^(2/p), sgn s |s|^(2/p)) satisfies |x|^p + |y|^p = 1.
inline std::pair<double, double> lp_circle(double theta, double p) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {std::copysign(std::pow(std::abs(c), 2.0 / p), c),
          std::copysign(std::pow(std::abs(s), 2.0 / p), s)};
}

/// Length of the l_p unit circle measured in the l_p norm, by an inscribed
/// polygon with n vertices (converges from below at second order).
inline double lp_circumference(double p, int n) {
  double total = 0.0;
  auto prev = lp_circle(0.0, p);
  for (int i = 1; i <= n; ++i) {
    const auto cur = lp_circle(2.0 * pi * i / n, p);
    total += lp_norm(cur.first - prev.first, cur.second - prev.second, p);
    prev = cur;
  }
  return total;
}

/// Euclidean area enclosed by the l_p unit circle, shoelace over n vertices.
inline double lp_area(double p, int n) {
  double a = 0.0;
  auto prev = lp_circle(0.0, p);
  for (int i = 1; i <= n; ++i) {
    const auto cur = lp_circle(2.0 * pi * i / n, p);
    a += prev.first * cur.second - cur.first * prev.second;
    prev = cur;
  }
  return 0.5 * a;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Cycloid of a unit wheel rolling on the x-axis: (s - sin s, 1 - cos s).
inline std::pair<double, double> cycloid(double s) { return {s - std::sin(s), 1.0 - std::cos(s)}; }

/// Curvature radius of the cycloid x = a(t - sin t), y = a(1 - cos t): 4a |sin(t/2)|.
inline double cycloid_radius(double t, double a = 1.0) { return 4.0 * a * std::abs(std::sin(t / 2)); }

}  // namespace oracle
