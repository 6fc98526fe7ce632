#include "mkin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "mkin/error.hpp"

namespace mkin::numerics {

double gauss_legendre(const ScalarFn& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss<double, 16>::integrate(f, a, b);
}

double integrate(const ScalarFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  double r = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, a, b, 18, tol, &err);
  return r;
}

double find_root(const ScalarFn& f, double a, double b) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw Error(ErrorCode::NoRoot, "no sign change on the bracket");
  }
  boost::uintmax_t iters = 200;
  auto tol = [](double x, double y) {
    return std::abs(x - y) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max({std::abs(x), std::abs(y), 1e-300});
  };
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  // Return the endpoint with the smaller residual.
  double x0 = r.first, x1 = r.second;
  return std::abs(f(x0)) <= std::abs(f(x1)) ? x0 : x1;
}

Minimum minimize(const ScalarFn& f, double a, double b) {
  auto r = boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits / 2);
  return {r.first, r.second};
}

CumulativeTable::CumulativeTable(ScalarFn density, double a, double b, int panels)
    : density_(std::move(density)), a_(a), b_(b) {
  if (panels < 1 || !(b > a)) throw Error(ErrorCode::BadParams, "cumulative table needs b > a");
  step_ = (b - a) / panels;
  nodes_.resize(panels + 1);
  dens_.resize(panels + 1);
  dens_slope_.resize(panels + 1);
  smooth_.assign(panels, 0);
  nodes_[0] = 0.0;
  for (int k = 0; k < panels; ++k) {
    nodes_[k + 1] = nodes_[k] + gauss_legendre(density_, node_param(k), node_param(k + 1));
  }
  const double h = 1e-2 * step_;
  for (int k = 0; k <= panels; ++k) {
    const double t = node_param(k);
    dens_[k] = density_(t);
    dens_slope_[k] = (-density_(t + 2 * h) + 8 * density_(t + h) - 8 * density_(t - h) +
                      density_(t - 2 * h)) /
                     (12 * h);
  }
  const double tol = 1e-13 * std::max(1.0, std::abs(nodes_.back()));
  for (int k = 0; k < panels; ++k) {
    if (!std::isfinite(dens_slope_[k]) || !std::isfinite(dens_slope_[k + 1])) continue;
    const double mid = node_param(k) + 0.5 * step_;
    const double exact = nodes_[k] + gauss_legendre(density_, node_param(k), mid);
    smooth_[k] = std::abs(hermite(k, mid).first - exact) <= tol;
  }
}

std::pair<double, double> CumulativeTable::hermite(int k, double t) const {
  const double h = step_;
  const double u = (t - node_param(k)) / h;
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  const double p0 = nodes_[k], p1 = nodes_[k + 1];
  const double m0 = dens_[k] * h, m1 = dens_[k + 1] * h;
  const double a0 = dens_slope_[k] * h * h, a1 = dens_slope_[k + 1] * h * h;
  const double value = p0 * (1 - 10 * u3 + 15 * u4 - 6 * u5) + m0 * (u - 6 * u3 + 8 * u4 - 3 * u5) +
                       a0 * (0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5) +
                       a1 * (0.5 * u3 - u4 + 0.5 * u5) + m1 * (-4 * u3 + 7 * u4 - 3 * u5) +
                       p1 * (10 * u3 - 15 * u4 + 6 * u5);
  const double slope = p0 * (-30 * u2 + 60 * u3 - 30 * u4) + m0 * (1 - 18 * u2 + 32 * u3 - 15 * u4) +
                       a0 * (u - 4.5 * u2 + 6 * u3 - 2.5 * u4) + a1 * (1.5 * u2 - 4 * u3 + 2.5 * u4) +
                       m1 * (-12 * u2 + 28 * u3 - 15 * u4) + p1 * (30 * u2 - 60 * u3 + 30 * u4);
  return {value, slope / h};
}

int CumulativeTable::panel_of(double t) const {
  int k = static_cast<int>(std::floor((t - a_) / step_));
  return std::clamp(k, 0, panels() - 1);
}

double CumulativeTable::value_slope(int k, double t, double* slope) const {
  if (smooth_[k]) {
    auto [v, d] = hermite(k, t);
    if (slope) *slope = d;
    return v;
  }
  if (slope) *slope = density_(t);
  const double tk = node_param(k);
  if (t == tk) return nodes_[k];
  return nodes_[k] + gauss_legendre(density_, tk, t);
}

double CumulativeTable::operator()(double t) const {
  const int k = panel_of(t);
  if (t < a_) return -gauss_legendre(density_, t, a_);
  if (t > b_) return nodes_.back() + gauss_legendre(density_, b_, t);
  return value_slope(k, t, nullptr);
}

double CumulativeTable::inverse(double value) const {
  // Locate the panel whose node values bracket `value`; values outside the
  // table extrapolate through the end panels.
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), value);
  int k = static_cast<int>(it - nodes_.begin()) - 1;
  k = std::clamp(k, 0, panels() - 1);
  double lo = node_param(k), hi = node_param(k + 1);
  const double v0 = nodes_[k], v1 = nodes_[k + 1];
  const bool inside = value >= v0 && value <= v1;
  double t = (v1 > v0) ? lo + (value - v0) / (v1 - v0) * step_ : lo;
  if (!inside) {
    // Extrapolation: plain Newton against the density from the linear guess.
    for (int i = 0; i < 60; ++i) {
      const double d = density_(t);
      if (!(d > 0.0)) break;
      const double dt = ((*this)(t) - value) / d;
      t -= dt;
      if (std::abs(dt) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    return t;
  }
  if (value == v0) return lo;
  if (value == v1) return hi;
  for (int i = 0; i < 100; ++i) {
    double d = 0.0;
    const double f = value_slope(k, t, &d) - value;
    if (f == 0.0) return t;
    if (f > 0.0) hi = t; else lo = t;
    double next = (d > 0.0) ? t - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 2e-16 * std::max(1.0, std::abs(t))) return next;
    t = next;
    if (hi - lo <= 4e-16 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

double observed_order(double a, double b, double c) {
  const double d1 = std::abs(a - b), d2 = std::abs(b - c);
  if (!(d1 > 0.0) || !(d2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(d1 / d2);
}

LimitEstimate richardson(const ScalarFn& g, double h) {
  LimitEstimate e;
  e.h = h;
  e.raw = {g(h), g(h / 2), g(h / 4)};
  // Two Richardson levels for an even error expansion (h^2, h^4).
  const double r1 = (4.0 * e.raw[1] - e.raw[0]) / 3.0;
  const double r2 = (4.0 * e.raw[2] - e.raw[1]) / 3.0;
  e.value = (16.0 * r2 - r1) / 15.0;
  e.observed_order = observed_order(e.raw[0], e.raw[1], e.raw[2]);
  return e;
}

}  // namespace mkin::numerics
