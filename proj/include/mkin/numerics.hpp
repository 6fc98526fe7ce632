#pragma once

// Quadrature, root finding and limit estimation shared by the geometry modules.

#include <array>
#include <functional>
#include <vector>

namespace mkin::numerics {

using ScalarFn = std::function<double(double)>;

/// 16-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const ScalarFn& f, double a, double b);

/// Adaptive Gauss-Kronrod integration to the given absolute tolerance.
double integrate(const ScalarFn& f, double a, double b, double tol = 1e-12);

/// Root of f on [a, b]; f(a) and f(b) must differ in sign. Throws NoRoot otherwise.
double find_root(const ScalarFn& f, double a, double b);

struct Minimum {
  double x;
  double value;
};

/// Minimum of a unimodal function on [a, b].
Minimum minimize(const ScalarFn& f, double a, double b);

/// Cumulative integral of a nonnegative density over a panel grid.
///
/// Node values come from Gauss-Legendre panels. Between nodes a quintic
/// Hermite interpolant (value, density, density slope) is used on panels where
/// it reproduces the quadrature at the panel midpoint; other panels (kinks of
/// the density) integrate a partial panel. The inverse runs safeguarded Newton
/// steps inside the bracketing panel.
class CumulativeTable {
 public:
  CumulativeTable() = default;
  CumulativeTable(ScalarFn density, double a, double b, int panels);

  double operator()(double t) const;
  double inverse(double value) const;

  double total() const { return nodes_.empty() ? 0.0 : nodes_.back(); }
  double begin() const { return a_; }
  double end() const { return b_; }
  int panels() const { return static_cast<int>(nodes_.size()) - 1; }
  double node_param(int k) const { return a_ + k * step_; }
  double node_value(int k) const { return nodes_[k]; }
  double density(double t) const { return density_(t); }

 private:
  int panel_of(double t) const;
  /// Value and slope of the Hermite interpolant on smooth panel k.
  std::pair<double, double> hermite(int k, double t) const;
  double value_slope(int k, double t, double* slope) const;

  ScalarFn density_;
  double a_ = 0.0, b_ = 0.0, step_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> dens_, dens_slope_;
  std::vector<char> smooth_;
};

/// Result of a symmetric-stencil limit with Richardson extrapolation.
struct LimitEstimate {
  double value = 0.0;                  ///< extrapolated limit
  std::array<double, 3> raw{};         ///< stencil values at h, h/2, h/4
  double h = 0.0;
  /// log2 of successive raw differences; NaN when the differences vanish.
  double observed_order = 0.0;
};

/// Estimates lim_{h->0} g(h) for a second-order symmetric stencil g.
LimitEstimate richardson(const ScalarFn& g, double h);

/// Observed convergence order of a sequence evaluated at h, h/2, h/4.
double observed_order(double a, double b, double c);

}  // namespace mkin::numerics
