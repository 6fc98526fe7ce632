#pragma once

// Parametric curves, Minkowski arc length and starlike curves.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mkin/numerics.hpp"
#include "mkin/plane.hpp"
#include "mkin/vec2.hpp"

namespace mkin {

/// Immutable parametric curve on [t0, t1]. Closed curves are periodic.
class Curve {
 public:
  using Fn = std::function<Vec2(double)>;

  Curve(Fn eval, double t0, double t1, bool closed, Fn d1 = nullptr, Fn d2 = nullptr);

  /// Point at t. Open curves throw DomainViolation outside the domain;
  /// closed curves wrap.
  Vec2 eval(double t) const;
  Vec2 operator()(double t) const { return eval(t); }
  Vec2 derivative(double t) const;
  Vec2 second_derivative(double t) const;

  /// The same three without the domain check. Open curves evaluate their
  /// formula past the ends; used by symmetric difference stencils.
  Vec2 eval_unchecked(double t) const;
  Vec2 derivative_unchecked(double t) const;
  Vec2 second_derivative_unchecked(double t) const;

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double span() const { return t1_ - t0_; }
  bool closed() const { return closed_; }
  bool analytic_derivative() const { return static_cast<bool>(d1_); }
  /// Step used by finite difference derivatives.
  double fd_step() const { return 1e-6 * span(); }

  /// Id of the ball in which the parameter is arc length, or 0.
  std::uint64_t arclength_ball() const { return arclength_ball_; }
  bool is_arclength(const PlaneContext& ctx) const { return arclength_ball_ == ctx.id(); }
  Curve with_arclength_ball(std::uint64_t id) const;

  /// Same trace traversed backwards on the same domain.
  Curve reversed() const;

 private:
  double wrap(double t) const;

  Fn eval_, d1_, d2_;
  double t0_, t1_;
  bool closed_;
  std::uint64_t arclength_ball_ = 0;
};

/// Minkowski length of c over [t1, t2] by adaptive quadrature of ||c'(t)||.
double arc_length(const Curve& c, const PlaneContext& ctx, double t1, double t2);
/// Length of the inscribed polygon with n equal parameter steps.
double polygonal_length(const Curve& c, const PlaneContext& ctx, double t1, double t2, int n);
/// Cumulative arc length over the whole domain on `panels` equal panels.
numerics::CumulativeTable arclen_table(const Curve& c, const PlaneContext& ctx, int panels = 2048);

/// Reparameterization by Minkowski arc length from t0. Domain [0, L].
Curve reparam_by_arclength(const Curve& c, const PlaneContext& ctx, int panels = 2048);

/// Unit tangent in the Minkowski norm. For an arc-length curve this is the
/// derivative itself (checked to be a unit vector within 1e-6).
Vec2 tangent_direction(const Curve& c, const PlaneContext& ctx, double s);

/// A closed curve together with a point seeing every ray exactly once.
/// Clockwise curves are reversed so the traversal is counterclockwise.
class StarlikeCurve {
 public:
  static constexpr int kFanRays = 4096;

  StarlikeCurve(Curve base, Vec2 center);

  const Curve& base() const { return base_; }
  Vec2 center() const { return center_; }

  /// Intersection of the ray center + t d (t > 0) with the curve.
  Vec2 radial_point(Vec2 direction) const;
  /// Curve parameter of radial_point(direction).
  double radial_parameter(Vec2 direction) const;
  /// Continuous angle of c(t) - center, increasing by 2pi over the domain.
  double polar_angle(double t) const;

 private:
  Curve base_;
  Vec2 center_;
  std::vector<double> t_;      // sample parameters, t_.front() = t0, t_.back() = t1
  std::vector<double> angle_;  // unwrapped polar angle at the samples
};

namespace curves {

/// r(phi) = p / (1 + eps cos phi) about the focus at the origin.
Curve heliocentric_ellipse(double p, double eps);
/// (1/2)(-3 cos t + cos 3t, -3 sin t + sin 3t), t in [0, 2pi].
Curve nephroid();
/// Euclidean circle, counterclockwise from the point at angle `start`.
Curve circle(Vec2 center, double radius, double start = 0.0);
/// The unit circle of ctx by arc length (already an arc-length curve),
/// starting at arc-length position `start`.
Curve unit_circle(const PlaneContext& ctx, double start = 0.0);
/// center + ratio (c(t) - center). Negative ratios are allowed.
Curve homothet(const Curve& c, Vec2 center, double ratio);
/// Segment from a to b on [0, 1].
Curve segment(Vec2 a, Vec2 b);
/// Interpolating curve through (t, point) samples. Closed when the first and
/// last points coincide.
Curve from_samples(const std::vector<double>& t, const std::vector<Vec2>& points);

using Resolver = std::function<std::optional<Curve>(std::string_view)>;

/// Builds a curve from the scenario mini-language:
/// `ellipse:p=<v>,eps=<v>`, `nephroid`, `circle:cx,cy,r[,start]`, `unitcircle[:start]`,
/// `homothet:<curve>;cx,cy;ratio`, `segment:x0,y0,x1,y1`, `reverse:<curve>`,
/// `samples:<path>`, or a name known to `resolve`.
Curve from_spec(std::string_view spec, const PlaneContext& ctx, const Resolver& resolve = nullptr);

}  // namespace curves

}  // namespace mkin
