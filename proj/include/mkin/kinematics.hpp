#pragma once

// Rolling without slipping in a normed plane, roulettes, and the classical
// Euclidean pole kinematics used as an oracle.

#include <functional>
#include <limits>
#include <vector>

#include "mkin/curves.hpp"
#include "mkin/plane.hpp"

namespace mkin {

/// The moving polode rolling on the fixed polode; both by Minkowski arc length.
///
/// Phi_s(p) = fixed(s) + R(phi(s)) (p - moving(s)), where R is the arc-length
/// rotation of the unit circle about the origin and phi(s) is the raw angle
/// carrying the moving tangent onto the fixed tangent.
class RollingMotion {
 public:
  static constexpr int kBranchGrid = 4096;

  /// s_max defaults to the length of the fixed polode (capped by open curves).
  RollingMotion(const Curve& fixed, const Curve& moving, const PlaneContext& ctx, int steps,
                double s_max = std::numeric_limits<double>::quiet_NaN());

  const Curve& fixed() const { return fixed_; }
  const Curve& moving() const { return moving_; }
  const PlaneContext& ctx() const { return ctx_; }
  double beta() const { return beta_; }
  const std::vector<double>& s_grid() const { return grid_; }

  /// Raw rotation angle (Minkowski arc length on the unit circle).
  double phi(double s) const;
  /// d phi / ds, from the curvature of both tangent indicatrices.
  double phi_dot(double s) const;
  /// The instantaneous pole, fixed(s).
  Vec2 pole(double s) const;

  /// Phi_s(p). Throws DomainViolation for s outside [0, beta].
  Vec2 transform(double s, Vec2 p) const;
  /// Phi_s(p) for any s; used by symmetric stencils at the ends.
  Vec2 transform_unchecked(double s, Vec2 p) const;

 private:
  Curve fixed_, moving_;
  PlaneContext ctx_;
  double beta_ = 0.0;
  std::vector<double> grid_;
  std::vector<double> branch_s_, branch_phi_;
};

Vec2 motion_transform(const RollingMotion& m, double s, Vec2 p);

struct RouletteSample {
  double s;
  Vec2 position;
  Vec2 velocity;
  Vec2 acceleration;
  Vec2 pole;
};

struct RouletteTrace {
  Vec2 tracked;
  double h;
  std::vector<RouletteSample> samples;
};

/// Trace of p over the motion grid with central differences of step h.
RouletteTrace roulette_trace(const RollingMotion& m, Vec2 p, double h = 1e-4);

/// |[v, P - K]| / (||v|| ||P - K||) at s, with v the central-difference
/// velocity of step trace.h. Vanishes when P - K is Birkhoff orthogonal to v.
double instantaneous_pole_check(const RouletteTrace& trace, const RollingMotion& m,
                                const PlaneContext& ctx, double s);

/// Fixed: the ctx unit circle. Moving: its homothet of ratio 1/n through the
/// starting contact point. The trace of that point is the n-cusped hypocycloid.
RollingMotion hypocycloid_motion(const PlaneContext& ctx, int n, int steps);

/// Cusps of the trace: local minima of the speed below `threshold` where the
/// direction of travel reverses (periodic over the grid).
std::vector<double> cusp_parameters(const RouletteTrace& trace, double threshold = 1e-3);

/// Planar Euclidean motion x = p(t) + R(phi(t)) u.
struct EuclideanMotion {
  Curve position;                     ///< p(t), derivatives from the Curve
  std::function<double(double)> phi;  ///< rotation angle
  std::function<double(double)> phi_d1 = nullptr;
  std::function<double(double)> phi_d2 = nullptr;

  Vec2 apply(double t, Vec2 u) const;
};

struct Polodes {
  Curve fixed;   ///< x0 = p + Q p', derivative in phi
  Curve moving;  ///< u0 = Q R(-phi) p'
};

/// Throws TranslativeMotion if phi' vanishes on a sample sweep.
Polodes euclidean_polodes(const EuclideanMotion& motion);

}  // namespace mkin
