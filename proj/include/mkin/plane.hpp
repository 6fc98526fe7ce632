#pragma once

// The normed (Minkowski) plane: unit ball, norm, Birkhoff orthogonality,
// the Q operator, the Busemann sigma functions and the arc-length
// parameterization of the unit circle.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mkin/vec2.hpp"

namespace mkin {

enum class BallKind { euclidean, lp, polygon, radial };

std::string_view to_string(BallKind kind);

/// Immutable description of a normed plane. Cheap to copy.
///
/// The unit circle is carried in one canonical form: a fan of boundary
/// samples with the cumulative Minkowski arc length. Euclidean and l_p balls
/// also evaluate their norm analytically; polygon balls use exact piecewise
/// linear arc length.
class PlaneContext {
 public:
  static constexpr int kDefaultSamples = 4096;

  static PlaneContext euclidean(int samples = kDefaultSamples);
  /// l_p ball. p = 1 and p = inf produce the corresponding polygon balls.
  static PlaneContext lp(double p, int samples = kDefaultSamples);
  /// Counterclockwise vertices of an origin-symmetric convex polygon. If no
  /// vertex has its antipode in the list, the negated vertices are appended.
  static PlaneContext polygon(std::vector<Vec2> vertices, int samples = kDefaultSamples);
  /// Radial function r(angle) sampled at equally spaced angles starting at 0,
  /// covering either [0, 2pi) or [0, pi) (completed by symmetry).
  static PlaneContext radial(std::vector<double> radii, bool half_turn,
                             int samples = kDefaultSamples);
  /// Ball spec: `euclidean`, `lp:<p>`, `polygon:<path>`, `radial:<path>`.
  static PlaneContext from_spec(std::string_view spec, int samples = kDefaultSamples);

  /// The same norm with its unit ball multiplied by `factor`.
  PlaneContext scaled(double factor) const;

  BallKind kind() const;
  double exponent() const;               ///< l_p exponent (2 for euclidean)
  double scale() const;                  ///< homothety factor from scaled()
  const std::vector<Vec2>& vertices() const;  ///< polygon vertices (empty otherwise)
  const std::string& spec() const;
  bool smooth() const;
  bool strictly_convex() const;
  int samples() const;
  /// Identity of the underlying ball; copies share it.
  std::uint64_t id() const;

  double norm(Vec2 v) const;
  /// Gradient of the norm at v != 0. Requires a smooth ball.
  Vec2 norm_gradient(Vec2 v) const;
  /// [x, y] = ||y|| * (one-sided) derivative of the norm at y in direction x.
  /// Vanishes exactly when y is Birkhoff orthogonal to x.
  double semi_inner(Vec2 x, Vec2 y) const;
  /// True when ||x + t y|| >= (1 - tol) ||x|| for all t.
  bool is_birkhoff_orthogonal(Vec2 x, Vec2 y, double tol = 1e-9) const;
  /// Counterclockwise tangent of ||x|| dB at x, with norm ||x||.
  Vec2 q_normal(Vec2 x) const;
  /// The vector y with ||y|| = ||x|| and q_normal(y) a positive multiple of x.
  Vec2 q_inverse(Vec2 x) const;
  /// Minkowski norm of the Euclidean unit vector along `direction`.
  double sigma_line(Vec2 direction) const;
  /// pi over the Euclidean area of the unit ball.
  double sigma_plane() const;
  double area() const;
  double circumference() const;

  /// Euclidean radius of the unit circle in direction `psi`.
  double radius(double psi) const;
  /// Unit circle by Minkowski arc length, t = 0 on the positive x-axis,
  /// counterclockwise, periodic with period circumference().
  Vec2 boundary_point(double t) const;
  /// Derivative of boundary_point (a Minkowski unit vector).
  Vec2 boundary_tangent(double t) const;
  /// Second derivative of boundary_point. Requires a smooth ball.
  Vec2 boundary_acceleration(double t) const;
  /// Arc-length position in [0, L) of the ray with the given direction.
  double boundary_position(Vec2 direction) const;
  /// Arc-length rotation about the origin by the raw angle `phi`.
  Vec2 rotate_raw(Vec2 x, double phi) const;

  struct TableEntry {
    double angle;
    double arclength;
  };
  /// The boundary fan: Euclidean direction angle and cumulative arc length.
  std::vector<TableEntry> boundary_table() const;

  struct Impl;

 private:
  explicit PlaneContext(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mkin
