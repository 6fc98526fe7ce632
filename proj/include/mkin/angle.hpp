#pragma once

// Angle measures on starlike curves, general rotations and the motion group.

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>

#include "mkin/curves.hpp"
#include "mkin/plane.hpp"

namespace mkin {

enum class MeasureKind { arc_length, sector_area, custom_density };

std::string_view to_string(MeasureKind kind);

/// Normalized angle measure (full turn 2pi) on a starlike carrier.
class AngleMeasure {
 public:
  static constexpr int kTablePanels = 4096;

  /// Minkowski arc length of the carrier.
  static AngleMeasure arc_length(const StarlikeCurve& carrier, const PlaneContext& ctx);
  /// Euclidean area of the sector swept from the carrier center.
  static AngleMeasure sector_area(const StarlikeCurve& carrier);
  /// Arbitrary nonnegative density on the carrier parameter.
  static AngleMeasure custom_density(const StarlikeCurve& carrier,
                                     std::function<double(double)> density);
  /// `arclen`, `area` or `density:<path>` with `param weight` rows
  /// (linear interpolation, periodic).
  static AngleMeasure from_spec(std::string_view spec, const StarlikeCurve& carrier,
                                const PlaneContext& ctx);

  const StarlikeCurve& carrier() const;
  Vec2 center() const;
  MeasureKind kind() const;
  /// Un-normalized total (length, area, or integral of the density).
  double total_raw() const;
  std::uint64_t id() const;

  /// Normalized measure of the carrier arc from t0 to t, in [0, 2pi].
  double cdf(double t) const;
  /// Carrier parameter with cdf(t) = angle (angle taken mod 2pi).
  double parameter_at(double angle) const;
  /// cdf of the carrier point on the ray with this direction.
  double direction_angle(Vec2 direction) const;
  double density(double t) const;

  struct Impl;

 private:
  explicit AngleMeasure(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct BrassReport {
  bool total_ok = false;
  bool symmetric = false;
  bool atomless = false;
};

BrassReport brass_check(const AngleMeasure& m);

/// Measure of the counterclockwise carrier arc between the rays r1 and r2, in [0, 2pi).
double angle_between(const AngleMeasure& m, Vec2 r1, Vec2 r2);

class GeneralRotation {
 public:
  GeneralRotation(AngleMeasure measure, double theta);

  const AngleMeasure& measure() const { return measure_; }
  Vec2 center() const { return measure_.center(); }
  double theta() const { return theta_; }
  /// theta in un-normalized units (e.g. Minkowski arc length).
  double raw_theta() const { return theta_ * measure_.total_raw() / kTwoPi; }

  Vec2 apply(Vec2 q) const;

 private:
  AngleMeasure measure_;
  double theta_;
};

Vec2 rotate(const GeneralRotation& rot, Vec2 q);
/// Rotation by theta1 + theta2 (mod 2pi). Throws MeasureMismatch.
GeneralRotation compose(const GeneralRotation& a, const GeneralRotation& b);
GeneralRotation inverse(const GeneralRotation& r);

struct Polar {
  double radius;
  double angle;
};

/// Minkowski distance from the center and measure from the ray of q0.
Polar to_polar(const AngleMeasure& m, const PlaneContext& ctx, Vec2 q0, Vec2 q);
Vec2 from_polar(const AngleMeasure& m, const PlaneContext& ctx, Vec2 q0, Polar polar);

/// The rotation conjugated to act about `anchor`: x -> rot(x - anchor + p) - p + anchor.
Vec2 motion_apply(const GeneralRotation& rot, Vec2 anchor, Vec2 x);

/// `theta=<radians>` or `deg=<degrees>`.
double parse_rotation_angle(std::string_view spec);

}  // namespace mkin
