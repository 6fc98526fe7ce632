#pragma once

// Busemann sine and curvature, the inflection pole and inflection curve, and
// the Euler-Savary checks at the start of a rolling motion (s = 0).

#include <functional>
#include <optional>
#include <vector>

#include "mkin/curves.hpp"
#include "mkin/kinematics.hpp"
#include "mkin/numerics.hpp"
#include "mkin/plane.hpp"

namespace mkin {

/// sigma(T) |sin_E(a, b)| / (sigma(a) sigma(b)). Zero iff a and b are parallel.
double busemann_sine(const PlaneContext& ctx, Vec2 a_dir, Vec2 b_dir);

using Path = std::function<Vec2(double)>;

/// 2 sm(chord(s-h, s), chord(s, s+h)) / ||x(s+h) - x(s-h)||, signed positive
/// for counterclockwise turning.
double chord_curvature(const Path& x, const PlaneContext& ctx, double s, double h);

/// chord_curvature extrapolated over {h, h/2, h/4}.
numerics::LimitEstimate curvature_limit(const Path& x, const PlaneContext& ctx, double s, double h);

/// Limit route on a curve; s +- h must lie in the domain of open curves.
numerics::LimitEstimate busemann_curvature_limit(const Curve& c, const PlaneContext& ctx, double s,
                                                 double h = 1e-3);

struct CurvatureSample {
  Vec2 point;
  double chi_limit = 0.0;
  double chi_formula = 0.0;
  double chi_euclidean = 0.0;
  double sigma_t = 0.0;
  double sigma_T = 0.0;
};

/// chi = sigma(T) / sigma(t)^3 chi_E, with the limit route filled in as well.
CurvatureSample busemann_curvature_formula(const Curve& c, const PlaneContext& ctx, double s,
                                           double h = 1e-3);

/// Difference quotient of Q along c against Q^2(c(s)) / sigma(t_c):
/// the norm of their difference relative to ||Q^2(c(s))||.
double q_derivative_check(const Curve& c, const PlaneContext& ctx, double s, double h);

/// Data of the motion at s = 0.
struct PoleFrame {
  Vec2 K;           ///< instantaneous pole
  Vec2 v_K;         ///< common unit tangent of the polodes
  double phi_dot;   ///< d phi / ds
  double omega_dot; ///< Euclidean turning rate of the fixed minus the moving tangent
  Vec2 w;           ///< vector LK = Q(v_K / phi_dot) / sigma(t_K)
  Vec2 L;           ///< inflection pole K - w
};

/// Throws TranslativeMotion when phi_dot(0) vanishes.
PoleFrame pole_frame(const RollingMotion& m);

/// L(P) = P - LP with LP = -(Q^2(KP) / sigma(t_P) - Q(v_K / phi_dot) / sigma(t_K)).
Vec2 inflection_pole_field(const RollingMotion& m, const PlaneContext& ctx, Vec2 P);

/// Signed distance t along the unit direction u with K + t u on the
/// inflection curve; NaN when the line through K misses it.
double inflection_distance(const PoleFrame& f, const PlaneContext& ctx, Vec2 u);

struct InflectionPoint {
  Vec2 direction;  ///< Minkowski unit direction from K
  bool found = false;
  Vec2 point;      ///< on the inflection curve
  Vec2 ret;        ///< reflection of point in K (return curve)
  double membership = 0.0;  ///< |[LP, KP]| / (||LP|| ||KP||)
};

struct InflectionCurve {
  PoleFrame frame;
  std::vector<InflectionPoint> points;
  int gaps = 0;
};

/// Fan of `fan_size` directions about K; directions without a positive root
/// are recorded as gaps.
InflectionCurve inflection_curve(const RollingMotion& m, const PlaneContext& ctx, int fan_size);

/// Every ray from K meets the locus at most once and the directions that
/// meet it form one arc.
bool inflection_starlike(const InflectionCurve& curve);

/// (max - min) / mean of ||P - c|| over the locus for the center c that
/// minimizes the variance of those distances.
double minkowski_radial_spread(const InflectionCurve& curve, const PlaneContext& ctx);

struct EsFirst {
  Vec2 P, I_P, O_P;
  double KP = 0.0, KI = 0.0, KO = 0.0;  ///< directed lengths along K -> P
  double radius = 0.0;                  ///< ||O_P P|| from the roulette curvature
  double radius_predicted = 0.0;        ///< ||KP||^2 / ||I_P P||
  numerics::LimitEstimate chi;          ///< roulette curvature at P
  double residual_first = 0.0;
  double residual_directed = 0.0;
};

/// Throws PoleCoincidence (P = K) and OnInflectionCurve.
EsFirst es_first(const RollingMotion& m, const PlaneContext& ctx, Vec2 P, double h = 1e-3);

struct EsSecond {
  numerics::LimitEstimate chi_fixed, chi_moving;
  double lhs = 0.0;      ///< chi_fixed - chi_moving (limit route)
  double rhs = 0.0;      ///< sigma(T) / sigma(t_K)^2 / alpha_K, signed by omega_dot
  double alpha_K = 0.0;  ///< Minkowski speed of the pole per Euclidean turning angle
  double residual = 0.0;
  double observed_order = 0.0;
};

EsSecond es_second(const RollingMotion& m, const PlaneContext& ctx, double h = 1e-3);

struct EsCombined {
  Vec2 P;
  double lhs = 0.0;          ///< magnitude of the roulette side
  double rhs = 0.0;          ///< |phi'(0) (chi_fixed - chi_moving)|, phi' per Euclidean angle
  double rhs_formula = 0.0;  ///< |phi'(0)| / (sigma(t_K)^2 alpha_K)
  double residual = 0.0;
};

/// Requires sigma(T) = 1 for ctx (see normalized_context); throws BadParams otherwise.
EsCombined es_combined(const RollingMotion& m, const PlaneContext& ctx, Vec2 P, double h = 1e-3);

/// The same norm rescaled so that sigma(T) = 1. `factor` receives the scale.
PlaneContext normalized_context(const PlaneContext& ctx, double* factor = nullptr);

}  // namespace mkin
