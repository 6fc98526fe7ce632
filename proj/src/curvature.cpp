#include "mkin/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mkin/error.hpp"

namespace mkin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Euclidean turning rate of c at s per unit parameter.
double turning_rate(const Curve& c, double s) {
  const Vec2 d1 = c.derivative_unchecked(s), d2 = c.second_derivative_unchecked(s);
  return cross(d1, d2) / dot(d1, d1);
}

Vec2 minkowski_unit(const PlaneContext& ctx, Vec2 v) { return v / ctx.norm(v); }

}  // namespace

double busemann_sine(const PlaneContext& ctx, Vec2 a_dir, Vec2 b_dir) {
  if (a_dir == Vec2{} || b_dir == Vec2{}) throw Error(ErrorCode::ZeroVector, "line direction is zero");
  const Vec2 a = unit_e(a_dir), b = unit_e(b_dir);
  return ctx.sigma_plane() * std::abs(cross(a, b)) / (ctx.sigma_line(a) * ctx.sigma_line(b));
}

double chord_curvature(const Path& x, const PlaneContext& ctx, double s, double h) {
  const Vec2 p0 = x(s - h), p1 = x(s), p2 = x(s + h);
  const Vec2 a = p1 - p0, b = p2 - p1;
  if (a == Vec2{} || b == Vec2{}) throw Error(ErrorCode::ZeroVector, "degenerate chord");
  const double turn = cross(unit_e(a), unit_e(b));
  // Chords of a straight piece are parallel up to rounding.
  if (std::abs(turn) <= 8.0 * std::numeric_limits<double>::epsilon()) return 0.0;
  return sign_of(turn) * 2.0 * busemann_sine(ctx, a, b) / ctx.norm(p2 - p0);
}

numerics::LimitEstimate curvature_limit(const Path& x, const PlaneContext& ctx, double s, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::BadParams, "difference step must be positive");
  return numerics::richardson([&](double hh) { return chord_curvature(x, ctx, s, hh); }, h);
}

numerics::LimitEstimate busemann_curvature_limit(const Curve& c, const PlaneContext& ctx, double s,
                                                 double h) {
  if (!c.closed() && (s - h < c.t0() || s + h > c.t1())) {
    throw Error(ErrorCode::DomainViolation, "stencil leaves the curve domain");
  }
  return curvature_limit([&c](double t) { return c.eval_unchecked(t); }, ctx, s, h);
}

CurvatureSample busemann_curvature_formula(const Curve& c, const PlaneContext& ctx, double s,
                                           double h) {
  CurvatureSample out;
  out.point = c.eval(s);
  const Vec2 d1 = c.derivative(s), d2 = c.second_derivative(s);
  const double speed = norm_e(d1);
  if (!(speed > 0.0)) throw Error(ErrorCode::ZeroVector, "curve is singular here");
  out.chi_euclidean = cross(d1, d2) / (speed * speed * speed);
  out.sigma_t = ctx.sigma_line(d1);
  out.sigma_T = ctx.sigma_plane();
  out.chi_formula = out.sigma_T / std::pow(out.sigma_t, 3) * out.chi_euclidean;
  out.chi_limit = busemann_curvature_limit(c, ctx, s, h).value;
  return out;
}

double q_derivative_check(const Curve& c, const PlaneContext& ctx, double s, double h) {
  if (!ctx.smooth()) throw Error(ErrorCode::NonSmoothBall, "Q is not differentiable");
  if (!(h > 0.0)) throw Error(ErrorCode::BadParams, "difference step must be positive");
  const Vec2 x = c.eval_unchecked(s);
  const Vec2 xp = c.eval_unchecked(s + h), xm = c.eval_unchecked(s - h);
  const Vec2 quotient = (ctx.q_normal(xp) - ctx.q_normal(xm)) / ctx.norm(xp - xm);
  const Vec2 qq = ctx.q_normal(ctx.q_normal(x));
  const double sigma = ctx.sigma_line(c.derivative_unchecked(s));
  return ctx.norm(quotient - qq / sigma) / ctx.norm(qq);
}

PoleFrame pole_frame(const RollingMotion& m) {
  PoleFrame f;
  f.phi_dot = m.phi_dot(0.0);
  if (!(std::abs(f.phi_dot) > 1e-12)) {
    throw Error(ErrorCode::TranslativeMotion, "the motion does not rotate at s = 0");
  }
  const PlaneContext& ctx = m.ctx();
  f.K = m.pole(0.0);
  f.v_K = m.fixed().derivative_unchecked(0.0);
  f.omega_dot = turning_rate(m.fixed(), 0.0) - turning_rate(m.moving(), 0.0);
  f.w = ctx.q_normal(f.v_K / f.phi_dot) / ctx.sigma_line(f.v_K);
  f.L = f.K - f.w;
  return f;
}

Vec2 inflection_pole_field(const RollingMotion& m, const PlaneContext& ctx, Vec2 P) {
  const PoleFrame f = pole_frame(m);
  const Vec2 kp = P - f.K;
  if (kp == Vec2{}) return f.L;
  const Vec2 q = ctx.q_normal(kp);
  const Vec2 lp = f.w - ctx.q_normal(q) / ctx.sigma_line(q);
  return P - lp;
}

double inflection_distance(const PoleFrame& f, const PlaneContext& ctx, Vec2 u) {
  // [LP, KP] is affine in t along P = K + t u since Q is positively homogeneous.
  const Vec2 q = ctx.q_normal(u);
  const Vec2 g = ctx.norm_gradient(u);
  const double den = dot(g, ctx.q_normal(q));
  if (!(std::abs(den) > 0.0)) return kNaN;
  return ctx.sigma_line(q) * dot(g, f.w) / den;
}

InflectionCurve inflection_curve(const RollingMotion& m, const PlaneContext& ctx, int fan_size) {
  if (fan_size < 4) throw Error(ErrorCode::BadParams, "fan needs at least 4 directions");
  InflectionCurve out;
  out.frame = pole_frame(m);
  const PoleFrame& f = out.frame;
  out.points.resize(static_cast<std::size_t>(fan_size));
  for (int i = 0; i < fan_size; ++i) {
    InflectionPoint& ip = out.points[i];
    ip.direction = minkowski_unit(ctx, from_angle(kTwoPi * i / fan_size));
    const double t = inflection_distance(f, ctx, ip.direction);
    if (!(t > 0.0) || !std::isfinite(t)) {
      ++out.gaps;
      continue;
    }
    ip.found = true;
    ip.point = f.K + t * ip.direction;
    ip.ret = 2.0 * f.K - ip.point;
    const Vec2 kp = ip.point - f.K;
    const Vec2 lp = ip.point - inflection_pole_field(m, ctx, ip.point);
    const double scale = ctx.norm(lp) * ctx.norm(kp);
    ip.membership = scale > 0.0 ? std::abs(ctx.semi_inner(lp, kp)) / scale : 0.0;
  }
  return out;
}

bool inflection_starlike(const InflectionCurve& curve) {
  const auto& pts = curve.points;
  const std::size_t n = pts.size();
  if (n < 4) return false;
  int switches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i].found != pts[(i + 1) % n].found) ++switches;
  }
  // One arc of hits: the fan changes between hit and miss exactly twice.
  return switches == 2;
}

double minkowski_radial_spread(const InflectionCurve& curve, const PlaneContext& ctx) {
  std::vector<Vec2> pts;
  for (const auto& p : curve.points) {
    if (p.found) pts.push_back(p.point);
  }
  if (pts.size() < 3) throw Error(ErrorCode::BadParams, "locus has too few points");
  auto variance = [&](Vec2 c) {
    double s = 0.0, s2 = 0.0;
    for (Vec2 p : pts) {
      const double r = ctx.norm(p - c);
      s += r;
      s2 += r * r;
    }
    const double mean = s / pts.size();
    return s2 / pts.size() - mean * mean;
  };
  Vec2 c{};
  double extent = 0.0;
  for (Vec2 p : pts) c = c + p;
  c = c / static_cast<double>(pts.size());
  for (Vec2 p : pts) extent = std::max(extent, norm_e(p - c));
  for (int round = 0; round < 40; ++round) {
    const double span = extent * std::pow(0.7, round);
    c.x = numerics::minimize([&](double x) { return variance({x, c.y}); }, c.x - span, c.x + span).x;
    c.y = numerics::minimize([&](double y) { return variance({c.x, y}); }, c.y - span, c.y + span).x;
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  for (Vec2 p : pts) {
    const double r = ctx.norm(p - c);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    sum += r;
  }
  return (hi - lo) / (sum / pts.size());
}

EsFirst es_first(const RollingMotion& m, const PlaneContext& ctx, Vec2 P, double h) {
  const PoleFrame f = pole_frame(m);
  EsFirst r;
  r.P = P;
  const Vec2 kp = P - f.K;
  r.KP = ctx.norm(kp);
  if (!(r.KP > 1e-9 * (1.0 + norm_e(P)))) {
    throw Error(ErrorCode::PoleCoincidence, "tracked point is the instantaneous pole");
  }
  const Vec2 u = kp / r.KP;
  r.KI = inflection_distance(f, ctx, u);
  r.I_P = f.K + r.KI * u;
  const double ip = r.KP - r.KI;
  if (!(std::abs(ip) > 1e-9 * r.KP)) {
    throw Error(ErrorCode::OnInflectionCurve, "tracked point lies on the inflection curve");
  }

  r.chi = curvature_limit([&](double s) { return m.transform_unchecked(s, P); }, ctx, 0.0, h);
  if (!(std::abs(r.chi.value) > 0.0)) {
    throw Error(ErrorCode::OnInflectionCurve, "roulette has zero curvature at P");
  }
  r.radius = 1.0 / std::abs(r.chi.value);
  // The center lies on the side the roulette turns to.
  const Vec2 v = m.transform_unchecked(h, P) - m.transform_unchecked(-h, P);
  const double side = sign_of(cross(v, u)) * sign_of(r.chi.value);
  r.KO = r.KP + side * r.radius;
  r.O_P = f.K + r.KO * u;

  r.radius_predicted = r.KP * r.KP / std::abs(ip);
  r.residual_first = std::abs(r.radius - r.radius_predicted) / r.radius_predicted;
  const double lhs = 1.0 / r.KP - 1.0 / r.KO, rhs = 1.0 / r.KI;
  r.residual_directed = std::abs(lhs - rhs) / std::abs(rhs);
  return r;
}

EsSecond es_second(const RollingMotion& m, const PlaneContext& ctx, double h) {
  const PoleFrame f = pole_frame(m);
  EsSecond r;
  // s < 0 uses the extension of the polodes so the stencil stays symmetric.
  r.chi_fixed = curvature_limit([&](double s) { return m.fixed().eval_unchecked(s); }, ctx, 0.0, h);
  r.chi_moving =
      curvature_limit([&](double s) { return m.moving().eval_unchecked(s); }, ctx, 0.0, h);
  r.lhs = r.chi_fixed.value - r.chi_moving.value;
  if (!(std::abs(f.omega_dot) > 0.0)) {
    throw Error(ErrorCode::TranslativeMotion, "the polodes have equal curvature at K");
  }
  // The pole moves with unit Minkowski speed in s; per Euclidean turning
  // angle its speed is 1 / |omega_dot|.
  r.alpha_K = 1.0 / std::abs(f.omega_dot);
  const double st = ctx.sigma_line(f.v_K);
  r.rhs = ctx.sigma_plane() / (st * st) * f.omega_dot;
  r.residual = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  r.observed_order = std::min(r.chi_fixed.observed_order, r.chi_moving.observed_order);
  if (std::isnan(r.chi_fixed.observed_order)) r.observed_order = r.chi_moving.observed_order;
  if (std::isnan(r.chi_moving.observed_order)) r.observed_order = r.chi_fixed.observed_order;
  return r;
}

PlaneContext normalized_context(const PlaneContext& ctx, double* factor) {
  const double lambda = std::sqrt(ctx.sigma_plane());
  if (factor) *factor = lambda;
  return ctx.scaled(lambda);
}

EsCombined es_combined(const RollingMotion& m, const PlaneContext& ctx, Vec2 P, double h) {
  if (std::abs(ctx.sigma_plane() - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadParams, "combined form needs sigma(T) = 1");
  }
  const PoleFrame f = pole_frame(m);
  const EsFirst first = es_first(m, ctx, P, h);
  const EsSecond second = es_second(m, ctx, h);
  const Vec2 u = P - f.K;
  const double st = ctx.sigma_line(f.v_K);
  const double sp = ctx.sigma_line(u);
  EsCombined r;
  r.P = P;
  r.lhs = std::abs((1.0 / first.KP - 1.0 / first.KO) * busemann_sine(ctx, u, f.v_K) * sp * sp /
                   (st * st * ctx.sigma_line(f.w)));
  // phi' per Euclidean turning angle of the pole.
  const double phi_omega = f.phi_dot / f.omega_dot;
  r.rhs = std::abs(phi_omega * second.lhs);
  r.rhs_formula = std::abs(phi_omega) / (st * st * second.alpha_K);
  r.residual = std::abs(r.lhs - r.rhs) / r.rhs;
  return r;
}

}  // namespace mkin
