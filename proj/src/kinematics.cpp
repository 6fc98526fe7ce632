#include "mkin/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mkin/error.hpp"

namespace mkin {

RollingMotion::RollingMotion(const Curve& fixed, const Curve& moving, const PlaneContext& ctx,
                             int steps, double s_max)
    : fixed_(fixed), moving_(moving), ctx_(ctx) {
  if (!ctx.smooth()) {
    throw Error(ErrorCode::NonSmoothBall, "rolling needs a smooth unit circle");
  }
  if (steps < 2) throw Error(ErrorCode::BadParams, "rolling needs at least 2 steps");
  fixed_ = reparam_by_arclength(fixed, ctx);
  moving_ = reparam_by_arclength(moving, ctx);

  const Vec2 a = fixed_.eval(0.0), b = moving_.eval(0.0);
  if (norm_e(a - b) > 1e-6 * std::max(1.0, norm_e(a))) {
    std::ostringstream os;
    os << "polodes start at " << a << " and " << b;
    throw Error(ErrorCode::NoCommonContact, os.str());
  }
  if (ctx.norm(fixed_.derivative(0.0) - moving_.derivative(0.0)) > 1e-6) {
    throw Error(ErrorCode::TangentMismatch, "polodes are not tangent at the start");
  }

  double cap = std::numeric_limits<double>::infinity();
  if (!fixed_.closed()) cap = fixed_.t1();
  if (!moving_.closed()) cap = std::min(cap, moving_.t1());
  if (std::isnan(s_max)) {
    beta_ = std::min(fixed_.t1(), cap);
  } else {
    if (!(s_max > 0.0)) throw Error(ErrorCode::BadParams, "s_max must be positive");
    if (s_max > cap * (1.0 + 1e-12)) {
      throw Error(ErrorCode::DomainViolation, "s_max exceeds the length of an open polode");
    }
    beta_ = std::min(s_max, cap);
  }

  grid_.resize(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) grid_[k] = beta_ * k / steps;

  // Continuous branch of the raw angle.
  const int n = std::max(kBranchGrid, steps);
  const double period = ctx_.circumference();
  auto raw = [&](double s) {
    return ctx_.boundary_position(fixed_.derivative_unchecked(s)) -
           ctx_.boundary_position(moving_.derivative_unchecked(s));
  };
  branch_s_.resize(static_cast<std::size_t>(n) + 1);
  branch_phi_.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = beta_ * i / n;
    const double target = i == 0 ? 0.0 : branch_phi_[i - 1];
    const double r = raw(s);
    branch_s_[i] = s;
    branch_phi_[i] = r + period * std::round((target - r) / period);
  }
}

double RollingMotion::phi(double s) const {
  // Linear prediction from the branch table, then the nearest raw value.
  const auto it = std::upper_bound(branch_s_.begin(), branch_s_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - branch_s_.begin());
  i = std::clamp<std::size_t>(i, 1, branch_s_.size() - 1) - 1;
  const double u = (s - branch_s_[i]) / (branch_s_[i + 1] - branch_s_[i]);
  const double predicted = branch_phi_[i] + u * (branch_phi_[i + 1] - branch_phi_[i]);
  const double period = ctx_.circumference();
  const double r = ctx_.boundary_position(fixed_.derivative_unchecked(s)) -
                   ctx_.boundary_position(moving_.derivative_unchecked(s));
  return r + period * std::round((predicted - r) / period);
}

double RollingMotion::phi_dot(double s) const {
  // Rate of the arc-length position of a unit vector x moving with x':
  // cross(x, x') / cross(x, Q x).
  auto rate = [&](const Curve& c) {
    const Vec2 x = c.derivative_unchecked(s), dx = c.second_derivative_unchecked(s);
    return cross(x, dx) / cross(x, ctx_.q_normal(x));
  };
  return rate(fixed_) - rate(moving_);
}

Vec2 RollingMotion::pole(double s) const { return fixed_.eval_unchecked(s); }

Vec2 RollingMotion::transform_unchecked(double s, Vec2 p) const {
  return fixed_.eval_unchecked(s) + ctx_.rotate_raw(p - moving_.eval_unchecked(s), phi(s));
}

Vec2 RollingMotion::transform(double s, Vec2 p) const {
  const double slack = 1e-12 * std::max(1.0, beta_);
  if (!(s >= -slack && s <= beta_ + slack)) {
    std::ostringstream os;
    os << "s = " << s << " outside [0, " << beta_ << "]";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  return transform_unchecked(s, p);
}

Vec2 motion_transform(const RollingMotion& m, double s, Vec2 p) { return m.transform(s, p); }

RouletteTrace roulette_trace(const RollingMotion& m, Vec2 p, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::BadParams, "difference step must be positive");
  RouletteTrace trace{p, h, {}};
  trace.samples.reserve(m.s_grid().size());
  for (double s : m.s_grid()) {
    const Vec2 x = m.transform(s, p);
    const Vec2 xp = m.transform_unchecked(s + h, p), xm = m.transform_unchecked(s - h, p);
    trace.samples.push_back(
        {s, x, (xp - xm) / (2.0 * h), (xp - 2.0 * x + xm) / (h * h), m.pole(s)});
  }
  return trace;
}

double instantaneous_pole_check(const RouletteTrace& trace, const RollingMotion& m,
                                const PlaneContext& ctx, double s) {
  const double h = trace.h;
  const Vec2 x = m.transform(s, trace.tracked);
  const Vec2 d = x - m.pole(s);
  if (!(norm_e(d) > 1e-9 * (1.0 + norm_e(x)))) {
    throw Error(ErrorCode::PoleCoincidence, "tracked point is at the instantaneous pole");
  }
  const Vec2 v = (m.transform_unchecked(s + h, trace.tracked) -
                  m.transform_unchecked(s - h, trace.tracked)) /
                 (2.0 * h);
  if (v == Vec2{}) throw Error(ErrorCode::PoleCoincidence, "tracked point is at rest");
  return std::abs(ctx.semi_inner(v, d)) / (ctx.norm(v) * ctx.norm(d));
}

RollingMotion hypocycloid_motion(const PlaneContext& ctx, int n, int steps) {
  if (n < 2) throw Error(ErrorCode::BadParams, "hypocycloids need n >= 2");
  const Curve fixed = curves::unit_circle(ctx);
  const Curve moving = curves::homothet(fixed, fixed.eval(0.0), 1.0 / n);
  return RollingMotion(fixed, moving, ctx, steps, ctx.circumference());
}

std::vector<double> cusp_parameters(const RouletteTrace& trace, double threshold) {
  const auto& smp = trace.samples;
  std::size_t n = smp.size();
  if (n < 3) return {};
  const bool periodic =
      norm_e(smp.front().position - smp.back().position) <= 1e-6 * (1.0 + norm_e(smp.front().position));
  if (periodic) --n;
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = norm_e(smp[i].velocity);
    if (!(v < threshold)) continue;
    const bool has_prev = periodic || i > 0, has_next = periodic || i + 1 < n;
    const double prev = has_prev ? norm_e(smp[(i + n - 1) % n].velocity) : v;
    const double next = has_next ? norm_e(smp[(i + 1) % n].velocity) : v;
    if (!(v <= prev && v < next)) continue;
    // A cusp reverses the direction of travel; a momentary stop does not.
    const Vec2 before = smp[(i + n - 2) % n].velocity, after = smp[(i + 2) % n].velocity;
    if ((!periodic && (i < 2 || i + 2 >= n)) || dot(before, after) < 0.0) out.push_back(smp[i].s);
  }
  return out;
}

Vec2 EuclideanMotion::apply(double t, Vec2 u) const {
  return position.eval(t) + rotate_e(u, phi(t));
}

Polodes euclidean_polodes(const EuclideanMotion& motion) {
  const Curve& p = motion.position;
  if (!motion.phi) throw Error(ErrorCode::BadParams, "motion needs a rotation angle");
  const double h1 = 1e-5 * p.span(), h2 = 1e-4 * p.span();
  auto phi = motion.phi;
  std::function<double(double)> d1 = motion.phi_d1;
  if (!d1) d1 = [phi, h1](double t) { return (phi(t + h1) - phi(t - h1)) / (2.0 * h1); };
  std::function<double(double)> d2 = motion.phi_d2;
  if (!d2) d2 = [d1, h2](double t) { return (d1(t + h2) - d1(t - h2)) / (2.0 * h2); };

  for (int i = 0; i <= 1024; ++i) {
    const double t = p.t0() + p.span() * i / 1024;
    if (!(std::abs(d1(t)) > 1e-12)) {
      throw Error(ErrorCode::TranslativeMotion, "rotation rate vanishes");
    }
  }
  // w = d/dt (p' / phi') / phi', i.e. the second derivative of p in phi.
  auto w = [p, d1, d2](double t) {
    const double r = d1(t);
    return p.second_derivative_unchecked(t) / (r * r) -
           p.derivative_unchecked(t) * (d2(t) / (r * r * r));
  };
  auto dp = [p, d1](double t) { return p.derivative_unchecked(t) / d1(t); };
  Curve fixed(
      [p, dp](double t) { return p.eval_unchecked(t) + perp(dp(t)); }, p.t0(), p.t1(), p.closed(),
      [dp, w, d1](double t) { return (dp(t) + perp(w(t))) * d1(t); });
  Curve moving(
      [dp, phi](double t) { return perp(rotate_e(dp(t), -phi(t))); }, p.t0(), p.t1(), p.closed(),
      [dp, w, d1, phi](double t) {
        return perp(rotate_e(w(t) - perp(dp(t)), -phi(t))) * d1(t);
      });
  return {fixed, moving};
}

}  // namespace mkin
