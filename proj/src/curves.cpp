#include "mkin/curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>

#include "mkin/error.hpp"
#include "text.hpp"

namespace mkin {

Curve::Curve(Fn eval, double t0, double t1, bool closed, Fn d1, Fn d2)
    : eval_(std::move(eval)), d1_(std::move(d1)), d2_(std::move(d2)), t0_(t0), t1_(t1),
      closed_(closed) {
  if (!eval_) throw Error(ErrorCode::BadParams, "curve needs an evaluator");
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw Error(ErrorCode::BadParams, "curve domain must be a nonempty finite interval");
  }
}

double Curve::wrap(double t) const {
  if (!closed_) return t;
  if (t >= t0_ && t <= t1_) return t;
  return t0_ + wrap_positive(t - t0_, span());
}

Vec2 Curve::eval_unchecked(double t) const { return eval_(wrap(t)); }

Vec2 Curve::derivative_unchecked(double t) const {
  if (d1_) return d1_(wrap(t));
  const double h = fd_step();
  return (eval_unchecked(t + h) - eval_unchecked(t - h)) / (2.0 * h);
}

Vec2 Curve::second_derivative_unchecked(double t) const {
  if (d2_) return d2_(wrap(t));
  if (d1_) {
    const double h = fd_step();
    return (derivative_unchecked(t + h) - derivative_unchecked(t - h)) / (2.0 * h);
  }
  const double h = 1e-4 * span();
  return (eval_unchecked(t + h) - 2.0 * eval_unchecked(t) + eval_unchecked(t - h)) / (h * h);
}

namespace {

void check_domain(const Curve& c, double t) {
  if (c.closed()) return;
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(c.t0()), std::abs(c.t1())));
  if (!(t >= c.t0() - slack && t <= c.t1() + slack)) {
    std::ostringstream os;
    os << "parameter " << t << " outside [" << c.t0() << ", " << c.t1() << "]";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
}

}  // namespace

Vec2 Curve::eval(double t) const {
  check_domain(*this, t);
  return eval_unchecked(t);
}

Vec2 Curve::derivative(double t) const {
  check_domain(*this, t);
  return derivative_unchecked(t);
}

Vec2 Curve::second_derivative(double t) const {
  check_domain(*this, t);
  return second_derivative_unchecked(t);
}

Curve Curve::with_arclength_ball(std::uint64_t id) const {
  Curve c = *this;
  c.arclength_ball_ = id;
  return c;
}

Curve Curve::reversed() const {
  const Curve self = *this;
  const double sum = t0_ + t1_;
  Curve r(
      [self, sum](double t) { return self.eval_unchecked(sum - t); }, t0_, t1_, closed_,
      [self, sum](double t) { return -self.derivative_unchecked(sum - t); },
      [self, sum](double t) { return self.second_derivative_unchecked(sum - t); });
  r.arclength_ball_ = arclength_ball_;
  return r;
}

double arc_length(const Curve& c, const PlaneContext& ctx, double t1, double t2) {
  check_domain(c, t1);
  check_domain(c, t2);
  if (t1 > t2) throw Error(ErrorCode::DomainViolation, "arc length needs t1 <= t2");
  return numerics::integrate(
      [&](double t) { return ctx.norm(c.derivative_unchecked(t)); }, t1, t2, 1e-12);
}

double polygonal_length(const Curve& c, const PlaneContext& ctx, double t1, double t2, int n) {
  check_domain(c, t1);
  check_domain(c, t2);
  if (t1 > t2 || n < 1) throw Error(ErrorCode::DomainViolation, "bad polygonal subdivision");
  double sum = 0.0;
  Vec2 prev = c.eval_unchecked(t1);
  for (int i = 1; i <= n; ++i) {
    const Vec2 cur = c.eval_unchecked(t1 + (t2 - t1) * i / n);
    sum += ctx.norm(cur - prev);
    prev = cur;
  }
  return sum;
}

numerics::CumulativeTable arclen_table(const Curve& c, const PlaneContext& ctx, int panels) {
  return numerics::CumulativeTable(
      [c, ctx](double t) { return ctx.norm(c.derivative_unchecked(t)); }, c.t0(), c.t1(),
      panels);
}

Curve reparam_by_arclength(const Curve& c, const PlaneContext& ctx, int panels) {
  if (c.is_arclength(ctx)) return c;
  auto table = std::make_shared<const numerics::CumulativeTable>(arclen_table(c, ctx, panels));
  double mean = table->total() / c.span();
  for (int k = 0; k <= panels; ++k) {
    const double speed = table->density(table->node_param(k));
    if (!(speed > 1e-9 * mean)) {
      std::ostringstream os;
      os << "derivative vanishes near t = " << table->node_param(k);
      throw Error(ErrorCode::IrregularCurve, os.str());
    }
  }
  const double length = table->total();
  const bool closed = c.closed();
  auto tau = [table, length, closed](double s) {
    if (closed) s = wrap_positive(s, length);
    return table->inverse(s);
  };
  Curve::Fn d2 = nullptr;
  if (ctx.smooth()) {
    d2 = [c, ctx, tau](double s) {
      const double t = tau(s);
      const Vec2 v = c.derivative_unchecked(t), a = c.second_derivative_unchecked(t);
      const double n = ctx.norm(v);
      const double dn = dot(ctx.norm_gradient(v), a);
      return (a - v * (dn / n)) / (n * n);
    };
  }
  Curve out(
      [c, tau](double s) { return c.eval_unchecked(tau(s)); }, 0.0, length, closed,
      [c, ctx, tau](double s) {
        const Vec2 v = c.derivative_unchecked(tau(s));
        return v / ctx.norm(v);
      },
      d2);
  return out.with_arclength_ball(ctx.id());
}

Vec2 tangent_direction(const Curve& c, const PlaneContext& ctx, double s) {
  const Vec2 v = c.derivative(s);
  const double n = ctx.norm(v);
  if (!(n > 1e-12)) throw Error(ErrorCode::IrregularCurve, "zero tangent");
  if (c.is_arclength(ctx) && std::abs(n - 1.0) > 1e-6) {
    throw Error(ErrorCode::IrregularCurve, "arc-length curve without unit speed");
  }
  return v / n;
}

StarlikeCurve::StarlikeCurve(Curve base, Vec2 center) : base_(std::move(base)), center_(center) {
  if (!base_.closed()) throw Error(ErrorCode::NotStarlike, "starlike curves must be closed");
  const int samples = 4 * kFanRays;
  auto sweep = [&] {
    t_.assign(samples + 1, 0.0);
    angle_.assign(samples + 1, 0.0);
    for (int i = 0; i <= samples; ++i) {
      t_[i] = base_.t0() + base_.span() * i / samples;
      const Vec2 v = base_.eval_unchecked(t_[i]) - center_;
      if (!(norm_e(v) > 1e-12)) {
        throw Error(ErrorCode::NotStarlike, "center lies on the curve");
      }
      const double a = angle_of(v);
      angle_[i] = i == 0 ? a : angle_[i - 1] + std::remainder(a - angle_[i - 1], kTwoPi);
    }
    return angle_.back() - angle_.front();
  };
  double turn = sweep();
  if (std::abs(turn + kTwoPi) < 1e-6) {
    base_ = base_.reversed();
    turn = sweep();
  }
  if (std::abs(turn - kTwoPi) > 1e-6) {
    throw Error(ErrorCode::NotStarlike, "curve does not wind once around the center");
  }
  // Every ray of the fan must be crossed exactly once.
  const double step = kTwoPi / kFanRays;
  std::vector<int> hits(kFanRays, 0);
  for (int i = 0; i < samples; ++i) {
    const double lo = std::min(angle_[i], angle_[i + 1]);
    const double hi = std::max(angle_[i], angle_[i + 1]);
    const long kmin = static_cast<long>(std::floor(lo / step)) + 1;
    const long kmax = static_cast<long>(std::floor(hi / step));
    for (long k = kmin; k <= kmax; ++k) {
      ++hits[static_cast<std::size_t>(((k % kFanRays) + kFanRays) % kFanRays)];
    }
  }
  for (int k = 0; k < kFanRays; ++k) {
    if (hits[k] != 1) {
      std::ostringstream os;
      os << "ray at angle " << k * step << " meets the curve " << hits[k] << " times";
      throw Error(ErrorCode::NotStarlike, os.str());
    }
  }
}

double StarlikeCurve::radial_parameter(Vec2 direction) const {
  if (direction == Vec2{}) throw Error(ErrorCode::ZeroVector, "ray direction is zero");
  const Vec2 d = unit_e(direction);
  double target = angle_.front() + wrap_positive(angle_of(d) - angle_.front());
  auto it = std::upper_bound(angle_.begin(), angle_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - angle_.begin());
  i = std::clamp<std::size_t>(i, 1, angle_.size() - 1) - 1;
  auto f = [&](double t) {
    const Vec2 v = base_.eval_unchecked(t) - center_;
    return std::atan2(cross(d, v), dot(d, v));
  };
  const double a = t_[i], b = t_[i + 1];
  const double fa = f(a), fb = f(b);
  if (std::abs(fa) <= 1e-15) return a;
  if (std::abs(fb) <= 1e-15) return b;
  try {
    return numerics::find_root(f, a, b);
  } catch (const Error&) {
    throw Error(ErrorCode::NoIntersection, "ray misses the curve");
  }
}

Vec2 StarlikeCurve::radial_point(Vec2 direction) const {
  const double t = radial_parameter(direction);
  const double rho = norm_e(base_.eval_unchecked(t) - center_);
  return center_ + rho * unit_e(direction);
}

double StarlikeCurve::polar_angle(double t) const {
  const double span = base_.span();
  const double turns = std::floor((t - base_.t0()) / span);
  double local = t - turns * span;
  auto it = std::upper_bound(t_.begin(), t_.end(), local);
  std::size_t i = static_cast<std::size_t>(it - t_.begin());
  i = std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;
  const double a = angle_of(base_.eval_unchecked(local) - center_);
  return angle_[i] + std::remainder(a - angle_[i], kTwoPi) + turns * kTwoPi;
}

namespace curves {

Curve heliocentric_ellipse(double p, double eps) {
  if (!(p > 0.0)) throw Error(ErrorCode::BadParams, "semi-latus rectum must be positive");
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::BadParams, "eccentricity must be in [0, 1)");
  auto r = [p, eps](double t) { return p / (1.0 + eps * std::cos(t)); };
  auto r1 = [p, eps](double t) {
    const double d = 1.0 + eps * std::cos(t);
    return p * eps * std::sin(t) / (d * d);
  };
  auto r2 = [p, eps](double t) {
    const double d = 1.0 + eps * std::cos(t), s = std::sin(t);
    return p * eps * std::cos(t) / (d * d) + 2.0 * p * eps * eps * s * s / (d * d * d);
  };
  return Curve(
      [r](double t) { return r(t) * from_angle(t); }, 0.0, kTwoPi, true,
      [r, r1](double t) {
        const Vec2 e = from_angle(t);
        return r1(t) * e + r(t) * perp(e);
      },
      [r, r1, r2](double t) {
        const Vec2 e = from_angle(t);
        return (r2(t) - r(t)) * e + 2.0 * r1(t) * perp(e);
      });
}

Curve nephroid() {
  return Curve(
      [](double t) {
        return Vec2{0.5 * (-3.0 * std::cos(t) + std::cos(3.0 * t)),
                    0.5 * (-3.0 * std::sin(t) + std::sin(3.0 * t))};
      },
      0.0, kTwoPi, true,
      [](double t) {
        return Vec2{1.5 * (std::sin(t) - std::sin(3.0 * t)),
                    1.5 * (-std::cos(t) + std::cos(3.0 * t))};
      },
      [](double t) {
        return Vec2{1.5 * (std::cos(t) - 3.0 * std::cos(3.0 * t)),
                    1.5 * (std::sin(t) - 3.0 * std::sin(3.0 * t))};
      });
}

Curve circle(Vec2 center, double radius, double start) {
  if (!(radius > 0.0)) throw Error(ErrorCode::BadParams, "radius must be positive");
  return Curve([=](double t) { return center + radius * from_angle(t + start); }, 0.0, kTwoPi,
               true, [=](double t) { return radius * perp(from_angle(t + start)); },
               [=](double t) { return -radius * from_angle(t + start); });
}

Curve unit_circle(const PlaneContext& ctx, double start) {
  Curve::Fn d2 = nullptr;
  if (ctx.smooth()) d2 = [ctx, start](double t) { return ctx.boundary_acceleration(t + start); };
  return Curve([ctx, start](double t) { return ctx.boundary_point(t + start); }, 0.0,
               ctx.circumference(), true,
               [ctx, start](double t) { return ctx.boundary_tangent(t + start); }, d2)
      .with_arclength_ball(ctx.id());
}

Curve homothet(const Curve& c, Vec2 center, double ratio) {
  if (!(ratio != 0.0) || !std::isfinite(ratio)) {
    throw Error(ErrorCode::BadParams, "homothety ratio must be nonzero");
  }
  Curve out(
      [c, center, ratio](double t) { return center + ratio * (c.eval_unchecked(t) - center); },
      c.t0(), c.t1(), c.closed(),
      [c, ratio](double t) { return ratio * c.derivative_unchecked(t); },
      [c, ratio](double t) { return ratio * c.second_derivative_unchecked(t); });
  return ratio == 1.0 ? out.with_arclength_ball(c.arclength_ball()) : out;
}

Curve segment(Vec2 a, Vec2 b) {
  if (a == b) throw Error(ErrorCode::BadParams, "segment endpoints coincide");
  return Curve([a, b](double t) { return a + t * (b - a); }, 0.0, 1.0, false,
               [a, b](double) { return b - a; }, [](double) { return Vec2{}; });
}

Curve from_samples(const std::vector<double>& t, const std::vector<Vec2>& points) {
  if (t.size() != points.size() || t.size() < 4) {
    throw Error(ErrorCode::BadParams, "sampled curves need at least 4 (t, x, y) rows");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw Error(ErrorCode::BadParams, "sample parameters must increase");
  }
  const double scale = norm_e(points.front()) + norm_e(points.back()) + 1.0;
  const bool closed = norm_e(points.front() - points.back()) <= 1e-12 * scale;
  std::vector<double> ts, xs, ys;
  const std::size_t n = t.size();
  const double period = t.back() - t.front();
  const std::size_t pad = closed ? std::min<std::size_t>(3, n - 2) : 0;
  for (std::size_t k = pad; k > 0; --k) {
    ts.push_back(t[n - 1 - k] - period);
    xs.push_back(points[n - 1 - k].x);
    ys.push_back(points[n - 1 - k].y);
  }
  for (std::size_t i = 0; i < n; ++i) {
    ts.push_back(t[i]);
    xs.push_back(points[i].x);
    ys.push_back(points[i].y);
  }
  for (std::size_t k = 1; k <= pad; ++k) {
    ts.push_back(t[k] + period);
    xs.push_back(points[k].x);
    ys.push_back(points[k].y);
  }
  using Makima = boost::math::interpolators::makima<std::vector<double>>;
  auto tx = ts;
  auto fx = std::make_shared<Makima>(std::move(tx), std::move(xs));
  auto fy = std::make_shared<Makima>(std::move(ts), std::move(ys));
  return Curve([fx, fy](double s) { return Vec2{(*fx)(s), (*fy)(s)}; }, t.front(), t.back(),
               closed, [fx, fy](double s) { return Vec2{fx->prime(s), fy->prime(s)}; });
}

namespace {

Curve load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> t;
  std::vector<Vec2> pts;
  std::string line;
  while (std::getline(in, line)) {
    const auto row = text::parse_numbers(line, path);
    if (row.empty()) continue;
    if (row.size() != 3) throw Error(ErrorCode::ParseError, path + ": rows need 't x y'");
    t.push_back(row[0]);
    pts.push_back({row[1], row[2]});
  }
  return from_samples(t, pts);
}

}  // namespace

Curve from_spec(std::string_view spec, const PlaneContext& ctx, const Resolver& resolve) {
  const std::string s = text::trim(spec);
  if (resolve) {
    if (auto named = resolve(s)) return *named;
  }
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (colon == std::string::npos) {
    if (s == "nephroid") return nephroid();
    if (s == "unitcircle") return unit_circle(ctx);
    throw Error(ErrorCode::UnresolvedName, "unknown curve '" + s + "'");
  }
  if (head == "ellipse") {
    double p = 1.0, eps = 0.0;
    for (const auto& item : text::split(arg, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::BadParams, "ellipse needs key=value");
      const std::string key = text::trim(item.substr(0, eq));
      const double v = text::parse_double(item.substr(eq + 1));
      if (key == "p") p = v;
      else if (key == "eps") eps = v;
      else throw Error(ErrorCode::BadParams, "unknown ellipse parameter '" + key + "'");
    }
    return heliocentric_ellipse(p, eps);
  }
  if (head == "unitcircle") return unit_circle(ctx, text::parse_double(arg));
  if (head == "circle") {
    const auto n = text::split(arg, ',').size();
    const auto v = text::parse_list(arg, n == 4 ? 4 : 3);
    return circle({v[0], v[1]}, v[2], n == 4 ? v[3] : 0.0);
  }
  if (head == "segment") {
    const auto v = text::parse_list(arg, 4);
    return segment({v[0], v[1]}, {v[2], v[3]});
  }
  if (head == "reverse") return from_spec(arg, ctx, resolve).reversed();
  if (head == "homothet") {
    const auto last = arg.rfind(';');
    const auto mid = last == std::string::npos ? last : arg.rfind(';', last - 1);
    if (mid == std::string::npos || last == std::string::npos) {
      throw Error(ErrorCode::BadParams, "homothet needs '<curve>;cx,cy;ratio'");
    }
    const auto c = text::parse_list(arg.substr(mid + 1, last - mid - 1), 2);
    const double ratio = text::parse_double(arg.substr(last + 1));
    return homothet(from_spec(arg.substr(0, mid), ctx, resolve), {c[0], c[1]}, ratio);
  }
  if (head == "samples") return load_samples(arg);
  throw Error(ErrorCode::BadParams, "unknown curve kind '" + head + "'");
}

}  // namespace curves

}  // namespace mkin
