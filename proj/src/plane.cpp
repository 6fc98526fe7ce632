#include "mkin/plane.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "mkin/error.hpp"
#include "mkin/numerics.hpp"

namespace mkin {

std::string_view to_string(BallKind kind) {
  switch (kind) {
    case BallKind::euclidean: return "euclidean";
    case BallKind::lp: return "lp";
    case BallKind::polygon: return "polygon";
    case BallKind::radial: return "radial";
  }
  return "?";
}

namespace {

std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

// Base (unscaled) unit ball.
struct Shape {
  virtual ~Shape() = default;
  virtual double norm(Vec2 v) const = 0;
  virtual Vec2 gradient(Vec2 v) const = 0;
  virtual double radius(double psi) const { return 1.0 / norm(from_angle(psi)); }
  virtual double radius_d1(double psi) const = 0;
  virtual double radius_d2(double psi) const {
    const double h = 1e-5;
    return (radius_d1(psi + h) - radius_d1(psi - h)) / (2.0 * h);
  }
};

struct EuclideanShape final : Shape {
  double norm(Vec2 v) const override { return norm_e(v); }
  Vec2 gradient(Vec2 v) const override { return v / norm_e(v); }
  double radius(double) const override { return 1.0; }
  double radius_d1(double) const override { return 0.0; }
  double radius_d2(double) const override { return 0.0; }
};

struct LpShape final : Shape {
  explicit LpShape(double p_) : p(p_) {}
  double p;

  double norm(Vec2 v) const override {
    const double m = std::max(std::abs(v.x), std::abs(v.y));
    if (m == 0.0) return 0.0;
    const double a = std::abs(v.x) / m, b = std::abs(v.y) / m;
    return m * std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
  }
  Vec2 gradient(Vec2 v) const override {
    const double m = std::max(std::abs(v.x), std::abs(v.y));
    const Vec2 s{v.x / m, v.y / m};
    const double n = norm(s);
    auto comp = [&](double c) {
      return std::copysign(std::pow(std::abs(c) / n, p - 1.0), c);
    };
    return {comp(s.x), comp(s.y)};
  }
  double radius_d1(double psi) const override {
    const Vec2 e = from_angle(psi);
    const double r = 1.0 / norm(e);
    return -r * r * dot(gradient(e), perp(e));
  }
};

struct RadialShape final : Shape {
  RadialShape(std::vector<double> padded, double t0, double h)
      : spline(padded.begin(), padded.end(), t0, h) {}
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;

  double radius(double psi) const override { return spline(wrap_positive(psi)); }
  double radius_d1(double psi) const override { return spline.prime(wrap_positive(psi)); }
  double radius_d2(double psi) const override {
    return spline.double_prime(wrap_positive(psi));
  }
  double norm(Vec2 v) const override {
    const double n = norm_e(v);
    if (n == 0.0) return 0.0;
    return n / radius(angle_of(v));
  }
  Vec2 gradient(Vec2 v) const override {
    const double psi = angle_of(v);
    const Vec2 e = from_angle(psi);
    const double r = radius(psi);
    return (e - (radius_d1(psi) / r) * perp(e)) / r;
  }
};

struct PolygonShape final : Shape {
  explicit PolygonShape(std::vector<Vec2> v) : verts(std::move(v)) {
    const std::size_t m = verts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 d = verts[(i + 1) % m] - verts[i];
      const Vec2 n{d.y, -d.x};
      normals.push_back(n / dot(n, verts[i]));
    }
  }
  std::vector<Vec2> verts;    // counterclockwise, sorted by angle
  std::vector<Vec2> normals;  // facet i: dot(normals[i], x) = 1 on the edge

  double norm(Vec2 v) const override {
    double best = 0.0;
    for (const Vec2& n : normals) best = std::max(best, dot(n, v));
    return best;
  }
  double one_sided(Vec2 y, Vec2 x) const {
    const double ny = norm(y);
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& n : normals) {
      if (dot(n, y) >= ny * (1.0 - 1e-12)) best = std::max(best, dot(n, x));
    }
    return best;
  }
  Vec2 gradient(Vec2) const override {
    throw Error(ErrorCode::NonSmoothBoundary, "polygon ball has no gradient");
  }
  double radius_d1(double) const override {
    throw Error(ErrorCode::NonSmoothBoundary, "polygon ball radius is not differentiable");
  }
};

}  // namespace

struct PlaneContext::Impl {
  BallKind kind = BallKind::euclidean;
  double exponent = 2.0;
  double scale = 1.0;
  std::vector<Vec2> vertices;
  std::string spec;
  int samples = kDefaultSamples;
  bool smooth = true;
  bool strictly_convex = true;
  std::uint64_t id = 0;
  std::shared_ptr<const Shape> shape;
  double circumference = 0.0;
  double area = 0.0;

  // Smooth balls: arc length as a function of the direction angle.
  std::shared_ptr<const numerics::CumulativeTable> table;
  // Polygon balls: knots of the piecewise linear arc-length parameterization.
  std::vector<double> knot_t;
  std::vector<Vec2> knot_pt;
  std::vector<double> knot_angle;

  // All of the following work on the unscaled ball.
  Vec2 tangent_raw(double psi) const {  // r' e + r e_perp
    const Vec2 e = from_angle(psi);
    return shape->radius_d1(psi) * e + shape->radius(psi) * perp(e);
  }
  double speed(double psi) const { return shape->norm(tangent_raw(psi)); }

  double position(Vec2 dir) const {
    const double psi = wrap_positive(angle_of(dir));
    if (kind != BallKind::polygon) return wrap_positive((*table)(psi), circumference);
    auto it = std::upper_bound(knot_angle.begin(), knot_angle.end(), psi);
    std::size_t i = static_cast<std::size_t>(it - knot_angle.begin()) - 1;
    i = std::min(i, knot_t.size() - 2);
    const Vec2 pt = from_angle(psi) / shape->norm(from_angle(psi));
    return wrap_positive(knot_t[i] + shape->norm(pt - knot_pt[i]), circumference);
  }

  std::size_t segment(double t) const {
    auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knot_t.begin()) - 1;
    return std::min(i, knot_t.size() - 2);
  }

  double psi_at(double t) const { return table->inverse(wrap_positive(t, circumference)); }

  Vec2 point(double t) const {
    if (kind == BallKind::euclidean) return from_angle(t);
    if (kind == BallKind::polygon) {
      t = wrap_positive(t, circumference);
      const std::size_t i = segment(t);
      const double len = knot_t[i + 1] - knot_t[i];
      const double a = (t - knot_t[i]) / len;
      return (1.0 - a) * knot_pt[i] + a * knot_pt[i + 1];
    }
    const double psi = psi_at(t);
    return shape->radius(psi) * from_angle(psi);
  }

  Vec2 tangent(double t) const {
    if (kind == BallKind::euclidean) return perp(from_angle(t));
    if (kind == BallKind::polygon) {
      t = wrap_positive(t, circumference);
      const std::size_t i = segment(t);
      return (knot_pt[i + 1] - knot_pt[i]) / (knot_t[i + 1] - knot_t[i]);
    }
    const Vec2 T = tangent_raw(psi_at(t));
    return T / shape->norm(T);
  }

  Vec2 acceleration(double t) const {
    if (kind == BallKind::euclidean) return -from_angle(t);
    if (kind == BallKind::polygon) {
      throw Error(ErrorCode::NonSmoothBoundary, "polygon boundary has no curvature");
    }
    const double psi = psi_at(t);
    const Vec2 e = from_angle(psi);
    const double r = shape->radius(psi), r1 = shape->radius_d1(psi),
                 r2 = shape->radius_d2(psi);
    const Vec2 T = r1 * e + r * perp(e);
    const Vec2 T1 = r2 * e + 2.0 * r1 * perp(e) - r * e;
    const double n = shape->norm(T);
    const double dn = dot(shape->gradient(T), T1);
    const Vec2 dunit = T1 / n - T * (dn / (n * n));
    return dunit / n;
  }
};

namespace {

void finish_smooth(PlaneContext::Impl& impl) {
  const auto* self = &impl;
  impl.table = std::make_shared<numerics::CumulativeTable>(
      [self](double psi) { return self->speed(psi); }, 0.0, kTwoPi, impl.samples);
  impl.circumference = impl.table->total();
  const Shape* shape = impl.shape.get();
  numerics::CumulativeTable area(
      [shape](double psi) {
        const double r = shape->radius(psi);
        return 0.5 * r * r;
      },
      0.0, kTwoPi, impl.samples);
  impl.area = area.total();
}

void check_circumference(const PlaneContext::Impl& impl) {
  if (!(impl.circumference >= 6.0 - 1e-6 && impl.circumference <= 8.0 + 1e-6)) {
    std::ostringstream os;
    os << "unit circle length " << impl.circumference << " outside [6, 8]";
    throw Error(ErrorCode::InvalidBall, os.str());
  }
}

int round_samples(int samples) {
  if (samples < 64) throw Error(ErrorCode::BadParams, "at least 64 boundary samples required");
  return (samples + 7) / 8 * 8;
}

std::vector<std::vector<double>> read_number_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw Error(ErrorCode::ParseError, "bad number in " + path + ": " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PlaneContext PlaneContext::euclidean(int samples) {
  auto impl = std::make_shared<Impl>();
  impl->kind = BallKind::euclidean;
  impl->spec = "euclidean";
  impl->samples = round_samples(samples);
  impl->shape = std::make_shared<EuclideanShape>();
  impl->id = next_id();
  finish_smooth(*impl);
  impl->circumference = kTwoPi;
  impl->area = kPi;
  return PlaneContext(impl);
}

PlaneContext PlaneContext::lp(double p, int samples) {
  if (std::isinf(p)) {
    auto ctx = polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, samples);
    auto impl = std::make_shared<Impl>(*ctx.impl_);
    impl->spec = "lp:inf";
    return PlaneContext(impl);
  }
  if (p == 1.0) {
    auto ctx = polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, samples);
    auto impl = std::make_shared<Impl>(*ctx.impl_);
    impl->spec = "lp:1";
    return PlaneContext(impl);
  }
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidBall, "l_p exponent must be >= 1");
  if (p == 2.0) {
    auto ctx = euclidean(samples);
    auto impl = std::make_shared<Impl>(*ctx.impl_);
    impl->spec = "lp:2";
    return PlaneContext(impl);
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = BallKind::lp;
  impl->exponent = p;
  std::ostringstream os;
  os << "lp:" << p;
  impl->spec = os.str();
  impl->samples = round_samples(samples);
  impl->shape = std::make_shared<LpShape>(p);
  impl->id = next_id();
  finish_smooth(*impl);
  check_circumference(*impl);
  return PlaneContext(impl);
}

PlaneContext PlaneContext::polygon(std::vector<Vec2> vertices, int samples) {
  if (vertices.size() < 2) throw Error(ErrorCode::InvalidBall, "polygon needs vertices");
  double scale = 0.0;
  for (Vec2 v : vertices) scale = std::max(scale, norm_e(v));
  const double tol = 1e-9 * scale;
  auto has = [&](Vec2 w) {
    return std::any_of(vertices.begin(), vertices.end(),
                       [&](Vec2 v) { return norm_e(v - w) <= tol; });
  };
  const bool any_antipode =
      std::any_of(vertices.begin(), vertices.end(), [&](Vec2 v) { return has(-v); });
  if (!any_antipode) {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) vertices.push_back(-vertices[i]);
  }
  for (Vec2 v : vertices) {
    if (!(norm_e(v) > 0.0) || !is_finite(v)) {
      throw Error(ErrorCode::InvalidBall, "polygon vertex at the origin");
    }
    if (!has(-v)) throw Error(ErrorCode::InvalidBall, "polygon is not origin-symmetric");
  }
  std::sort(vertices.begin(), vertices.end(), [](Vec2 a, Vec2 b) {
    return wrap_positive(angle_of(a)) < wrap_positive(angle_of(b));
  });
  // Drop collinear vertices; reject reflex ones.
  bool changed = true;
  while (changed && vertices.size() >= 3) {
    changed = false;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 a = vertices[(i + m - 1) % m], b = vertices[i], c = vertices[(i + 1) % m];
      const double cr = cross(b - a, c - b);
      if (cr < -1e-12 * scale * scale) {
        throw Error(ErrorCode::InvalidBall, "polygon is not convex");
      }
      if (cr <= 1e-12 * scale * scale) {
        vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (vertices.size() < 4) throw Error(ErrorCode::InvalidBall, "degenerate polygon");

  auto impl = std::make_shared<Impl>();
  impl->kind = BallKind::polygon;
  impl->exponent = std::numeric_limits<double>::quiet_NaN();
  impl->vertices = vertices;
  impl->spec = "polygon";
  impl->samples = round_samples(samples);
  impl->smooth = false;
  impl->strictly_convex = false;
  auto shape = std::make_shared<PolygonShape>(vertices);
  impl->shape = shape;
  impl->id = next_id();

  const Vec2 start = Vec2{1.0, 0.0} / shape->norm({1.0, 0.0});
  impl->knot_pt.push_back(start);
  impl->knot_angle.push_back(0.0);
  for (Vec2 v : vertices) {
    const double a = wrap_positive(angle_of(v));
    if (a <= 1e-14 || norm_e(v - start) <= tol) continue;
    impl->knot_pt.push_back(v);
    impl->knot_angle.push_back(a);
  }
  impl->knot_pt.push_back(start);
  impl->knot_angle.push_back(kTwoPi);
  impl->knot_t.push_back(0.0);
  for (std::size_t i = 1; i < impl->knot_pt.size(); ++i) {
    impl->knot_t.push_back(impl->knot_t.back() +
                           shape->norm(impl->knot_pt[i] - impl->knot_pt[i - 1]));
  }
  impl->circumference = impl->knot_t.back();
  double area = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    area += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  impl->area = 0.5 * area;
  check_circumference(*impl);
  return PlaneContext(impl);
}

PlaneContext PlaneContext::radial(std::vector<double> radii, bool half_turn, int samples) {
  if (radii.size() < 8) throw Error(ErrorCode::InvalidBall, "radial table needs >= 8 samples");
  if (half_turn) {
    const std::size_t n = radii.size();
    for (std::size_t i = 0; i < n; ++i) radii.push_back(radii[i]);
  }
  const std::size_t m = radii.size();
  if (m % 2 != 0) throw Error(ErrorCode::InvalidBall, "full-turn radial table needs even size");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::InvalidBall, "radii must be positive");
    }
    if (std::abs(radii[i] - radii[(i + m / 2) % m]) > 1e-9 * radii[i]) {
      throw Error(ErrorCode::InvalidBall, "radial table is not symmetric");
    }
  }
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<double> padded;
  padded.reserve(3 * m);
  for (int rep = 0; rep < 3; ++rep) padded.insert(padded.end(), radii.begin(), radii.end());

  auto impl = std::make_shared<Impl>();
  impl->kind = BallKind::radial;
  impl->spec = "radial";
  impl->samples = round_samples(samples);
  auto shape = std::make_shared<RadialShape>(std::move(padded), -kTwoPi, h);
  impl->shape = shape;
  impl->id = next_id();

  // Convexity of the interpolated boundary on a dense sweep.
  const int n = 4 * impl->samples;
  double min_turn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double a0 = kTwoPi * i / n, a1 = kTwoPi * (i + 1) / n, a2 = kTwoPi * (i + 2) / n;
    const Vec2 p0 = shape->radius(a0) * from_angle(a0);
    const Vec2 p1 = shape->radius(a1) * from_angle(a1);
    const Vec2 p2 = shape->radius(a2) * from_angle(a2);
    min_turn = std::min(min_turn, cross(p1 - p0, p2 - p1));
  }
  if (min_turn < -1e-14) throw Error(ErrorCode::InvalidBall, "radial ball is not convex");
  impl->strictly_convex = min_turn > 1e-14;
  finish_smooth(*impl);
  check_circumference(*impl);
  return PlaneContext(impl);
}

PlaneContext PlaneContext::from_spec(std::string_view spec, int samples) {
  const auto colon = spec.find(':');
  const std::string head(spec.substr(0, colon));
  const std::string arg = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  if (head == "euclidean" && arg.empty()) return euclidean(samples);
  if (head == "lp" && !arg.empty()) {
    if (arg == "inf" || arg == "infinity") return lp(std::numeric_limits<double>::infinity(), samples);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size()) throw Error(ErrorCode::BadParams, "bad l_p exponent '" + arg + "'");
    return lp(p, samples);
  }
  if (head == "polygon" && !arg.empty()) {
    std::vector<Vec2> verts;
    for (const auto& row : read_number_rows(arg)) {
      if (row.size() != 2) throw Error(ErrorCode::ParseError, "vertex rows need 'x y'");
      verts.push_back({row[0], row[1]});
    }
    auto ctx = polygon(std::move(verts), samples);
    auto impl = std::make_shared<Impl>(*ctx.impl_);
    impl->spec = std::string(spec);
    return PlaneContext(impl);
  }
  if (head == "radial" && !arg.empty()) {
    std::vector<double> radii;
    std::vector<double> angles;
    for (const auto& row : read_number_rows(arg)) {
      if (row.size() != 2) throw Error(ErrorCode::ParseError, "radial rows need 'theta r'");
      angles.push_back(row[0]);
      radii.push_back(row[1]);
    }
    if (angles.size() < 8) throw Error(ErrorCode::InvalidBall, "radial table needs >= 8 samples");
    const double step = angles[1] - angles[0];
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (std::abs(angles[i] - step * static_cast<double>(i)) > 1e-9) {
        throw Error(ErrorCode::InvalidBall, "radial angles must be equally spaced from 0");
      }
    }
    const double span = step * static_cast<double>(angles.size());
    bool half = false;
    if (std::abs(span - kPi) < 1e-9) half = true;
    else if (std::abs(span - kTwoPi) >= 1e-9) {
      throw Error(ErrorCode::InvalidBall, "radial table must cover [0, pi) or [0, 2pi)");
    }
    auto ctx = radial(std::move(radii), half, samples);
    auto impl = std::make_shared<Impl>(*ctx.impl_);
    impl->spec = std::string(spec);
    return PlaneContext(impl);
  }
  throw Error(ErrorCode::BadParams, "unknown ball spec '" + std::string(spec) + "'");
}

PlaneContext PlaneContext::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::BadParams, "scale factor must be positive");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->scale = impl_->scale * factor;
  impl->id = next_id();
  std::ostringstream os;
  os << impl_->spec << " scaled by " << factor;
  impl->spec = os.str();
  return PlaneContext(impl);
}

BallKind PlaneContext::kind() const { return impl_->kind; }
double PlaneContext::exponent() const { return impl_->exponent; }
double PlaneContext::scale() const { return impl_->scale; }
const std::vector<Vec2>& PlaneContext::vertices() const { return impl_->vertices; }
const std::string& PlaneContext::spec() const { return impl_->spec; }
bool PlaneContext::smooth() const { return impl_->smooth; }
bool PlaneContext::strictly_convex() const { return impl_->strictly_convex; }
int PlaneContext::samples() const { return impl_->samples; }
std::uint64_t PlaneContext::id() const { return impl_->id; }

double PlaneContext::norm(Vec2 v) const { return impl_->shape->norm(v) / impl_->scale; }

Vec2 PlaneContext::norm_gradient(Vec2 v) const {
  if (!smooth()) throw Error(ErrorCode::NonSmoothBoundary, "norm gradient needs a smooth ball");
  if (v == Vec2{}) throw Error(ErrorCode::ZeroVector, "norm gradient at the origin");
  return impl_->shape->gradient(v) / impl_->scale;
}

double PlaneContext::semi_inner(Vec2 x, Vec2 y) const {
  if (y == Vec2{}) return 0.0;
  const double ny = norm(y);
  if (impl_->kind == BallKind::polygon) {
    const auto& poly = static_cast<const PolygonShape&>(*impl_->shape);
    return ny * poly.one_sided(y, x) / impl_->scale;
  }
  return ny * dot(norm_gradient(y), x);
}

bool PlaneContext::is_birkhoff_orthogonal(Vec2 x, Vec2 y, double tol) const {
  if (x == Vec2{}) throw Error(ErrorCode::ZeroVector, "Birkhoff test needs x != 0");
  if (y == Vec2{}) return true;
  const double nx = norm(x);
  const double span = 10.0 * nx / norm(y);
  auto m = numerics::minimize([&](double t) { return norm(x + t * y); }, -span, span);
  return m.value >= nx * (1.0 - tol);
}

Vec2 PlaneContext::q_normal(Vec2 x) const {
  if (x == Vec2{}) throw Error(ErrorCode::ZeroVector, "q_normal of the zero vector");
  const double psi = angle_of(x);
  if (impl_->kind == BallKind::polygon) {
    const double a = wrap_positive(psi);
    for (Vec2 v : impl_->vertices) {
      double d = std::abs(wrap_positive(angle_of(v)) - a);
      d = std::min(d, kTwoPi - d);
      if (d <= 1e-12) {
        throw Error(ErrorCode::NonSmoothBoundary, "direction hits a vertex of the unit circle");
      }
    }
    return impl_->shape->norm(x) * impl_->tangent(impl_->position(x));
  }
  const Vec2 T = impl_->tangent_raw(psi);
  return (impl_->shape->norm(x) / impl_->shape->norm(T)) * T;
}

Vec2 PlaneContext::q_inverse(Vec2 x) const {
  if (x == Vec2{}) throw Error(ErrorCode::ZeroVector, "q_inverse of the zero vector");
  if (!impl_->strictly_convex) {
    throw Error(ErrorCode::NonSmoothBoundary, "q_inverse needs a strictly convex ball");
  }
  const double target = angle_of(x);
  // Angle of the tangent relative to the position vector lies in (0, pi),
  // so psi + that angle is increasing and brackets target on [target - pi, target].
  auto g = [&](double psi) {
    const Vec2 e = from_angle(psi);
    const Vec2 T = impl_->tangent_raw(psi);
    return psi + std::atan2(cross(e, T), dot(e, T)) - target;
  };
  const double psi = numerics::find_root(g, target - kPi, target);
  const Vec2 u = impl_->shape->radius(psi) * from_angle(psi);
  return impl_->shape->norm(x) * u;
}

double PlaneContext::sigma_line(Vec2 direction) const {
  if (direction == Vec2{}) throw Error(ErrorCode::ZeroVector, "sigma of a zero direction");
  return norm(unit_e(direction));
}

double PlaneContext::sigma_plane() const { return kPi / area(); }
double PlaneContext::area() const { return impl_->area * impl_->scale * impl_->scale; }
double PlaneContext::circumference() const { return impl_->circumference; }

double PlaneContext::radius(double psi) const {
  return impl_->scale * impl_->shape->radius(psi);
}

Vec2 PlaneContext::boundary_point(double t) const { return impl_->scale * impl_->point(t); }
Vec2 PlaneContext::boundary_tangent(double t) const { return impl_->scale * impl_->tangent(t); }
Vec2 PlaneContext::boundary_acceleration(double t) const {
  return impl_->scale * impl_->acceleration(t);
}

double PlaneContext::boundary_position(Vec2 direction) const {
  if (direction == Vec2{}) throw Error(ErrorCode::ZeroVector, "position of a zero direction");
  return impl_->position(direction);
}

Vec2 PlaneContext::rotate_raw(Vec2 x, double phi) const {
  if (x == Vec2{}) return x;
  return impl_->shape->norm(x) * impl_->point(impl_->position(x) + phi);
}

std::vector<PlaneContext::TableEntry> PlaneContext::boundary_table() const {
  std::vector<TableEntry> out;
  if (impl_->kind == BallKind::polygon) {
    for (int k = 0; k <= impl_->samples; ++k) {
      const double a = kTwoPi * k / impl_->samples;
      out.push_back({a, k == impl_->samples ? impl_->circumference
                                             : impl_->position(from_angle(a))});
    }
    return out;
  }
  for (int k = 0; k <= impl_->table->panels(); ++k) {
    out.push_back({impl_->table->node_param(k), impl_->table->node_value(k)});
  }
  return out;
}

}  // namespace mkin
