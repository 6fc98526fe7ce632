#include "mkin/angle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>

#include "mkin/error.hpp"
#include "mkin/numerics.hpp"
#include "text.hpp"

namespace mkin {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::arc_length: return "arclen";
    case MeasureKind::sector_area: return "area";
    case MeasureKind::custom_density: return "density";
  }
  return "?";
}

struct AngleMeasure::Impl {
  StarlikeCurve carrier;
  MeasureKind kind;
  std::function<double(double)> density;
  numerics::CumulativeTable table;
  std::uint64_t id;
};

namespace {

std::uint64_t next_measure_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

AngleMeasure::Impl build(const StarlikeCurve& carrier, MeasureKind kind,
                                std::function<double(double)> density) {
  const Curve& c = carrier.base();
  numerics::CumulativeTable table(density, c.t0(), c.t1(), AngleMeasure::kTablePanels);
  if (!(table.total() > 0.0)) throw Error(ErrorCode::DegenerateDensity, "measure has zero total");
  for (int k = 0; k <= table.panels(); ++k) {
    if (density(table.node_param(k)) < 0.0) {
      throw Error(ErrorCode::DegenerateDensity, "density is negative");
    }
  }
  return {carrier, kind, std::move(density), std::move(table), next_measure_id()};
}

}  // namespace

AngleMeasure AngleMeasure::arc_length(const StarlikeCurve& carrier, const PlaneContext& ctx) {
  const Curve c = carrier.base();
  return AngleMeasure(std::make_shared<Impl>(build(
      carrier, MeasureKind::arc_length,
      [c, ctx](double t) { return ctx.norm(c.derivative_unchecked(t)); })));
}

AngleMeasure AngleMeasure::sector_area(const StarlikeCurve& carrier) {
  const Curve c = carrier.base();
  const Vec2 p = carrier.center();
  return AngleMeasure(std::make_shared<Impl>(build(
      carrier, MeasureKind::sector_area,
      [c, p](double t) { return 0.5 * cross(c.eval_unchecked(t) - p, c.derivative_unchecked(t)); })));
}

AngleMeasure AngleMeasure::custom_density(const StarlikeCurve& carrier,
                                          std::function<double(double)> density) {
  if (!density) throw Error(ErrorCode::DegenerateDensity, "missing density");
  return AngleMeasure(
      std::make_shared<Impl>(build(carrier, MeasureKind::custom_density, std::move(density))));
}

AngleMeasure AngleMeasure::from_spec(std::string_view spec, const StarlikeCurve& carrier,
                                     const PlaneContext& ctx) {
  const std::string s = text::trim(spec);
  if (s == "arclen") return arc_length(carrier, ctx);
  if (s == "area") return sector_area(carrier);
  if (s.rfind("density:", 0) == 0) {
    const std::string path = s.substr(8);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::vector<double> ts, ws;
    std::string line;
    while (std::getline(in, line)) {
      const auto row = text::parse_numbers(line, path);
      if (row.empty()) continue;
      if (row.size() != 2) throw Error(ErrorCode::ParseError, path + ": rows need 'param weight'");
      if (!ts.empty() && !(row[0] > ts.back())) {
        throw Error(ErrorCode::ParseError, path + ": parameters must increase");
      }
      ts.push_back(row[0]);
      ws.push_back(row[1]);
    }
    if (ts.size() < 2) throw Error(ErrorCode::DegenerateDensity, path + ": need two rows");
    const double a = carrier.base().t0(), period = carrier.base().span();
    auto density = [ts, ws, a, period](double t) {
      t = a + wrap_positive(t - a, period);
      if (t <= ts.front()) {
        // Periodic wrap between the last and the first row.
        const double t_last = ts.back() - period;
        const double u = (t - t_last) / (ts.front() - t_last);
        return ws.back() + u * (ws.front() - ws.back());
      }
      if (t >= ts.back()) {
        const double t_next = ts.front() + period;
        const double u = (t - ts.back()) / (t_next - ts.back());
        return ws.back() + u * (ws.front() - ws.back());
      }
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
      const double u = (t - ts[i]) / (ts[i + 1] - ts[i]);
      return ws[i] + u * (ws[i + 1] - ws[i]);
    };
    return custom_density(carrier, density);
  }
  throw Error(ErrorCode::BadParams, "unknown measure '" + s + "'");
}

const StarlikeCurve& AngleMeasure::carrier() const { return impl_->carrier; }
Vec2 AngleMeasure::center() const { return impl_->carrier.center(); }
MeasureKind AngleMeasure::kind() const { return impl_->kind; }
double AngleMeasure::total_raw() const { return impl_->table.total(); }
std::uint64_t AngleMeasure::id() const { return impl_->id; }
double AngleMeasure::density(double t) const { return impl_->density(t); }

double AngleMeasure::cdf(double t) const {
  const Curve& c = impl_->carrier.base();
  const double period = c.span();
  const double turns = std::floor((t - c.t0()) / period);
  const double local = t - turns * period;
  return kTwoPi * (impl_->table(local) / total_raw() + turns);
}

double AngleMeasure::parameter_at(double angle) const {
  const double raw = wrap_positive(angle) / kTwoPi * total_raw();
  return impl_->table.inverse(raw);
}

double AngleMeasure::direction_angle(Vec2 direction) const {
  return wrap_positive(cdf(impl_->carrier.radial_parameter(direction)));
}

BrassReport brass_check(const AngleMeasure& m) {
  BrassReport r;
  const Curve& c = m.carrier().base();
  const double total =
      numerics::integrate([&](double t) { return m.density(t); }, c.t0(), c.t1(), 1e-12);
  r.total_ok = std::abs(total - m.total_raw()) <= 1e-9 * std::max(1.0, total) &&
               std::abs(m.cdf(c.t1()) - m.cdf(c.t0()) - kTwoPi) <= 1e-9;

  // Antipodal arcs between rays of a 256-ray fan carry the same measure.
  const int rays = 256;
  r.symmetric = true;
  for (int k = 0; k < rays / 2 && r.symmetric; ++k) {
    const Vec2 a = from_angle(kTwoPi * k / rays), b = from_angle(kTwoPi * (k + 1) / rays);
    const double arc = angle_between(m, a, b);
    const double anti = angle_between(m, -a, -b);
    if (std::abs(arc - anti) > 1e-9 * kTwoPi) r.symmetric = false;
  }

  // No atoms: the largest cell mass must shrink when the grid is refined.
  auto max_cell = [&](int cells) {
    double best = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double t0 = c.t0() + c.span() * i / cells, t1 = c.t0() + c.span() * (i + 1) / cells;
      best = std::max(best, m.cdf(t1) - m.cdf(t0));
    }
    return best;
  };
  const double coarse = max_cell(1024), fine = max_cell(2048);
  r.atomless = fine <= 0.75 * coarse;
  return r;
}

double angle_between(const AngleMeasure& m, Vec2 r1, Vec2 r2) {
  if (r1 == Vec2{} || r2 == Vec2{}) throw Error(ErrorCode::ZeroVector, "ray direction is zero");
  if (std::abs(cross(r1, r2)) <= 0.0 && dot(r1, r2) > 0.0) return 0.0;
  return wrap_positive(m.direction_angle(r2) - m.direction_angle(r1));
}

GeneralRotation::GeneralRotation(AngleMeasure measure, double theta)
    : measure_(std::move(measure)), theta_(wrap_positive(theta)) {}

Vec2 GeneralRotation::apply(Vec2 q) const {
  const Vec2 p = center();
  if (q == p || theta_ == 0.0) return q;
  const StarlikeCurve& carrier = measure_.carrier();
  const double t = carrier.radial_parameter(q - p);
  const Vec2 rad = carrier.base().eval_unchecked(t) - p;
  const double alpha = norm_e(q - p) / norm_e(rad);
  const double t2 = measure_.parameter_at(measure_.cdf(t) + theta_);
  return p + alpha * (carrier.base().eval_unchecked(t2) - p);
}

Vec2 rotate(const GeneralRotation& rot, Vec2 q) { return rot.apply(q); }

GeneralRotation compose(const GeneralRotation& a, const GeneralRotation& b) {
  if (a.measure().id() != b.measure().id()) {
    throw Error(ErrorCode::MeasureMismatch, "rotations use different measures");
  }
  return GeneralRotation(a.measure(), a.theta() + b.theta());
}

GeneralRotation inverse(const GeneralRotation& r) {
  return GeneralRotation(r.measure(), kTwoPi - r.theta());
}

Polar to_polar(const AngleMeasure& m, const PlaneContext& ctx, Vec2 q0, Vec2 q) {
  const Vec2 p = m.center();
  if (q == p) throw Error(ErrorCode::CenterPoint, "the center has no polar angle");
  return {ctx.norm(q - p), angle_between(m, q0 - p, q - p)};
}

Vec2 from_polar(const AngleMeasure& m, const PlaneContext& ctx, Vec2 q0, Polar polar) {
  const Vec2 p = m.center();
  const double t = m.parameter_at(m.direction_angle(q0 - p) + polar.angle);
  const Vec2 rad = m.carrier().base().eval_unchecked(t) - p;
  return p + (polar.radius / ctx.norm(rad)) * rad;
}

Vec2 motion_apply(const GeneralRotation& rot, Vec2 anchor, Vec2 x) {
  const Vec2 p = rot.center();
  return rot.apply(x - anchor + p) - p + anchor;
}

double parse_rotation_angle(std::string_view spec) {
  const std::string s = text::trim(spec);
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::BadParams, "rotation needs theta= or deg=");
  const std::string key = text::trim(s.substr(0, eq));
  const double v = text::parse_double(s.substr(eq + 1));
  if (key == "theta") return v;
  if (key == "deg") return v * kPi / 180.0;
  throw Error(ErrorCode::BadParams, "unknown rotation key '" + key + "'");
}

}  // namespace mkin
