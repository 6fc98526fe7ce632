#include "mkin/output.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mkin/error.hpp"
#include "text.hpp"

namespace mkin {

namespace {

std::string coord(double v) {
  double r = std::round(v * 1e6) / 1e6;
  if (r == 0.0) r = 0.0;
  return text::format_sig(r, 12);
}

}  // namespace

std::string render_svg(const std::vector<Polyline>& curves, const std::vector<Marker>& points) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  auto grow = [&](Vec2 p) {
    if (!is_finite(p)) return;
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const auto& c : curves) {
    for (Vec2 p : c.points) grow(p);
  }
  for (const auto& m : points) grow(m.at);
  if (!(x1 >= x0)) throw Error(ErrorCode::BadParams, "nothing to plot");

  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double margin = 0.05 * span;
  const double vx = x0 - margin, vy = -(y1 + margin);
  const double vw = (x1 - x0) + 2 * margin, vh = (y1 - y0) + 2 * margin;
  const double stroke = span / 400.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << coord(vx) << ' ' << coord(vy)
     << ' ' << coord(vw) << ' ' << coord(vh) << "\" width=\"800\" height=\""
     << coord(800.0 * vh / vw) << "\">\n";
  // y up: flip once for everything.
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << coord(stroke) << "\">\n";
  for (const auto& c : curves) {
    if (c.points.empty()) continue;
    os << "<path";
    if (!c.label.empty()) os << " id=\"" << c.label << '"';
    os << " stroke=\"" << (c.color.empty() ? "black" : c.color) << "\" d=\"";
    bool pen = false, first = true;
    for (Vec2 p : c.points) {
      if (!is_finite(p)) {
        pen = false;
        continue;
      }
      os << (pen ? " L" : (first ? "M" : " M")) << coord(p.x) << ',' << coord(p.y);
      pen = true;
      first = false;
    }
    if (c.closed) os << " Z";
    os << "\"/>\n";
  }
  for (const auto& m : points) {
    os << "<circle";
    if (!m.label.empty()) os << " id=\"" << m.label << '"';
    os << " cx=\"" << coord(m.at.x) << "\" cy=\"" << coord(m.at.y) << "\" r=\""
       << coord(4 * stroke) << "\" fill=\"" << (m.color.empty() ? "black" : m.color) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg(const std::vector<Polyline>& curves, const std::vector<Marker>& points,
              const std::string& path) {
  write_file(path, render_svg(curves, points));
}

std::string roulette_csv(const RouletteTrace& trace) {
  std::ostringstream os;
  os << "s,x,y,vx,vy,ax,ay\n";
  for (const auto& r : trace.samples) {
    os << text::format_sig(r.s) << ',' << text::format_sig(r.position.x) << ','
       << text::format_sig(r.position.y) << ',' << text::format_sig(r.velocity.x) << ','
       << text::format_sig(r.velocity.y) << ',' << text::format_sig(r.acceleration.x) << ','
       << text::format_sig(r.acceleration.y) << '\n';
  }
  return os.str();
}

std::string inflection_csv(const InflectionCurve& curve) {
  std::ostringstream os;
  os << "dir_x,dir_y,px,py\n";
  for (const auto& p : curve.points) {
    if (!p.found) continue;
    os << text::format_sig(p.direction.x) << ',' << text::format_sig(p.direction.y) << ','
       << text::format_sig(p.point.x) << ',' << text::format_sig(p.point.y) << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace mkin
