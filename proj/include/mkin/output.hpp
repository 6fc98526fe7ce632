#pragma once

// CSV and SVG writers. All numbers go through format_sig so repeated runs
// produce identical bytes.

#include <string>
#include <vector>

#include "mkin/curvature.hpp"
#include "mkin/kinematics.hpp"

namespace mkin {

struct Polyline {
  std::string label;
  std::string color;
  std::vector<Vec2> points;
  bool closed = false;
};

struct Marker {
  std::string label;
  std::string color;
  Vec2 at;
};

/// Viewport = bounding box plus a 5% margin, coordinates rounded to 1e-6.
/// Throws BadParams on empty geometry and IoError when the file cannot be written.
void emit_svg(const std::vector<Polyline>& curves, const std::vector<Marker>& points,
              const std::string& path);
std::string render_svg(const std::vector<Polyline>& curves, const std::vector<Marker>& points);

/// Columns s,x,y,vx,vy,ax,ay.
std::string roulette_csv(const RouletteTrace& trace);
/// Columns dir_x,dir_y,px,py; gaps are skipped.
std::string inflection_csv(const InflectionCurve& curve);

void write_file(const std::string& path, const std::string& content);

}  // namespace mkin
