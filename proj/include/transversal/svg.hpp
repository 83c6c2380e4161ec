#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "transversal/geometry.hpp"
#include "transversal/solver.hpp"

namespace transversal {

// Fixed palette (documented in docs/FORMATS.md).
namespace svg_palette {
inline constexpr const char* kOriginalFill = "#4f81bd";
inline constexpr const char* kOriginalStroke = "#20435f";
inline constexpr const char* kScaledStroke = "#8c8c8c";
inline constexpr const char* kTangentStroke = "#d9831f";
inline constexpr const char* kTransversal = "#c0392b";
inline constexpr const char* kCentroid = "#20435f";
}  // namespace svg_palette

namespace detail {

struct WorldBox {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void include(Point p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void include(const ConvexPolygon& poly) {
    for (const Point& v : poly.vertices()) include(v);
  }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  void inflate(double fraction) {
    const double dx = std::max(width(), 1e-9) * fraction;
    const double dy = std::max(height(), 1e-9) * fraction;
    min_x -= dx;
    max_x += dx;
    min_y -= dy;
    max_y += dy;
  }
};

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Clip a full line to a world-box rectangle; false when it misses the box.
inline bool clip_line_to_box(const Line& line, const WorldBox& box, Point& a, Point& b) {
  const Point n = line.normal();
  const Point base = line.offset() * n;
  const Point dir = line.direction().tangent();
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  const double lo[2] = {box.min_x, box.min_y};
  const double hi[2] = {box.max_x, box.max_y};
  const double p0[2] = {base.x, base.y};
  const double d[2] = {dir.x, dir.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p0[axis] < lo[axis] || p0[axis] > hi[axis]) return false;
      continue;
    }
    double t0 = (lo[axis] - p0[axis]) / d[axis];
    double t1 = (hi[axis] - p0[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_lo = std::max(t_lo, t0);
    t_hi = std::min(t_hi, t1);
  }
  if (t_lo > t_hi) return false;
  a = base + t_lo * dir;
  b = base + t_hi * dir;
  return true;
}

}  // namespace detail

// Writes an SVG of the configuration: originals filled, the c_m-scaled
// copies as outlines (tangent ones highlighted), and every optimal
// transversal clipped to the viewport and labelled. Output is a pure
// function of the inputs.
inline void render_svg(const Configuration& config, const Solution* sol,
                       const std::string& path) {
  const bool scaled_view = sol != nullptr && !sol->degenerate && sol->c_m > 0.0;
  Configuration scaled;
  if (scaled_view) scaled = scale_configuration(config, sol->c_m);

  detail::WorldBox box;
  for (const ConvexPolygon& p : config.polygons) box.include(p);
  if (scaled_view)
    for (const ConvexPolygon& p : scaled.polygons) box.include(p);
  box.inflate(0.10);

  const double canvas_w = 800.0;
  const double canvas_h = std::max(80.0, canvas_w * box.height() / box.width());
  const double sx = canvas_w / box.width();
  const double sy = canvas_h / box.height();
  const double k = std::min(sx, sy);
  const auto to_px = [&](Point p) {
    return Point{(p.x - box.min_x) * k, (box.max_y - p.y) * k};
  };

  std::set<int> tangent;
  if (sol != nullptr)
    for (const Certificate& cert : sol->certificates)
      tangent.insert(cert.tangent_indices.begin(), cert.tangent_indices.end());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::px(box.width() * k) +
         "\" height=\"" + detail::px(box.height() * k) + "\" viewBox=\"0 0 " +
         detail::px(box.width() * k) + " " + detail::px(box.height() * k) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  const auto polygon_points = [&](const ConvexPolygon& poly) {
    std::string pts;
    for (const Point& v : poly.vertices()) {
      const Point q = to_px(v);
      if (!pts.empty()) pts += " ";
      pts += detail::px(q.x) + "," + detail::px(q.y);
    }
    return pts;
  };

  if (scaled_view) {
    for (std::size_t i = 0; i < scaled.polygons.size(); ++i) {
      const bool hot = tangent.count(int(i)) > 0;
      out += std::string("  <polygon class=\"scaled\" points=\"") +
             polygon_points(scaled.polygons[i]) + "\" fill=\"none\" stroke=\"" +
             (hot ? svg_palette::kTangentStroke : svg_palette::kScaledStroke) +
             "\" stroke-width=\"" + (hot ? "2.5" : "1.5") + "\" stroke-dasharray=\"6 4\"/>\n";
    }
  }

  for (std::size_t i = 0; i < config.polygons.size(); ++i) {
    out += std::string("  <polygon class=\"original\" points=\"") +
           polygon_points(config.polygons[i]) + "\" fill=\"" + svg_palette::kOriginalFill +
           "\" fill-opacity=\"0.45\" stroke=\"" + svg_palette::kOriginalStroke +
           "\" stroke-width=\"1.5\"/>\n";
    const Point c = to_px(config.polygons[i].centroid());
    out += "  <circle class=\"centroid\" cx=\"" + detail::px(c.x) + "\" cy=\"" +
           detail::px(c.y) + "\" r=\"2.5\" fill=\"" + svg_palette::kCentroid + "\"/>\n";
  }

  if (sol != nullptr) {
    int label = 0;
    for (const Line& line : sol->lines) {
      ++label;
      Point a, b;
      if (!detail::clip_line_to_box(line, box, a, b)) continue;
      const Point pa = to_px(a), pb = to_px(b);
      out += "  <line class=\"transversal\" x1=\"" + detail::px(pa.x) + "\" y1=\"" +
             detail::px(pa.y) + "\" x2=\"" + detail::px(pb.x) + "\" y2=\"" + detail::px(pb.y) +
             "\" stroke=\"" + svg_palette::kTransversal + "\" stroke-width=\"2\"/>\n";
      const Point mid = to_px({0.9 * a.x + 0.1 * b.x, 0.9 * a.y + 0.1 * b.y});
      out += "  <text x=\"" + detail::px(mid.x + 4.0) + "\" y=\"" + detail::px(mid.y - 4.0) +
             "\" font-family=\"monospace\" font-size=\"14\" fill=\"" + svg_palette::kTransversal +
             "\">t" + std::to_string(label) + "</text>\n";
    }
  }

  out += "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << out;
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace transversal
