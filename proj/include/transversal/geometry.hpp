#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "transversal/errors.hpp"

namespace transversal {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point p) { return {-p.x, -p.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

// Normal angle of an unoriented line, kept in [0, pi). The unit normal is
// always derived from the angle, never stored.
class Direction {
 public:
  explicit Direction(double theta) : theta_(reduce(theta)) {}

  double theta() const { return theta_; }
  Point normal() const { return {std::cos(theta_), std::sin(theta_)}; }
  Point tangent() const { return {-std::sin(theta_), std::cos(theta_)}; }

  friend bool operator==(Direction a, Direction b) { return a.theta_ == b.theta_; }

 private:
  static double reduce(double t) {
    t = std::fmod(t, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t = 0.0;  // guards fmod rounding at the seam
    return t;
  }

  double theta_;
};

// The line {x : n(theta) . x = offset}. Canonical: theta in [0, pi), so each
// unoriented line has exactly one (theta, offset) representative.
class Line {
 public:
  Line(Direction direction, double offset) : direction_(direction), offset_(offset) {}

  // Accepts any normal angle; reducing by pi flips the normal, so the offset
  // is negated once per half-turn.
  static Line from_normal_form(double theta, double offset) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    if (t >= 2.0 * kPi) t = 0.0;
    if (t >= kPi) {
      t -= kPi;
      offset = -offset;
    }
    if (t >= kPi) {
      t -= kPi;
      offset = -offset;
    }
    return Line(Direction(t), offset);
  }

  static Line through(Point a, Point b) {
    const Point d = b - a;
    if (d.x == 0.0 && d.y == 0.0)
      throw ValidationError(ValidationIssue::duplicate_vertex,
                            "cannot build a line through two identical points");
    // normal of the segment direction is (-d.y, d.x)
    const Direction dir(std::atan2(d.x, -d.y));
    return Line(dir, dot(dir.normal(), a));
  }

  // a*x + b*y = c
  static Line from_implicit(double a, double b, double c) {
    const double len = std::hypot(a, b);
    if (len == 0.0)
      throw ValidationError(ValidationIssue::nonfinite_coordinate,
                            "implicit line needs a nonzero normal");
    return from_normal_form(std::atan2(b, a), c / len);
  }

  Direction direction() const { return direction_; }
  double theta() const { return direction_.theta(); }
  double offset() const { return offset_; }
  Point normal() const { return direction_.normal(); }

  friend bool operator==(const Line& a, const Line& b) {
    return a.direction_ == b.direction_ && a.offset_ == b.offset_;
  }

 private:
  Direction direction_;
  double offset_;
};

inline double signed_distance(const Line& line, Point p) {
  return dot(line.normal(), p) - line.offset();
}

// Strictly convex polygon, vertices CCW, with the vertex-mean centroid cached.
// Note the centroid is the arithmetic mean of the VERTICES, not the area
// centroid; the two differ for irregular polygons and the whole scaling
// construction is defined around the vertex mean.
class ConvexPolygon {
 public:
  const std::vector<Point>& vertices() const { return vertices_; }
  Point centroid() const { return centroid_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  ConvexPolygon(std::vector<Point> vertices, Point centroid)
      : vertices_(std::move(vertices)), centroid_(centroid) {}

  friend ConvexPolygon validate_polygon(std::vector<Point> raw);
  friend ConvexPolygon apply_homothety(const ConvexPolygon& polygon, double ratio);

  std::vector<Point> vertices_;
  Point centroid_;
};

struct Configuration {
  std::vector<ConvexPolygon> polygons;
};

namespace detail {

inline Point vertex_mean(const std::vector<Point>& vs) {
  Point sum;
  for (const Point& v : vs) sum = sum + v;
  return {sum.x / double(vs.size()), sum.y / double(vs.size())};
}

}  // namespace detail

// Canonicalizes a vertex list into a strictly convex CCW polygon:
//  - CW input is reversed silently,
//  - collinear interior vertices are dropped,
//  - duplicates (within 1e-12) and reflex turns are rejected.
inline ConvexPolygon validate_polygon(std::vector<Point> raw) {
  if (raw.size() < 3)
    throw ValidationError(ValidationIssue::too_few_vertices,
                          "polygon needs at least 3 vertices, got " + std::to_string(raw.size()));
  for (const Point& p : raw)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError(ValidationIssue::nonfinite_coordinate,
                            "polygon vertex coordinates must be finite");
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (distance(raw[i], raw[j]) <= 1e-12)
        throw ValidationError(ValidationIssue::duplicate_vertex,
                              "vertices " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide");

  double area2 = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) area2 += cross(raw[i], raw[(i + 1) % raw.size()]);
  if (area2 < 0.0) std::reverse(raw.begin(), raw.end());

  bool any_turn = false;
  for (std::size_t i = 0; i < raw.size() && !any_turn; ++i) {
    const Point a = raw[(i + raw.size() - 1) % raw.size()];
    const Point b = raw[i];
    const Point c = raw[(i + 1) % raw.size()];
    if (cross(b - a, c - b) != 0.0) any_turn = true;
  }
  if (!any_turn)
    throw ValidationError(ValidationIssue::too_few_vertices,
                          "all vertices are collinear");

  // Drop collinear interior vertices; reject reflex turns and reversals.
  // Signs are taken from exact cross products of the input coordinates.
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = raw[(i + n - 1) % n];
      const Point b = raw[i];
      const Point c = raw[(i + 1) % n];
      const double turn = cross(b - a, c - b);
      if (turn < 0.0)
        throw ValidationError(ValidationIssue::not_convex,
                              "reflex turn at vertex " + std::to_string(i));
      if (turn == 0.0) {
        if (dot(b - a, c - b) < 0.0)
          throw ValidationError(ValidationIssue::not_convex,
                                "boundary doubles back at vertex " + std::to_string(i));
        raw.erase(raw.begin() + long(i));
        if (raw.size() < 3)
          throw ValidationError(ValidationIssue::too_few_vertices,
                                "fewer than 3 vertices remain after dropping collinear ones");
        changed = true;
        break;
      }
    }
  }

  // All turns are strictly CCW now; a boundary that winds more than once
  // would still pass the sign test, so check the total turning angle.
  double turning = 0.0;
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = raw[i] - raw[(i + n - 1) % n];
    const Point e1 = raw[(i + 1) % n] - raw[i];
    turning += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6)
    throw ValidationError(ValidationIssue::not_convex, "boundary winds more than once");

  const Point centroid = detail::vertex_mean(raw);
  return ConvexPolygon(std::move(raw), centroid);
}

// Support half-width of the polygon's strip: max over vertices of
// n . (v - centroid). Strictly positive for every unit n.
inline double support_value(const ConvexPolygon& polygon, Point n) {
  const Point s = polygon.centroid();
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& v : polygon.vertices()) best = std::max(best, dot(n, v - s));
  return best;
}

// (w(n), w(-n)) in one pass over the vertices.
inline std::pair<double, double> support_pair(const ConvexPolygon& polygon, Point n) {
  const Point s = polygon.centroid();
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const Point& v : polygon.vertices()) {
    const double t = dot(n, v - s);
    hi = std::max(hi, t);
    lo = std::min(lo, t);
  }
  return {hi, -lo};
}

inline Point apply_homothety(Point p, Point center, double ratio) {
  if (ratio < 0.0)
    throw ValidationError(ValidationIssue::negative_ratio, "homothety ratio must be >= 0");
  return center + ratio * (p - center);
}

// Scales the polygon about its own centroid. The cached centroid of the
// image is recomputed from the scaled vertices (it matches the original to
// rounding error; the cache invariant is "mean of the stored vertices").
inline ConvexPolygon apply_homothety(const ConvexPolygon& polygon, double ratio) {
  if (!(ratio > 0.0))
    throw ValidationError(ValidationIssue::negative_ratio,
                          "polygon homothety ratio must be > 0");
  const Point s = polygon.centroid();
  std::vector<Point> scaled;
  scaled.reserve(polygon.size());
  for (const Point& v : polygon.vertices()) scaled.push_back(s + ratio * (v - s));
  const Point centroid = detail::vertex_mean(scaled);
  return ConvexPolygon(std::move(scaled), centroid);
}

inline Configuration scale_configuration(const Configuration& config, double ratio) {
  if (!(ratio > 0.0))
    throw ValidationError(ValidationIssue::negative_ratio,
                          "configuration scaling ratio must be > 0");
  Configuration out;
  out.polygons.reserve(config.polygons.size());
  for (const ConvexPolygon& p : config.polygons) out.polygons.push_back(apply_homothety(p, ratio));
  return out;
}

// Largest coordinate magnitude over all vertices; the reference length for
// scale-relative tolerances.
inline double coordinate_scale(const Configuration& config) {
  double s = 0.0;
  for (const ConvexPolygon& p : config.polygons)
    for (const Point& v : p.vertices()) s = std::max({s, std::abs(v.x), std::abs(v.y)});
  return std::max(s, 1e-30);
}

// Strict convex hull (collinear points dropped), CCW, Andrew's monotone chain.
// Returns fewer than 3 points when the input is degenerate.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](Point a, Point b) { return a == b; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 1]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 1]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Orthogonal least-squares line through a point set (total least squares via
// the principal axis of the covariance). For a single point, or coincident
// points, falls back to the horizontal line through the mean.
inline Line least_squares_line(const std::vector<Point>& pts) {
  if (pts.empty())
    throw ValidationError(ValidationIssue::empty_configuration,
                          "cannot fit a line through zero points");
  const Point m = detail::vertex_mean(pts);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point& p : pts) {
    const Point d = p - m;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  if (sxx == 0.0 && sxy == 0.0 && syy == 0.0) return Line(Direction(kPi / 2.0), m.y);
  const double axis = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Direction dir(axis + kPi / 2.0);
  return Line(dir, dot(dir.normal(), m));
}

}  // namespace transversal
