#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "transversal/geometry.hpp"

namespace transversal {

// Which side of an (unoriented, canonically normalized) line the polygon's
// centroid lies on: the sign of n . centroid - offset.
enum class Side : int { negative = -1, on = 0, positive = 1 };

enum class Contact { none, vertex, edge };

inline const char* to_string(Contact c) {
  switch (c) {
    case Contact::none: return "none";
    case Contact::vertex: return "vertex";
    case Contact::edge: return "edge";
  }
  return "none";
}

// The unique c >= 0 such that `line` is tangent to the polygon scaled by c
// about its centroid. Zero when the centroid lies on the line. The distance
// from centroid to line is divided by the strip half-width on the line's own
// side of the centroid, so the value is defined for every line, including
// lines missing the polygon entirely (factor > 1).
inline double correcting_factor(const ConvexPolygon& polygon, const Line& line) {
  const double d = signed_distance(line, polygon.centroid());
  if (d == 0.0) return 0.0;
  const Point n = line.normal();
  if (d > 0.0) return d / support_value(polygon, -n);
  return -d / support_value(polygon, n);
}

// The correcting factor at a fixed direction, as a function of the line
// offset: two linear pieces meeting at zero where the line passes through
// the centroid.
struct VShapeProfile {
  Direction direction;
  double apex_offset;  // offset of the parallel line through the centroid
  double slope_pos;    // 1 / w(n), governs offsets above the apex
  double slope_neg;    // 1 / w(-n), governs offsets below it

  double value(double offset) const {
    const double t = offset - apex_offset;
    return t >= 0.0 ? t * slope_pos : -t * slope_neg;
  }
};

inline VShapeProfile factor_profile(const ConvexPolygon& polygon, Direction direction) {
  const Point n = direction.normal();
  const auto [w_pos, w_neg] = support_pair(polygon, n);
  return {direction, dot(n, polygon.centroid()), 1.0 / w_pos, 1.0 / w_neg};
}

inline Side side_of(const ConvexPolygon& polygon, const Line& line, double tol) {
  const double d = signed_distance(line, polygon.centroid());
  if (std::abs(d) <= tol) return Side::on;
  return d > 0.0 ? Side::positive : Side::negative;
}

struct TangencyResult {
  bool tangent = false;
  Contact contact = Contact::none;
};

// Scale-free default: 1e-9 times the largest coordinate magnitude.
inline double default_tangency_tol(const ConvexPolygon& polygon) {
  double s = 0.0;
  for (const Point& v : polygon.vertices()) s = std::max({s, std::abs(v.x), std::abs(v.y)});
  return 1e-9 * std::max(s, 1e-30);
}

// Tangent means: some vertex lies within tol of the line AND all vertices lie
// on one closed side. Contact is `edge` when two adjacent vertices touch.
inline TangencyResult is_tangent(const ConvexPolygon& polygon, const Line& line, double tol) {
  const std::size_t n = polygon.size();
  std::vector<double> d(n);
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -std::numeric_limits<double>::infinity();
  double amin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = signed_distance(line, polygon.vertices()[i]);
    dmin = std::min(dmin, d[i]);
    dmax = std::max(dmax, d[i]);
    amin = std::min(amin, std::abs(d[i]));
  }
  const bool one_sided = dmin >= -tol || dmax <= tol;
  if (amin > tol || !one_sided) return {false, Contact::none};
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(d[i]) <= tol && std::abs(d[(i + 1) % n]) <= tol)
      return {true, Contact::edge};
  return {true, Contact::vertex};
}

inline TangencyResult is_tangent(const ConvexPolygon& polygon, const Line& line) {
  return is_tangent(polygon, line, default_tangency_tol(polygon));
}

// Contact type of a line tangent to the polygon, classified by how many
// vertices attain the support toward the line. Robust against the residual
// tolerance games of is_tangent: it only compares support values.
inline Contact tangent_contact(const ConvexPolygon& polygon, const Line& line) {
  const double d = signed_distance(line, polygon.centroid());
  const Point n = line.normal();
  const Point face = d > 0.0 ? -n : n;
  const double w = support_value(polygon, face);
  const Point s = polygon.centroid();
  std::size_t achievers = 0;
  for (const Point& v : polygon.vertices())
    if (dot(face, v - s) >= w - 1e-9 * std::abs(w)) ++achievers;
  return achievers >= 2 ? Contact::edge : Contact::vertex;
}

}  // namespace transversal
