#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "transversal/geometry.hpp"
#include "transversal/solver.hpp"

namespace transversal {

// Recipe for a reproducible random instance. Generation is a pure function
// of the recipe: the same recipe always yields the same vertex lists.
struct InstanceRecipe {
  std::uint64_t seed = 1;
  int n_polygons = 5;
  int min_vertices = 3;
  int max_vertices = 12;
  Point box_lo{0.0, 0.0};  // centroid sampling box
  Point box_hi{1.0, 1.0};
  double min_radius = 0.05;
  double max_radius = 0.3;
};

namespace detail {

// mt19937_64 is fully specified by the standard; mapping its output to
// doubles by hand keeps instances identical across standard libraries.
inline double next_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const int span = hi - lo + 1;
  const int k = lo + int(next_unit(rng) * double(span));
  return std::min(k, hi);
}

}  // namespace detail

// Each polygon is the convex hull of k points drawn on a disc of random
// radius around a centroid sampled in the box, then translated so the vertex
// mean lands exactly on the sampled centroid. Degenerate draws are retried.
inline Configuration random_instance(const InstanceRecipe& recipe) {
  if (recipe.n_polygons < 1 || recipe.min_vertices < 3 ||
      recipe.max_vertices < recipe.min_vertices || !(recipe.min_radius > 0.0) ||
      recipe.max_radius < recipe.min_radius || recipe.box_hi.x < recipe.box_lo.x ||
      recipe.box_hi.y < recipe.box_lo.y)
    throw std::invalid_argument("invalid instance recipe");

  std::mt19937_64 rng(recipe.seed);
  Configuration config;
  config.polygons.reserve(std::size_t(recipe.n_polygons));
  for (int p = 0; p < recipe.n_polygons; ++p) {
    const Point centroid{detail::uniform(rng, recipe.box_lo.x, recipe.box_hi.x),
                         detail::uniform(rng, recipe.box_lo.y, recipe.box_hi.y)};
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const int k = detail::uniform_int(rng, recipe.min_vertices, recipe.max_vertices);
      const double radius = detail::uniform(rng, recipe.min_radius, recipe.max_radius);
      std::vector<Point> cloud;
      cloud.reserve(std::size_t(k));
      for (int i = 0; i < k; ++i) {
        const double phi = detail::uniform(rng, 0.0, 2.0 * kPi);
        const double r = radius * std::sqrt(detail::next_unit(rng));
        cloud.push_back({centroid.x + r * std::cos(phi), centroid.y + r * std::sin(phi)});
      }
      std::vector<Point> hull = convex_hull(std::move(cloud));
      if (hull.size() < 3) continue;
      const Point mean = detail::vertex_mean(hull);
      for (Point& v : hull) v = v + (centroid - mean);
      try {
        config.polygons.push_back(validate_polygon(std::move(hull)));
        break;
      } catch (const ValidationError&) {
        continue;  // near-duplicate hull vertices etc.; redraw
      }
    }
  }
  if (config.polygons.size() != std::size_t(recipe.n_polygons))
    throw std::runtime_error("failed to generate a polygon after many attempts");
  return config;
}

// Independent estimate of the minimal expansion ratio. For each grid
// direction the smallest workable c is found by bisection on a direct
// interval-intersection test (no pairwise formula anywhere), and one local
// grid-refinement pass re-scans around the best direction.
inline double brute_force_c_m(const Configuration& config, int angle_steps, double c_tol) {
  if (angle_steps < 2 || !(c_tol > 0.0))
    throw std::invalid_argument("brute_force_c_m needs angle_steps >= 2 and c_tol > 0");
  if (config.polygons.empty())
    throw ValidationError(ValidationIssue::empty_configuration,
                          "cannot scan an empty configuration");

  const std::size_t m = config.polygons.size();
  std::vector<double> proj(m), w_pos(m), w_neg(m);

  const auto feasible = [&](double c) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      lo = std::max(lo, proj[i] - c * w_neg[i]);
      hi = std::min(hi, proj[i] + c * w_pos[i]);
      if (lo > hi) return false;
    }
    return true;
  };

  const auto min_c_here = [&](Point n) {
    for (std::size_t i = 0; i < m; ++i) {
      const ConvexPolygon& poly = config.polygons[i];
      proj[i] = dot(n, poly.centroid());
      const auto [wp, wn] = support_pair(poly, n);
      w_pos[i] = wp;
      w_neg[i] = wn;
    }
    if (feasible(0.0)) return 0.0;
    double hi = 1.0;
    while (!feasible(hi)) hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > c_tol) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid))
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };

  const auto scan = [&](double theta0, double step, int count) {
    double best = std::numeric_limits<double>::infinity();
    double best_theta = theta0;
    for (int s = 0; s < count; ++s) {
      const double theta = theta0 + step * double(s);
      const double c = min_c_here(Direction(theta).normal());
      if (c < best) {
        best = c;
        best_theta = theta;
      }
    }
    return std::make_pair(best, best_theta);
  };

  const double coarse_step = kPi / double(angle_steps);
  const auto [coarse_best, coarse_theta] = scan(0.0, coarse_step, angle_steps);
  const auto [fine_best, fine_theta] =
      scan(coarse_theta - coarse_step, 2.0 * coarse_step / double(angle_steps), angle_steps + 1);
  (void)fine_theta;
  return std::min(coarse_best, fine_best);
}

struct VerifyReport {
  double solver_value = 0.0;
  double oracle_value = 0.0;
  double relative_error = 0.0;
  bool degenerate = false;
  bool value_ok = false;       // solver vs oracle agreement
  bool tangency_ok = false;    // >= 3 tangent polygons per line, both sides, from scratch
  bool minimality_ok = false;  // no feasible offset anywhere just below c_m

  bool passed() const { return value_ok && tangency_ok && minimality_ok; }
};

// Re-derives everything the solution claims through the oracle and the
// factor algebra. Degenerate solutions only get the value check.
inline VerifyReport verify_solution(const Configuration& config, const Solution& sol,
                                    int angle_steps) {
  VerifyReport report;
  report.degenerate = sol.degenerate;
  report.solver_value = sol.c_m;
  report.oracle_value = brute_force_c_m(config, angle_steps, 1e-9);

  const double larger = std::max(report.oracle_value, report.solver_value);
  const double gap = std::abs(report.oracle_value - report.solver_value);
  report.relative_error = larger > 0.0 ? gap / larger : 0.0;
  report.value_ok = gap <= std::max(1e-4 * larger, 1e-6);

  if (sol.degenerate || sol.c_m <= 0.0) {
    report.tangency_ok = true;
    report.minimality_ok = true;
    return report;
  }

  const double residual_tol = 1e-6 * std::max(1.0, sol.c_m);
  report.tangency_ok = !sol.lines.empty();
  for (const Line& line : sol.lines) {
    int tangent = 0;
    bool has_pos = false, has_neg = false;
    for (const ConvexPolygon& poly : config.polygons) {
      if (std::abs(correcting_factor(poly, line) - sol.c_m) > residual_tol) continue;
      ++tangent;
      const double d = signed_distance(line, poly.centroid());
      (d > 0.0 ? has_pos : has_neg) = true;
    }
    if (tangent < 3 || !has_pos || !has_neg) report.tangency_ok = false;
  }

  report.minimality_ok = true;
  const double c_below = sol.c_m * (1.0 - 1e-4);
  const double step = kPi / double(angle_steps);
  for (int s = 0; s < angle_steps; ++s) {
    if (feasible_offset_interval(config, c_below, Direction(step * double(s)))) {
      report.minimality_ok = false;
      break;
    }
  }
  return report;
}

}  // namespace transversal
