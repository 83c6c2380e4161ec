#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "transversal/factor.hpp"
#include "transversal/geometry.hpp"

namespace transversal {

struct SolverOptions {
  int grid_size = 4096;           // directions in the initial sweep over [0, pi)
  double angle_tol = 1e-10;       // stop refining a bracket below this width (radians)
  double value_tol = 1e-7;        // near-ties within value_tol*max(1,c_m) count as optimal
  double collinear_tol = 1e-9;    // centroid collinearity threshold, relative to scale
  double certificate_tol = 1e-7;  // relative factor residual for tangency membership
};

enum class Classification { initial_configuration, has_transversal };

inline const char* to_string(Classification c) {
  return c == Classification::initial_configuration ? "initial_configuration"
                                                    : "has_transversal";
}

// Ordered pair attaining the per-direction maximum: `upper` is the polygon
// whose projection interval caps the feasible band from above, `lower` the
// one capping it from below.
struct ActivePair {
  int upper = 0;
  int lower = 0;
};

struct DirectionalOptimum {
  Direction direction{0.0};
  double c_star = 0.0;         // minimal max correcting factor over offsets
  double offset = 0.0;         // midpoint of the feasible offset interval at c_star
  double feasible_width = 0.0; // width of that interval (0 at a tight optimum)
  std::vector<ActivePair> active_pairs;
};

struct OffsetInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct Certificate {
  std::vector<int> tangent_indices;  // 0-based polygon indices
  std::vector<Contact> contacts;
  std::vector<Side> sides;
  std::vector<double> residuals;     // |factor - c_m| / max(1, c_m)
};

struct SolverDiagnostics {
  int grid_size = 0;
  int refinement_iterations = 0;
  double bracket_width = 0.0;  // final bracket width at the winning direction
};

struct Solution {
  double c_m = 0.0;
  std::vector<Line> lines;                // all optimal lines, deduplicated, sorted by theta
  std::vector<Certificate> certificates;  // one per line; empty when degenerate
  bool degenerate = false;                // collinear centroids or fewer than 3 polygons
  Classification classification = Classification::has_transversal;
  SolverDiagnostics diagnostics;
};

namespace detail {

// Projections and support half-widths of every polygon along one normal.
struct DirectionalScan {
  std::vector<double> proj;   // n . centroid
  std::vector<double> w_pos;  // w(n)
  std::vector<double> w_neg;  // w(-n)

  void compute(const Configuration& config, Point n) {
    const std::size_t m = config.polygons.size();
    proj.resize(m);
    w_pos.resize(m);
    w_neg.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const ConvexPolygon& poly = config.polygons[i];
      proj[i] = dot(n, poly.centroid());
      const auto [hi, lo] = support_pair(poly, n);
      w_pos[i] = hi;
      w_neg[i] = lo;
    }
  }

  // Smallest c at which all projection intervals share a point:
  // the largest pairwise ratio (proj_i - proj_j) / (w_neg_i + w_pos_j).
  double min_common_c() const {
    const std::size_t m = proj.size();
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        best = std::max(best, (proj[i] - proj[j]) / (w_neg[i] + w_pos[j]));
      }
    return std::max(best, 0.0);
  }

  OffsetInterval band_at(double c) const {
    OffsetInterval band{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < proj.size(); ++i) {
      band.lo = std::max(band.lo, proj[i] - c * w_neg[i]);
      band.hi = std::min(band.hi, proj[i] + c * w_pos[i]);
    }
    return band;
  }
};

}  // namespace detail

// Offsets b for which the line (direction, b) meets every polygon of the
// configuration scaled by c. Empty when no such line exists at this c.
inline std::optional<OffsetInterval> feasible_offset_interval(const Configuration& config,
                                                              double c, Direction direction) {
  detail::DirectionalScan scan;
  scan.compute(config, direction.normal());
  const OffsetInterval band = scan.band_at(c);
  if (band.lo > band.hi) return std::nullopt;
  return band;
}

// Exact inner minimization at a fixed direction: the smallest c for which a
// line with this normal meets every scaled polygon, with the optimal offset
// and the pairs of polygons that pin it.
inline DirectionalOptimum min_c_for_direction(const Configuration& config, Direction direction) {
  DirectionalOptimum out;
  out.direction = direction;
  detail::DirectionalScan scan;
  scan.compute(config, direction.normal());
  const std::size_t m = scan.proj.size();

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      best = std::max(best, (scan.proj[i] - scan.proj[j]) / (scan.w_neg[i] + scan.w_pos[j]));
    }
  out.c_star = (m > 1) ? std::max(best, 0.0) : 0.0;

  if (m > 1) {
    const double threshold = best - 1e-9 * std::max(std::abs(best), 1e-300);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const double r = (scan.proj[i] - scan.proj[j]) / (scan.w_neg[i] + scan.w_pos[j]);
        if (r >= threshold) out.active_pairs.push_back({int(i), int(j)});
      }
  }

  const OffsetInterval band = scan.band_at(out.c_star);
  out.offset = 0.5 * (band.lo + band.hi);
  out.feasible_width = std::max(band.width(), 0.0);
  return out;
}

namespace detail {

// One derivative-free shrink pass: sample the bracket uniformly, keep the
// best sample, and close in on its grid neighbourhood.
struct BracketRefinement {
  double theta = 0.0;
  double value = 0.0;
  double final_width = 0.0;
  int iterations = 0;
};

inline BracketRefinement refine_bracket(const Configuration& config, double lo, double hi,
                                        double angle_tol) {
  constexpr int kSubdivisions = 24;
  DirectionalScan scan;
  BracketRefinement best;
  best.value = std::numeric_limits<double>::infinity();

  auto value_at = [&](double theta) {
    scan.compute(config, Direction(theta).normal());
    return scan.min_common_c();
  };

  while (hi - lo > angle_tol && best.iterations < 200) {
    ++best.iterations;
    const double step = (hi - lo) / kSubdivisions;
    int arg = 0;
    double arg_value = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= kSubdivisions; ++s) {
      const double t = lo + step * double(s);
      const double v = value_at(t);
      if (v < arg_value) {
        arg_value = v;
        arg = s;
      }
      if (v < best.value) {
        best.value = v;
        best.theta = t;
      }
    }
    const double new_lo = lo + step * double(std::max(arg - 1, 0));
    const double new_hi = lo + step * double(std::min(arg + 1, kSubdivisions));
    lo = new_lo;
    hi = new_hi;
  }
  best.final_width = hi - lo;
  if (!std::isfinite(best.value)) {
    best.theta = 0.5 * (lo + hi);
    best.value = value_at(best.theta);
  }
  return best;
}

inline double wrap_distance(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, kPi - d);
}

}  // namespace detail

// Factors, sides and contacts of every polygon tangent to `line` at the
// optimum value c_m. Throws CertificateInvalid unless at least three
// polygons are tangent with centroids on both sides of the line.
inline Certificate extract_certificate(const Configuration& config, double c_m, const Line& line,
                                       double tol) {
  if (!(c_m > 0.0))
    throw CertificateInvalid("certificate undefined at expansion ratio " + std::to_string(c_m));
  Certificate cert;
  const double denom = std::max(1.0, c_m);
  for (std::size_t i = 0; i < config.polygons.size(); ++i) {
    const ConvexPolygon& poly = config.polygons[i];
    const double residual = std::abs(correcting_factor(poly, line) - c_m) / denom;
    if (residual > tol) continue;
    cert.tangent_indices.push_back(int(i));
    cert.residuals.push_back(residual);
    cert.sides.push_back(side_of(poly, line, 0.0));
    cert.contacts.push_back(tangent_contact(apply_homothety(poly, c_m), line));
  }
  if (cert.tangent_indices.size() < 3)
    throw CertificateInvalid("only " + std::to_string(cert.tangent_indices.size()) +
                             " polygons tangent to the reported optimal line");
  const bool has_pos = std::any_of(cert.sides.begin(), cert.sides.end(),
                                   [](Side s) { return s == Side::positive; });
  const bool has_neg = std::any_of(cert.sides.begin(), cert.sides.end(),
                                   [](Side s) { return s == Side::negative; });
  if (!has_pos || !has_neg)
    throw CertificateInvalid("all tangent polygons lie in one halfplane of the reported line");
  return cert;
}

// Minimal expansion ratio of the configuration, every optimal transversal
// found, and the tangency certificate for each. Two-level scheme: the exact
// pairwise formula solves each direction in closed form; a uniform grid over
// [0, pi) plus bracket refinement minimizes over directions.
inline Solution solve_minimal_expansion(const Configuration& config,
                                        const SolverOptions& opts = {}) {
  if (config.polygons.empty())
    throw ValidationError(ValidationIssue::empty_configuration,
                          "cannot solve an empty configuration");

  Solution sol;
  sol.diagnostics.grid_size = opts.grid_size;

  const double scale = coordinate_scale(config);
  std::vector<Point> centroids;
  centroids.reserve(config.polygons.size());
  for (const ConvexPolygon& p : config.polygons) centroids.push_back(p.centroid());
  const Line axis = least_squares_line(centroids);
  double deviation = 0.0;
  for (const Point& s : centroids) deviation = std::max(deviation, std::abs(signed_distance(axis, s)));

  if (config.polygons.size() < 3 || deviation <= opts.collinear_tol * scale) {
    sol.c_m = 0.0;
    sol.degenerate = true;
    sol.lines = {axis};
    sol.classification = Classification::has_transversal;
    return sol;
  }

  const int grid = std::max(opts.grid_size, 8);
  const double step = kPi / double(grid);
  std::vector<double> value(static_cast<std::size_t>(grid), 0.0);
  detail::DirectionalScan scan;
  double grid_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    scan.compute(config, Direction(double(k) * step).normal());
    value[std::size_t(k)] = scan.min_common_c();
    grid_min = std::min(grid_min, value[std::size_t(k)]);
  }

  // Candidate grid points: local minima (the function is pi-periodic, so the
  // neighbourhood wraps) plus anything within a few percent of the best.
  std::vector<char> flagged(std::size_t(grid), 0);
  for (int k = 0; k < grid; ++k) {
    const double v = value[std::size_t(k)];
    const double prev = value[std::size_t((k + grid - 1) % grid)];
    const double next = value[std::size_t((k + 1) % grid)];
    if ((v <= prev && v <= next) || v <= grid_min * 1.05 + 1e-300) flagged[std::size_t(k)] = 1;
  }

  // Group flagged points into maximal cyclic runs; each run becomes one
  // refinement bracket padded by a grid step on both sides.
  std::vector<std::pair<int, int>> runs;
  {
    int first_unflagged = -1;
    for (int k = 0; k < grid; ++k)
      if (!flagged[std::size_t(k)]) {
        first_unflagged = k;
        break;
      }
    if (first_unflagged < 0) {
      runs.emplace_back(0, grid - 1);
    } else {
      // Walk the full circle starting just past an unflagged point, so every
      // run (including ones wrapping the seam) is closed exactly once.
      int run_start = -1;
      for (int seen = 1; seen <= grid; ++seen) {
        const int idx = (first_unflagged + seen) % grid;
        if (flagged[std::size_t(idx)]) {
          if (run_start < 0) run_start = idx;
        } else if (run_start >= 0) {
          runs.emplace_back(run_start, (idx + grid - 1) % grid);
          run_start = -1;
        }
      }
    }
  }

  struct Candidate {
    double theta = 0.0;  // canonical, in [0, pi)
    DirectionalOptimum optimum;
    double final_width = 0.0;
  };
  std::vector<Candidate> candidates;
  for (const auto& [first, last] : runs) {
    const int span = (last - first + grid) % grid;
    const double lo = (double(first) - 1.0) * step;
    const double hi = (double(first) + double(span) + 1.0) * step;
    const auto refined = detail::refine_bracket(config, lo, hi, opts.angle_tol);
    sol.diagnostics.refinement_iterations += refined.iterations;
    Candidate cand;
    cand.theta = Direction(refined.theta).theta();
    cand.optimum = min_c_for_direction(config, Direction(cand.theta));
    cand.final_width = refined.final_width;
    candidates.push_back(std::move(cand));
  }

  // Deterministic reduction: smallest value wins, ties broken by smaller
  // theta, then smaller offset.
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto& a = candidates[i];
    const auto& b = candidates[best_idx];
    const auto key = [](const Candidate& c) {
      return std::make_tuple(c.optimum.c_star, c.theta, c.optimum.offset);
    };
    if (key(a) < key(b)) best_idx = i;
  }
  sol.c_m = candidates[best_idx].optimum.c_star;
  sol.diagnostics.bracket_width = candidates[best_idx].final_width;

  // Keep all near-optimal candidates and merge the ones that converged to
  // the same direction (wrap-aware).
  const double keep_tol = opts.value_tol * std::max(1.0, sol.c_m);
  std::vector<Candidate> kept;
  for (const auto& c : candidates)
    if (c.optimum.c_star - sol.c_m <= keep_tol) kept.push_back(c);
  std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_tuple(a.theta, a.optimum.offset) < std::make_tuple(b.theta, b.optimum.offset);
  });
  const double merge_tol = std::max(64.0 * opts.angle_tol, 1e-12);
  std::vector<Candidate> merged;
  for (const auto& c : kept) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (detail::wrap_distance(m.theta, c.theta) <= merge_tol) {
        if (std::make_tuple(c.optimum.c_star, c.theta) <
            std::make_tuple(m.optimum.c_star, m.theta))
          m = c;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(c);
  }

  for (const auto& c : merged)
    sol.lines.emplace_back(Direction(c.theta), c.optimum.offset);
  std::sort(sol.lines.begin(), sol.lines.end(), [](const Line& a, const Line& b) {
    return std::make_tuple(a.theta(), a.offset()) < std::make_tuple(b.theta(), b.offset());
  });

  for (const Line& line : sol.lines)
    sol.certificates.push_back(extract_certificate(config, sol.c_m, line, opts.certificate_tol));

  sol.classification = sol.c_m > 1.0 ? Classification::initial_configuration
                                     : Classification::has_transversal;
  return sol;
}

// True when the unscaled system already admits a transversal.
inline bool transversal_exists(const Configuration& config, const SolverOptions& opts = {}) {
  return solve_minimal_expansion(config, opts).c_m <= 1.0 + opts.value_tol;
}

}  // namespace transversal
