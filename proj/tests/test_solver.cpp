#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "transversal/io.hpp"
#include "transversal/oracle.hpp"
#include "transversal/solver.hpp"

using namespace transversal;
using doctest::Approx;

namespace {

bool has_pair(const DirectionalOptimum& opt, int upper, int lower) {
  return std::any_of(opt.active_pairs.begin(), opt.active_pairs.end(),
                     [&](ActivePair p) { return p.upper == upper && p.lower == lower; });
}

}  // namespace

TEST_CASE("per-direction optimum for two squares") {
  const Configuration config{{testutil::square({0, 0}, 1.0), testutil::square({4, 0}, 1.0)}};

  const auto horizontal_normal = min_c_for_direction(config, Direction(0.0));
  CHECK(horizontal_normal.c_star == 2.0);
  CHECK(horizontal_normal.offset == 2.0);
  CHECK(horizontal_normal.feasible_width == 0.0);
  CHECK(has_pair(horizontal_normal, 1, 0));
  CHECK(testutil::bisect_min_c(config, Direction(0.0)) == Approx(2.0));

  const auto vertical_normal = min_c_for_direction(config, Direction(kPi / 2.0));
  CHECK(vertical_normal.c_star <= 1e-12);
  CHECK(std::abs(vertical_normal.offset) <= 1e-12);
}

TEST_CASE("per-direction optimum for three squares") {
  const Configuration config = testutil::three_squares();
  const auto opt = min_c_for_direction(config, Direction(kPi / 2.0));
  CHECK(opt.c_star == Approx(1.5));
  CHECK(opt.offset == Approx(1.5));
  CHECK(has_pair(opt, 2, 0));
  CHECK(has_pair(opt, 2, 1));
  CHECK(testutil::bisect_min_c(config, Direction(kPi / 2.0)) == Approx(1.5));
}

TEST_CASE("feasible offset intervals for three squares at the vertical normal") {
  const Configuration config = testutil::three_squares();
  const Direction up(kPi / 2.0);

  const auto touching = feasible_offset_interval(config, 1.5, up);
  REQUIRE(touching.has_value());
  CHECK(touching->lo == Approx(1.5));
  CHECK(touching->hi == Approx(1.5));
  CHECK(touching->width() == Approx(0.0));

  const auto wide = feasible_offset_interval(config, 2.0, up);
  REQUIRE(wide.has_value());
  CHECK(wide->lo == Approx(1.0));
  CHECK(wide->hi == Approx(2.0));

  CHECK_FALSE(feasible_offset_interval(config, 1.0, up).has_value());
}

TEST_CASE("pairwise formula agrees with the dense offset scan") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (int trial = 0; trial < 500; ++trial) {
    InstanceRecipe recipe;
    recipe.seed = 9000 + std::uint64_t(trial);
    recipe.n_polygons = 2 + int(trial % 5);
    const Configuration config = random_instance(recipe);
    const Direction dir(angle(rng));
    const double via_formula = min_c_for_direction(config, dir).c_star;
    const double via_scan = testutil::offset_scan_min(config, dir);
    CHECK(std::abs(via_formula - via_scan) <= 1e-6 * std::max(via_scan, 1e-12));
  }
}

TEST_CASE("three squares solve to 6/5 with two optimal lines") {
  const Configuration config = testutil::three_squares();
  const Solution sol = solve_minimal_expansion(config);

  CHECK(sol.c_m == Approx(1.2).epsilon(1e-9));
  CHECK_FALSE(sol.degenerate);
  CHECK(sol.classification == Classification::initial_configuration);
  REQUIRE(sol.lines.size() == 2);

  const Line rising = Line::from_implicit(3, 2, 6);
  const Line falling = Line::from_implicit(3, -2, 6);
  CHECK(sol.lines[0].theta() == Approx(rising.theta()).epsilon(1e-9));
  CHECK(sol.lines[0].offset() == Approx(rising.offset()).epsilon(1e-9));
  CHECK(sol.lines[1].theta() == Approx(falling.theta()).epsilon(1e-9));
  CHECK(sol.lines[1].offset() == Approx(falling.offset()).epsilon(1e-9));

  REQUIRE(sol.certificates.size() == 2);
  for (const Certificate& cert : sol.certificates) {
    CHECK(cert.tangent_indices == std::vector<int>{0, 1, 2});
    for (Contact c : cert.contacts) CHECK(c == Contact::vertex);
    for (double r : cert.residuals) CHECK(r <= 1e-9);
  }
  // canonical normals pin the halfplane labels
  CHECK(sol.certificates[0].sides ==
        std::vector<Side>{Side::negative, Side::positive, Side::positive});
  CHECK(sol.certificates[1].sides ==
        std::vector<Side>{Side::positive, Side::negative, Side::positive});
}

TEST_CASE("degenerate configurations") {
  SUBCASE("two squares always admit the centroid line") {
    const Configuration config{{testutil::square({0.3, -1.0}, 0.5), testutil::square({2, 5}, 1.0)}};
    const Solution sol = solve_minimal_expansion(config);
    CHECK(sol.c_m == 0.0);
    CHECK(sol.degenerate);
    CHECK(sol.classification == Classification::has_transversal);
    REQUIRE(sol.lines.size() == 1);
    CHECK(sol.certificates.empty());
    const double scale = coordinate_scale(config);
    for (const ConvexPolygon& poly : config.polygons)
      CHECK(std::abs(signed_distance(sol.lines[0], poly.centroid())) <= 1e-9 * scale);
  }
  SUBCASE("collinear centroids") {
    const Configuration config{{testutil::square({0, 0}, 1.0), testutil::square({4, 0}, 1.0),
                                testutil::square({2, 0}, 1.0)}};
    const Solution sol = solve_minimal_expansion(config);
    CHECK(sol.c_m == 0.0);
    CHECK(sol.degenerate);
    REQUIRE(sol.lines.size() == 1);
    CHECK(sol.lines[0].theta() == Approx(kPi / 2.0));
    CHECK(std::abs(sol.lines[0].offset()) <= 1e-12);
  }
  SUBCASE("single polygon") {
    const Configuration config{{testutil::square({7, 7}, 2.0)}};
    const Solution sol = solve_minimal_expansion(config);
    CHECK(sol.c_m == 0.0);
    CHECK(sol.degenerate);
    CHECK(std::abs(signed_distance(sol.lines[0], {7, 7})) <= 1e-9);
  }
  SUBCASE("empty configuration throws") {
    CHECK_THROWS_AS(solve_minimal_expansion(Configuration{}), ValidationError);
  }
}

TEST_CASE("transversal existence") {
  CHECK_FALSE(transversal_exists(testutil::three_squares()));
  const Configuration near_line{{testutil::square({0, 0}, 1.0), testutil::square({4, 0}, 1.0),
                                 testutil::square({2, 0.1}, 1.0)}};
  CHECK(transversal_exists(near_line));
  CHECK(transversal_exists(Configuration{{testutil::square({3, 3}, 1.0)}}));
}

TEST_CASE("re-solving the scaled configuration lands at 1") {
  const Configuration config = testutil::three_squares();
  const Solution sol = solve_minimal_expansion(config);
  const Solution again = solve_minimal_expansion(scale_configuration(config, sol.c_m));
  CHECK(again.c_m == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("deterministic output") {
  InstanceRecipe recipe;
  recipe.seed = 99;
  recipe.n_polygons = 6;
  const Configuration config = random_instance(recipe);
  const Solution a = solve_minimal_expansion(config);
  const Solution b = solve_minimal_expansion(config);
  CHECK(write_result_text(a, "x") == write_result_text(b, "x"));
}

TEST_CASE("rigid motions shift the optimal direction and keep the value") {
  const Configuration config = testutil::three_squares();
  const Solution base = solve_minimal_expansion(config);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double phi = angle(rng);
    const Configuration moved =
        testutil::rotate_translate(config, phi, {shift(rng), shift(rng)});
    const Solution sol = solve_minimal_expansion(moved);
    CHECK(std::abs(sol.c_m - base.c_m) <= 1e-9 * base.c_m);
    REQUIRE(sol.lines.size() == base.lines.size());
    for (const Line& moved_line : sol.lines) {
      double best = kPi;
      for (const Line& base_line : base.lines) {
        double d = std::abs(Direction(base_line.theta() + phi).theta() - moved_line.theta());
        d = std::min(d, kPi - d);
        best = std::min(best, d);
      }
      CHECK(best <= 1e-6);
    }
  }
}

TEST_CASE("adding a polygon never lowers the ratio") {
  const Configuration base = testutil::three_squares();
  const double c_base = solve_minimal_expansion(base).c_m;
  for (int trial = 0; trial < 10; ++trial) {
    Configuration bigger = base;
    bigger.polygons.push_back(
        testutil::random_polygon(7000 + std::uint64_t(trial),
                                 {double(trial % 5), double(trial % 3) - 4.0}));
    const double c_bigger = solve_minimal_expansion(bigger).c_m;
    CHECK(c_bigger >= c_base - 1e-9 * std::max(1.0, c_base));
  }
}

TEST_CASE("certificate extraction rejects broken optima") {
  const Configuration config = testutil::three_squares();
  const Solution sol = solve_minimal_expansion(config);
  // wrong value: nothing is tangent
  CHECK_THROWS_AS(extract_certificate(config, sol.c_m * 1.1, sol.lines[0], 1e-7),
                  CertificateInvalid);
  // wrong line: certificate cannot be formed there
  CHECK_THROWS_AS(extract_certificate(config, sol.c_m, Line(Direction(0.1), 0.0), 1e-7),
                  CertificateInvalid);
}
