#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "transversal/transversal.hpp"

namespace {

using namespace transversal;

// Exit codes: 0 success, 1 usage error, 2 validation/parse error,
// 3 verification failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitVerifyFailed = 3;

struct SolveArgs {
  std::string instance_path;
  std::string out_path;
  std::string svg_path;
  SolverOptions opts;
};

int run_solve(const SolveArgs& args) {
  const Configuration config = parse_instance_file(args.instance_path);
  const Solution sol = solve_minimal_expansion(config, args.opts);
  std::printf("c_m = %s\n", format_number(sol.c_m).c_str());
  std::printf("classification = %s\n", to_string(sol.classification));
  std::printf("degenerate = %s\n", sol.degenerate ? "true" : "false");
  for (std::size_t i = 0; i < sol.lines.size(); ++i) {
    std::printf("line %zu: theta = %s offset = %s\n", i + 1,
                format_number(sol.lines[i].theta()).c_str(),
                format_number(sol.lines[i].offset()).c_str());
  }
  if (!args.out_path.empty())
    write_result_file(args.out_path, sol, instance_digest(config));
  if (!args.svg_path.empty()) render_svg(config, &sol, args.svg_path);
  return kExitOk;
}

int run_oracle(const std::string& instance_path, int angle_steps, double c_tol) {
  const Configuration config = parse_instance_file(instance_path);
  const double value = brute_force_c_m(config, angle_steps, c_tol);
  std::printf("c_m_oracle = %s\n", format_number(value).c_str());
  return kExitOk;
}

int run_verify(const std::string& instance_path, const std::string& result_path,
               int angle_steps) {
  const Configuration config = parse_instance_file(instance_path);
  const ResultFile rf = parse_result_file(result_path);
  const std::string digest = instance_digest(config);
  const bool digest_ok = digest == rf.instance_digest;
  VerifyReport report;
  if (digest_ok) report = verify_solution(config, rf.solution, angle_steps);
  std::printf("{\"digest_ok\": %s, \"value_ok\": %s, \"tangency_ok\": %s, "
              "\"minimality_ok\": %s, \"solver_value\": %s, \"oracle_value\": %s, "
              "\"relative_error\": %s}\n",
              digest_ok ? "true" : "false", report.value_ok ? "true" : "false",
              report.tangency_ok ? "true" : "false", report.minimality_ok ? "true" : "false",
              format_number(report.solver_value).c_str(),
              format_number(report.oracle_value).c_str(),
              format_number(report.relative_error).c_str());
  if (!digest_ok) {
    std::fprintf(stderr, "verify: result file does not match this instance (digest %s vs %s)\n",
                 rf.instance_digest.c_str(), digest.c_str());
    return kExitVerifyFailed;
  }
  if (!report.passed()) {
    std::fprintf(stderr, "verify: solution failed re-validation\n");
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_gen(const InstanceRecipe& recipe, const std::string& out_path) {
  const Configuration config = random_instance(recipe);
  const std::string text = write_instance_text(config);
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    detail::write_file(out_path, text);
  return kExitOk;
}

int run_profile(const std::string& instance_path, int polygon_index, double theta) {
  const Configuration config = parse_instance_file(instance_path);
  if (polygon_index < 1 || std::size_t(polygon_index) > config.polygons.size())
    throw ValidationError(ValidationIssue::empty_configuration,
                          "polygon index " + std::to_string(polygon_index) + " out of range 1.." +
                              std::to_string(config.polygons.size()));
  const ConvexPolygon& poly = config.polygons[std::size_t(polygon_index) - 1];
  const VShapeProfile profile = factor_profile(poly, Direction(theta));

  const double w_pos = 1.0 / profile.slope_pos;
  const double w_neg = 1.0 / profile.slope_neg;
  std::string out = "{\n";
  out += "  \"polygon\": " + std::to_string(polygon_index) + ",\n";
  out += "  \"theta\": " + format_number(profile.direction.theta()) + ",\n";
  out += "  \"apex_offset\": " + format_number(profile.apex_offset) + ",\n";
  out += "  \"slope_pos\": " + format_number(profile.slope_pos) + ",\n";
  out += "  \"slope_neg\": " + format_number(profile.slope_neg) + ",\n";
  out += "  \"samples\": [\n";
  constexpr int kSamples = 41;   // spans factor values 0..2 on each side
  constexpr double kSpan = 2.0;
  const double lo = profile.apex_offset - kSpan * w_neg;
  const double hi = profile.apex_offset + kSpan * w_pos;
  for (int s = 0; s < kSamples; ++s) {
    const double b = lo + (hi - lo) * double(s) / double(kSamples - 1);
    const double c = correcting_factor(poly, Line(profile.direction, b));
    out += "    [" + format_number(b) + ", " + format_number(c) + "]";
    if (s + 1 < kSamples) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  std::fputs(out.c_str(), stdout);
  return kExitOk;
}

int run_render(const std::string& instance_path, const std::string& result_path,
               const std::string& svg_path) {
  const Configuration config = parse_instance_file(instance_path);
  if (result_path.empty()) {
    render_svg(config, nullptr, svg_path);
  } else {
    const ResultFile rf = parse_result_file(result_path);
    render_svg(config, &rf.solution, svg_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal centroid-scaling expansion of planar convex polygons "
               "until a common stabbing line exists"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "compute the minimal expansion ratio and lines");
  solve->add_option("instance", solve_args.instance_path, "instance file")->required();
  solve->add_option("--out", solve_args.out_path, "write the result file here");
  solve->add_option("--svg", solve_args.svg_path, "render the solved configuration here");
  solve->add_option("--grid", solve_args.opts.grid_size, "direction grid size");
  solve->add_option("--angle-tol", solve_args.opts.angle_tol, "bracket refinement width");
  solve->add_option("--value-tol", solve_args.opts.value_tol, "near-tie tolerance");
  solve->add_option("--collinear-tol", solve_args.opts.collinear_tol,
                    "centroid collinearity tolerance (relative to scale)");
  solve->add_option("--certificate-tol", solve_args.opts.certificate_tol,
                    "tangency residual tolerance");

  std::string oracle_instance;
  int oracle_steps = 100000;
  double oracle_c_tol = 1e-7;
  auto* oracle = app.add_subcommand("oracle", "brute-force estimate of the expansion ratio");
  oracle->add_option("instance", oracle_instance, "instance file")->required();
  oracle->add_option("--angle-steps", oracle_steps, "direction grid size");
  oracle->add_option("--c-tol", oracle_c_tol, "bisection tolerance on the ratio");

  std::string verify_instance, verify_result;
  int verify_steps = 100000;
  auto* verify = app.add_subcommand("verify", "re-validate a result file against its instance");
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("result", verify_result, "result file")->required();
  verify->add_option("--angle-steps", verify_steps, "oracle direction grid size");

  InstanceRecipe recipe;
  std::string gen_out;
  std::vector<double> gen_box;
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  gen->add_option("--seed", recipe.seed, "random seed")->required();
  gen->add_option("--n", recipe.n_polygons, "number of polygons")->required();
  gen->add_option("--min-vertices", recipe.min_vertices, "fewest points per polygon draw");
  gen->add_option("--max-vertices", recipe.max_vertices, "most points per polygon draw");
  gen->add_option("--min-radius", recipe.min_radius, "smallest polygon disc radius");
  gen->add_option("--max-radius", recipe.max_radius, "largest polygon disc radius");
  gen->add_option("--box", gen_box, "centroid box as x0 y0 x1 y1")->expected(4);
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  std::string profile_instance;
  int profile_polygon = 1;
  double profile_theta = 0.0;
  auto* profile = app.add_subcommand("profile", "dump the V-shaped factor profile of one polygon");
  profile->add_option("instance", profile_instance, "instance file")->required();
  profile->add_option("--polygon", profile_polygon, "1-based polygon index")->required();
  profile->add_option("--theta", profile_theta, "normal angle in radians")->required();

  std::string render_instance, render_result, render_svg_path;
  auto* render = app.add_subcommand("render", "draw an instance (and optional result) as SVG");
  render->add_option("instance", render_instance, "instance file")->required();
  render->add_option("result", render_result, "result file (optional)");
  render->add_option("--svg", render_svg_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*oracle) return run_oracle(oracle_instance, oracle_steps, oracle_c_tol);
    if (*verify) return run_verify(verify_instance, verify_result, verify_steps);
    if (*gen) {
      if (gen_box.size() == 4) {
        recipe.box_lo = {gen_box[0], gen_box[1]};
        recipe.box_hi = {gen_box[2], gen_box[3]};
      }
      return run_gen(recipe, gen_out);
    }
    if (*profile) return run_profile(profile_instance, profile_polygon, profile_theta);
    if (*render) return run_render(render_instance, render_result, render_svg_path);
  } catch (const ParseError& e) {
    if (e.line() > 0)
      std::fprintf(stderr, "error at line %d column %d: %s\n", e.line(), e.column(), e.what());
    else
      std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  } catch (const CertificateInvalid& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return kExitInvalidInput;
  }
  return kExitUsage;
}
