#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"
#include "transversal/io.hpp"

using namespace transversal;
using testutil::run_cli;
using testutil::slurp;
using doctest::Approx;

namespace {

const std::string kData = TRANSVERSAL_DATA_DIR;
const std::string kScratch = "cli_scratch";

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

double parse_stdout_value(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + " = ");
  REQUIRE(pos != std::string::npos);
  return std::stod(out.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("solve prints the ratio and writes a verifiable result") {
  std::filesystem::create_directories(kScratch);
  const std::string result = kScratch + "/three_squares_result.json";
  const auto solve = run_cli("solve " + kData + "/three_squares.json --out " + result, kScratch);
  CHECK(solve.exit_code == 0);
  CHECK(parse_stdout_value(solve.out, "c_m") == Approx(1.2).epsilon(1e-9));
  CHECK(solve.out.find("line 1:") != std::string::npos);
  CHECK(solve.out.find("line 2:") != std::string::npos);

  const auto verify = run_cli(
      "verify " + kData + "/three_squares.json " + result + " --angle-steps 20000", kScratch);
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("\"value_ok\": true") != std::string::npos);
}

TEST_CASE("repeated solves write byte-identical result files") {
  std::filesystem::create_directories(kScratch);
  const std::string a = kScratch + "/det_solve_a.json";
  const std::string b = kScratch + "/det_solve_b.json";
  REQUIRE(run_cli("solve " + kData + "/three_squares.json --out " + a, kScratch).exit_code == 0);
  REQUIRE(run_cli("solve " + kData + "/three_squares.json --out " + b, kScratch).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("verify rejects a tampered ratio with exit 3") {
  std::filesystem::create_directories(kScratch);
  const std::string result = kScratch + "/tamper_result.json";
  REQUIRE(run_cli("solve " + kData + "/three_squares.json --out " + result, kScratch).exit_code ==
          0);

  ResultFile rf = parse_result_file(result);
  rf.solution.c_m *= 0.99;
  write_text(result, write_result_text(rf.solution, rf.instance_digest));
  const auto verify = run_cli(
      "verify " + kData + "/three_squares.json " + result + " --angle-steps 20000", kScratch);
  CHECK(verify.exit_code == 3);
}

TEST_CASE("verify rejects a result for a different instance") {
  std::filesystem::create_directories(kScratch);
  const std::string result = kScratch + "/mismatch_result.json";
  REQUIRE(run_cli("solve " + kData + "/three_squares.json --out " + result, kScratch).exit_code ==
          0);
  const auto verify = run_cli(
      "verify " + kData + "/collinear_squares.json " + result + " --angle-steps 5000", kScratch);
  CHECK(verify.exit_code == 3);
}

TEST_CASE("oracle subcommand approximates the ratio") {
  const auto oracle = run_cli(
      "oracle " + kData + "/three_squares.json --angle-steps 20000 --c-tol 1e-7", kScratch);
  CHECK(oracle.exit_code == 0);
  CHECK(std::abs(parse_stdout_value(oracle.out, "c_m_oracle") - 1.2) <= 1e-4);
}

TEST_CASE("gen is byte-deterministic per seed") {
  const std::string a = kScratch + "/gen_a.json";
  const std::string b = kScratch + "/gen_b.json";
  CHECK(run_cli("gen --seed 7 --n 5 --out " + a, kScratch).exit_code == 0);
  CHECK(run_cli("gen --seed 7 --n 5 --out " + b, kScratch).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run_cli("gen --seed 8 --n 5 --out " + b, kScratch).exit_code == 0);
  CHECK(slurp(a) != slurp(b));

  // generated instances parse and solve
  const auto solve = run_cli("solve " + a, kScratch);
  CHECK(solve.exit_code == 0);
}

TEST_CASE("profile dumps the V shape") {
  const auto profile = run_cli(
      "profile " + kData + "/three_squares.json --polygon 1 --theta 0", kScratch);
  REQUIRE(profile.exit_code == 0);
  const auto j = nlohmann::json::parse(profile.out);
  CHECK(j["polygon"] == 1);
  CHECK(j["apex_offset"].get<double>() == 0.0);
  CHECK(j["slope_pos"].get<double>() == 1.0);
  CHECK(j["slope_neg"].get<double>() == 1.0);
  REQUIRE(j["samples"].is_array());
  for (const auto& sample : j["samples"]) {
    const double offset = sample[0].get<double>();
    const double factor = sample[1].get<double>();
    CHECK(factor == Approx(std::abs(offset)).epsilon(1e-12));
  }
}

TEST_CASE("render emits the documented element counts") {
  std::filesystem::create_directories(kScratch);
  const std::string result = kScratch + "/render_result.json";
  const std::string svg_solved = kScratch + "/solved.svg";
  const std::string svg_plain = kScratch + "/plain.svg";
  REQUIRE(run_cli("solve " + kData + "/three_squares.json --out " + result + " --svg " +
                      svg_solved,
                  kScratch)
              .exit_code == 0);
  REQUIRE(run_cli("render " + kData + "/three_squares.json --svg " + svg_plain, kScratch)
              .exit_code == 0);

  const std::string solved = slurp(svg_solved);
  const std::string plain = slurp(svg_plain);
  const auto count = [](const std::string& text, const std::string& needle) {
    int c = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
      ++c;
    return c;
  };
  CHECK(count(solved, "class=\"original\"") == 3);
  CHECK(count(solved, "class=\"scaled\"") == 3);
  CHECK(count(solved, "class=\"transversal\"") == 2);
  CHECK(count(plain, "class=\"original\"") == 3);
  CHECK(count(plain, "class=\"scaled\"") == 0);
  CHECK(count(plain, "class=\"transversal\"") == 0);

  // degenerate instance still draws the centroid line
  const std::string svg_degen = kScratch + "/degenerate.svg";
  const std::string degen_result = kScratch + "/degenerate_result.json";
  REQUIRE(run_cli("solve " + kData + "/collinear_squares.json --out " + degen_result, kScratch)
              .exit_code == 0);
  REQUIRE(run_cli("render " + kData + "/collinear_squares.json " + degen_result + " --svg " +
                      svg_degen,
                  kScratch)
              .exit_code == 0);
  CHECK(count(slurp(svg_degen), "class=\"transversal\"") == 1);

  // rendering twice is byte-identical
  const std::string svg_again = kScratch + "/solved_again.svg";
  REQUIRE(run_cli("render " + kData + "/three_squares.json " + result + " --svg " + svg_again,
                  kScratch)
              .exit_code == 0);
  CHECK(slurp(svg_again) == solved);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("bogus-subcommand", kScratch).exit_code == 1);
  CHECK(run_cli("solve", kScratch).exit_code == 1);
  CHECK(run_cli("solve nonexistent_file.json", kScratch).exit_code == 2);

  const std::string bad = kScratch + "/bad.json";
  std::filesystem::create_directories(kScratch);
  write_text(bad, "{ not json");
  CHECK(run_cli("solve " + bad, kScratch).exit_code == 2);

  write_text(bad, R"({"version": 1, "polygons": [[[0,0],[4,0],[1,1],[0,4]]]})");
  CHECK(run_cli("solve " + bad, kScratch).exit_code == 2);

  CHECK(run_cli("--help", kScratch).exit_code == 0);
  CHECK(run_cli("profile " + kData + "/three_squares.json --polygon 9 --theta 0", kScratch)
            .exit_code == 2);
}
