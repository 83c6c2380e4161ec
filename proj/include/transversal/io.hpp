#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "transversal/errors.hpp"
#include "transversal/geometry.hpp"
#include "transversal/solver.hpp"

namespace transversal {

// 17 significant digits round-trip any finite double exactly, so files
// written this way are bit-stable under parse/re-write cycles.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string(what) + ": " + e.what(), line, col);
  }
}

inline double number_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number())
    throw ParseError(std::string("missing or non-numeric field '") + name + "'");
  return j[name].get<double>();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance files: {"version": 1, "polygons": [[[x, y], ...], ...]}
// Polygon indices are 1-based in file order everywhere they appear.
// ---------------------------------------------------------------------------

inline Configuration parse_instance_text(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text, "instance");
  if (!j.is_object()) throw ParseError("instance: top level must be an object");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != 1)
    throw ParseError("instance: expected \"version\": 1");
  if (!j.contains("polygons") || !j["polygons"].is_array() || j["polygons"].empty())
    throw ParseError("instance: \"polygons\" must be a non-empty array");

  Configuration config;
  int index = 0;
  for (const auto& jp : j["polygons"]) {
    ++index;
    if (!jp.is_array())
      throw ParseError("instance: polygon " + std::to_string(index) + " must be an array");
    std::vector<Point> vertices;
    vertices.reserve(jp.size());
    for (const auto& jv : jp) {
      if (!jv.is_array() || jv.size() != 2 || !jv[0].is_number() || !jv[1].is_number())
        throw ParseError("instance: polygon " + std::to_string(index) +
                         " vertices must be [x, y] number pairs");
      vertices.push_back({jv[0].get<double>(), jv[1].get<double>()});
    }
    try {
      config.polygons.push_back(validate_polygon(std::move(vertices)));
    } catch (const ValidationError& e) {
      throw ValidationError(e.issue(), "polygon " + std::to_string(index) + ": " + e.what(),
                            index);
    }
  }
  return config;
}

inline Configuration parse_instance_file(const std::string& path) {
  return parse_instance_text(detail::read_file(path));
}

inline std::string write_instance_text(const Configuration& config) {
  std::string out = "{\n  \"version\": 1,\n  \"polygons\": [\n";
  for (std::size_t p = 0; p < config.polygons.size(); ++p) {
    out += "    [";
    const auto& vs = config.polygons[p].vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      out += "[" + format_number(vs[i].x) + ", " + format_number(vs[i].y) + "]";
      if (i + 1 < vs.size()) out += ", ";
    }
    out += "]";
    if (p + 1 < config.polygons.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline void write_instance_file(const std::string& path, const Configuration& config) {
  detail::write_file(path, write_instance_text(config));
}

// FNV-1a over the canonical serialization, so the digest identifies the
// geometry rather than the file formatting.
inline std::string instance_digest(const Configuration& config) {
  const std::string text = write_instance_text(config);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Result files. The canonical (theta, offset) pair is authoritative; the
// implicit coefficients [a, b, c] of a*x + b*y = c are carried for reading.
// ---------------------------------------------------------------------------

struct ResultFile {
  Solution solution;
  std::string instance_digest;
};

inline std::string write_result_text(const Solution& sol, const std::string& digest) {
  std::string out = "{\n";
  out += "  \"c_m\": " + format_number(sol.c_m) + ",\n";
  out += "  \"classification\": \"" + std::string(to_string(sol.classification)) + "\",\n";
  out += std::string("  \"degenerate\": ") + (sol.degenerate ? "true" : "false") + ",\n";

  out += "  \"lines\": [\n";
  for (std::size_t i = 0; i < sol.lines.size(); ++i) {
    const Line& line = sol.lines[i];
    const Point n = line.normal();
    out += "    {\"theta\": " + format_number(line.theta()) +
           ", \"offset\": " + format_number(line.offset()) + ", \"implicit\": [" +
           format_number(n.x) + ", " + format_number(n.y) + ", " +
           format_number(line.offset()) + "]}";
    if (i + 1 < sol.lines.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";

  out += "  \"certificates\": [\n";
  for (std::size_t i = 0; i < sol.certificates.size(); ++i) {
    const Certificate& cert = sol.certificates[i];
    out += "    {\"tangent_indices\": [";
    for (std::size_t k = 0; k < cert.tangent_indices.size(); ++k) {
      out += std::to_string(cert.tangent_indices[k] + 1);
      if (k + 1 < cert.tangent_indices.size()) out += ", ";
    }
    out += "], \"contacts\": [";
    for (std::size_t k = 0; k < cert.contacts.size(); ++k) {
      out += std::string("\"") + to_string(cert.contacts[k]) + "\"";
      if (k + 1 < cert.contacts.size()) out += ", ";
    }
    out += "], \"sides\": [";
    for (std::size_t k = 0; k < cert.sides.size(); ++k) {
      out += std::to_string(static_cast<int>(cert.sides[k]));
      if (k + 1 < cert.sides.size()) out += ", ";
    }
    out += "], \"residuals\": [";
    for (std::size_t k = 0; k < cert.residuals.size(); ++k) {
      out += format_number(cert.residuals[k]);
      if (k + 1 < cert.residuals.size()) out += ", ";
    }
    out += "]}";
    if (i + 1 < sol.certificates.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";

  out += "  \"diagnostics\": {\"grid_size\": " + std::to_string(sol.diagnostics.grid_size) +
         ", \"refinement_iterations\": " + std::to_string(sol.diagnostics.refinement_iterations) +
         ", \"bracket_width\": " + format_number(sol.diagnostics.bracket_width) + "},\n";
  out += "  \"instance_digest\": \"" + digest + "\"\n";
  out += "}\n";
  return out;
}

inline void write_result_file(const std::string& path, const Solution& sol,
                              const std::string& digest) {
  detail::write_file(path, write_result_text(sol, digest));
}

inline ResultFile parse_result_text(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text, "result");
  if (!j.is_object()) throw ParseError("result: top level must be an object");

  ResultFile rf;
  Solution& sol = rf.solution;
  sol.c_m = detail::number_field(j, "c_m");

  if (!j.contains("classification") || !j["classification"].is_string())
    throw ParseError("result: missing \"classification\"");
  const std::string cls = j["classification"].get<std::string>();
  if (cls == "initial_configuration")
    sol.classification = Classification::initial_configuration;
  else if (cls == "has_transversal")
    sol.classification = Classification::has_transversal;
  else
    throw ParseError("result: unknown classification '" + cls + "'");

  if (!j.contains("degenerate") || !j["degenerate"].is_boolean())
    throw ParseError("result: missing \"degenerate\"");
  sol.degenerate = j["degenerate"].get<bool>();

  if (!j.contains("lines") || !j["lines"].is_array() || j["lines"].empty())
    throw ParseError("result: \"lines\" must be a non-empty array");
  for (const auto& jl : j["lines"]) {
    const double theta = detail::number_field(jl, "theta");
    const double offset = detail::number_field(jl, "offset");
    sol.lines.push_back(Line::from_normal_form(theta, offset));
  }

  if (!j.contains("certificates") || !j["certificates"].is_array())
    throw ParseError("result: missing \"certificates\"");
  try {
    for (const auto& jc : j["certificates"]) {
      Certificate cert;
      for (const auto& ji : jc.at("tangent_indices"))
        cert.tangent_indices.push_back(ji.get<int>() - 1);
      for (const auto& js : jc.at("contacts")) {
        const std::string c = js.get<std::string>();
        cert.contacts.push_back(c == "edge" ? Contact::edge
                                            : (c == "vertex" ? Contact::vertex : Contact::none));
      }
      for (const auto& js : jc.at("sides")) {
        const int s = js.get<int>();
        cert.sides.push_back(s > 0 ? Side::positive : (s < 0 ? Side::negative : Side::on));
      }
      for (const auto& jr : jc.at("residuals")) cert.residuals.push_back(jr.get<double>());
      sol.certificates.push_back(std::move(cert));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("result: malformed certificate entry: ") + e.what());
  }

  if (!j.contains("diagnostics") || !j["diagnostics"].is_object())
    throw ParseError("result: missing \"diagnostics\"");
  const auto& jd = j["diagnostics"];
  sol.diagnostics.grid_size = int(detail::number_field(jd, "grid_size"));
  sol.diagnostics.refinement_iterations = int(detail::number_field(jd, "refinement_iterations"));
  sol.diagnostics.bracket_width = detail::number_field(jd, "bracket_width");

  if (!j.contains("instance_digest") || !j["instance_digest"].is_string())
    throw ParseError("result: missing \"instance_digest\"");
  rf.instance_digest = j["instance_digest"].get<std::string>();
  return rf;
}

inline ResultFile parse_result_file(const std::string& path) {
  return parse_result_text(detail::read_file(path));
}

}  // namespace transversal
