#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace transversal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValidationIssue {
  too_few_vertices,
  duplicate_vertex,
  not_convex,
  nonfinite_coordinate,
  negative_ratio,
  empty_configuration,
};

inline const char* to_string(ValidationIssue issue) {
  switch (issue) {
    case ValidationIssue::too_few_vertices: return "too_few_vertices";
    case ValidationIssue::duplicate_vertex: return "duplicate_vertex";
    case ValidationIssue::not_convex: return "not_convex";
    case ValidationIssue::nonfinite_coordinate: return "nonfinite_coordinate";
    case ValidationIssue::negative_ratio: return "negative_ratio";
    case ValidationIssue::empty_configuration: return "empty_configuration";
  }
  return "unknown";
}

// Geometric/semantic rejection of an input. polygon_index is 1-based and 0
// when the error is not tied to a particular polygon.
class ValidationError : public Error {
 public:
  ValidationError(ValidationIssue issue, const std::string& what, int polygon_index = 0)
      : Error(what), issue_(issue), polygon_index_(polygon_index) {}

  ValidationIssue issue() const { return issue_; }
  int polygon_index() const { return polygon_index_; }

 private:
  ValidationIssue issue_;
  int polygon_index_;
};

// Malformed file text. line/column are 1-based; 0 means "position unknown"
// (e.g. a schema violation found after the JSON itself parsed).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(what), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised when an allegedly optimal line fails the tangency certificate
// (fewer than three tangent polygons, or all on one side). This indicates a
// solver bug or tolerance misconfiguration, not bad user input.
class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace transversal
