#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kpath/graph.hpp"
#include "kpath/oracle.hpp"

namespace kpath {

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedLine,
  kSelfLoop,
  kDuplicateEdge,
  kIndexOutOfRange,
  kEdgeCountMismatch,
  kDuplicateVertex,
  kMissingVertex,
};

std::string to_string(ParseErrorKind kind);

class ParseError : public InputError {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

struct Instance {
  Graph graph;
  int k = 0;
};

/// Text format:
///   p kpath <n> <m> <k>
///   e <u> <v> <f>      (m lines, 0-based ids, f = 1 iff the edge is in F)
/// Lines starting with `c` and blank lines are ignored.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

/// Canonical form: header, then edges sorted with u < v.
void write_instance(std::ostream& out, const Instance& inst);
std::string serialize_instance(const Instance& inst);

/// One `<vertex> <color>` line per vertex. Colors are 0-based; num_colors is
/// set to max color + 1. Throws ParseError on duplicates, out-of-range ids,
/// negative colors or missing vertices.
Coloring parse_coloring(std::istream& in, int num_vertices);
void write_coloring(std::ostream& out, const Coloring& c);

struct Point {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Layout sidecar: one `<x> <y>` line per vertex.
void write_layout(std::ostream& out, const std::vector<Point>& points);
std::vector<Point> parse_layout(std::istream& in);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace kpath
