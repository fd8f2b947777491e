#include "kpath/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace kpath {

std::string to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader:
      return "malformed_header";
    case ParseErrorKind::kMalformedLine:
      return "malformed_line";
    case ParseErrorKind::kSelfLoop:
      return "self_loop";
    case ParseErrorKind::kDuplicateEdge:
      return "duplicate_edge";
    case ParseErrorKind::kIndexOutOfRange:
      return "index_out_of_range";
    case ParseErrorKind::kEdgeCountMismatch:
      return "edge_count_mismatch";
    case ParseErrorKind::kDuplicateVertex:
      return "duplicate_vertex";
    case ParseErrorKind::kMissingVertex:
      return "missing_vertex";
  }
  return "unknown";
}

namespace {

bool skippable(const std::string& line) {
  return line.empty() || line[0] == 'c' || line.find_first_not_of(" \t\r") == std::string::npos;
}

// True if nothing but whitespace remains.
bool at_end(std::istringstream& ls) {
  ls >> std::ws;
  return ls.eof();
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool header = false;
  long long n = 0, m = 0, k = 0;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      std::string format;
      if (tag != "p" || !(ls >> format >> n >> m >> k) || format != "kpath" || n < 0 || m < 0 ||
          k < 0 || n > 100000000 || !at_end(ls)) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "expected 'p kpath <n> <m> <k>'");
      }
      header = true;
      continue;
    }
    long long u = 0, v = 0, f = 0;
    if (tag != "e" || !(ls >> u >> v >> f) || (f != 0 && f != 1) || !at_end(ls)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'e <u> <v> <0|1>'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(ParseErrorKind::kIndexOutOfRange, line_no, "vertex index out of range");
    }
    if (u == v) throw ParseError(ParseErrorKind::kSelfLoop, line_no, "self-loop");
    const Edge e{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)), f == 1};
    if (!seen.emplace(e.u, e.v).second) {
      throw ParseError(ParseErrorKind::kDuplicateEdge, line_no,
                       "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    edges.push_back(e);
  }
  if (!header) throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "missing header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(ParseErrorKind::kEdgeCountMismatch, line_no,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return {Graph(static_cast<int>(n), edges), static_cast<int>(k)};
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "p kpath " << inst.graph.num_vertices() << ' ' << inst.graph.num_edges() << ' ' << inst.k
      << '\n';
  for (const Edge& e : inst.graph.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << (e.fusable ? 1 : 0) << '\n';
  }
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

Coloring parse_coloring(std::istream& in, int num_vertices) {
  Coloring c{std::vector<int>(num_vertices, -1), 0};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    long long v = 0, color = 0;
    if (!(ls >> v >> color) || !at_end(ls) || color < 0 || color > 1000000) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected '<vertex> <color>'");
    }
    if (v < 0 || v >= num_vertices) {
      throw ParseError(ParseErrorKind::kIndexOutOfRange, line_no, "vertex index out of range");
    }
    if (c.color[v] != -1) {
      throw ParseError(ParseErrorKind::kDuplicateVertex, line_no,
                       "vertex " + std::to_string(v) + " colored twice");
    }
    c.color[v] = static_cast<int>(color);
    c.num_colors = std::max(c.num_colors, static_cast<int>(color) + 1);
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (c.color[v] == -1) {
      throw ParseError(ParseErrorKind::kMissingVertex, line_no,
                       "vertex " + std::to_string(v) + " has no color");
    }
  }
  return c;
}

void write_coloring(std::ostream& out, const Coloring& c) {
  for (std::size_t v = 0; v < c.color.size(); ++v) out << v << ' ' << c.color[v] << '\n';
}

void write_layout(std::ostream& out, const std::vector<Point>& points) {
  for (const Point& p : points) out << p.x << ' ' << p.y << '\n';
}

std::vector<Point> parse_layout(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    Point p;
    if (!(ls >> p.x >> p.y) || !at_end(ls)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected '<x> <y>'");
    }
    points.push_back(p);
  }
  return points;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return parse_instance(in);
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write_instance(out, inst);
}

}  // namespace kpath
