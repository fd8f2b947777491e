#include "kpath/trace.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace kpath {

int TracePath::total_length() const {
  return left_dangle + std::accumulate(weights.begin(), weights.end(), 0) + right_dangle;
}

TracePath TracePath::canonical() const {
  TracePath reversed{{bag_vertices.rbegin(), bag_vertices.rend()},
                     {weights.rbegin(), weights.rend()},
                     right_dangle,
                     left_dangle};
  auto key = [](const TracePath& t) {
    return std::tie(t.bag_vertices, t.left_dangle, t.right_dangle);
  };
  return key(reversed) < key(*this) ? reversed : *this;
}

void check_trace_path(const Graph& g, const TracePath& t, int k) {
  if (t.bag_vertices.empty()) throw InputError("trace path without bag vertices");
  if (t.weights.size() + 1 != t.bag_vertices.size()) {
    throw InputError("trace path needs one weight per consecutive vertex pair");
  }
  std::set<Vertex> distinct(t.bag_vertices.begin(), t.bag_vertices.end());
  if (distinct.size() != t.bag_vertices.size()) throw InputError("trace path repeats a vertex");
  for (Vertex v : t.bag_vertices) {
    if (!g.contains(v)) throw InputError("trace vertex " + std::to_string(v) + " out of range");
  }
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    if (t.weights[i] < 1) throw InputError("trace weight must be positive");
    if (t.weights[i] == 1 && !g.has_edge(t.bag_vertices[i], t.bag_vertices[i + 1])) {
      throw InputError("weight-1 trace edge is not an edge of the graph");
    }
  }
  if (t.left_dangle < 0 || t.right_dangle < 0) throw InputError("negative dangle");
  if (t.total_length() > k) throw InputError("trace path longer than k");
}

ShrinkResult shrink_vertex(const TracePath& t, Vertex v) {
  auto it = std::find(t.bag_vertices.begin(), t.bag_vertices.end(), v);
  if (it == t.bag_vertices.end()) {
    throw std::logic_error("shrink_vertex: vertex " + std::to_string(v) + " not on path");
  }
  const auto pos = static_cast<std::size_t>(it - t.bag_vertices.begin());
  const std::size_t last = t.bag_vertices.size() - 1;
  if (last == 0) return CompletedPath{t.total_length()};

  TracePath out = t;
  out.bag_vertices.erase(out.bag_vertices.begin() + static_cast<std::ptrdiff_t>(pos));
  if (pos == 0) {
    out.left_dangle += t.weights.front();
    out.weights.erase(out.weights.begin());
  } else if (pos == last) {
    out.right_dangle += t.weights.back();
    out.weights.pop_back();
  } else {
    out.weights[pos - 1] = t.weights[pos - 1] + t.weights[pos];
    out.weights.erase(out.weights.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return out;
}

}  // namespace kpath
