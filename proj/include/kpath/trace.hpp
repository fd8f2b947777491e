#pragma once

#include <compare>
#include <variant>
#include <vector>

#include "kpath/graph.hpp"

namespace kpath {

/// Saturating addition: lengths above k are all equally infeasible, so they
/// are clamped at k + 1.
constexpr int saturating_add(int a, int b, int k) {
  const int s = a + b;
  return s > k + 1 ? k + 1 : s;
}

/// The trace of one monochromatic F-path on the current bag: the bag vertices
/// of the path in order, the length of the shrunken subpath between
/// consecutive bag vertices, and the distance from each end bag vertex to the
/// path's true extremity (0 when the end bag vertex is itself the extremity).
struct TracePath {
  std::vector<Vertex> bag_vertices;
  std::vector<int> weights;
  int left_dangle = 0;
  int right_dangle = 0;

  int total_length() const;

  /// Oriented so that (vertex sequence, (left, right)) is lexicographically
  /// smallest among the two readings of the path.
  TracePath canonical() const;

  friend auto operator<=>(const TracePath&, const TracePath&) = default;
  friend bool operator==(const TracePath&, const TracePath&) = default;
};

/// Validates the TracePath invariants against g and k; throws InputError.
void check_trace_path(const Graph& g, const TracePath& t, int k);

/// Marker for a path whose last bag vertex was forgotten.
struct CompletedPath {
  int total_length = 0;
  friend bool operator==(const CompletedPath&, const CompletedPath&) = default;
};

using ShrinkResult = std::variant<TracePath, CompletedPath>;

/// Removes bag vertex v from the trace, folding its incident weights into
/// the neighbouring weight or dangle. Throws std::logic_error if v is not on t.
ShrinkResult shrink_vertex(const TracePath& t, Vertex v);

}  // namespace kpath
