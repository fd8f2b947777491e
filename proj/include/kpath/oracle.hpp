#pragma once

#include <vector>

#include "kpath/graph.hpp"

namespace kpath {

/// Total assignment vertex -> color in 0..num_colors-1.
struct Coloring {
  std::vector<int> color;
  int num_colors = 0;

  /// Number of distinct colors actually assigned.
  int colors_used() const;
};

struct VerifyReport {
  bool valid = true;
  /// One verdict per color index 0..num_colors-1.
  std::vector<ColorClassVerdict> classes;
};

/// Checks every color class with is_valid_color_class. Throws InputError if
/// the coloring is not total on g or uses a color outside 0..num_colors-1.
VerifyReport verify_coloring(const Graph& g, const Coloring& c, int k);

inline constexpr int kBruteForceCap = 15;

/// Exhaustive search for a k-path L-coloring. Vertices are colored in BFS
/// order; the first vertex of each component is pinned to an already-used
/// color or the next fresh one, and partial classes are pruned as soon as
/// they stop being valid. Throws InputError above `cap` vertices.
bool brute_force_decide(const Graph& g, int k, int num_colors, int cap = kBruteForceCap);

/// Smallest L accepted by brute_force_decide (0 for the empty graph).
int brute_force_chromatic(const Graph& g, int k, int cap = kBruteForceCap);

}  // namespace kpath
