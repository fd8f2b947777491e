#pragma once

#include "kpath/graph.hpp"
#include "kpath/tree_decomposition.hpp"

namespace kpath {

inline constexpr int kExactCliqueLimit = 200;

struct CliqueResult {
  int size = 0;
  bool exact = true;
};

/// Exact maximum clique by branch and bound with a greedy-coloring bound when
/// the graph has at most kExactCliqueLimit vertices; otherwise a greedy lower
/// bound with exact = false.
CliqueResult clique_number(const Graph& g);

/// Instance descriptor row (sizes, clique number, max degree, width). The
/// clique number is taken per component and is exact when every component is
/// within kExactCliqueLimit.
struct InstanceStats {
  int n = 0;
  int m = 0;
  int f_count = 0;
  int omega = 0;
  bool omega_exact = true;
  int max_degree = 0;
  /// Heuristic decomposition width, max over components (-1 if empty).
  int width = -1;
  int components = 0;
  int max_component_size = 0;
};

/// Throws InternalError if omega - 1 > width.
InstanceStats compute_stats(const Graph& g, Strategy strategy = Strategy::kBestOfBoth);

}  // namespace kpath
