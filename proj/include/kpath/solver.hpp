#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kpath/dp_solver.hpp"
#include "kpath/graph.hpp"
#include "kpath/oracle.hpp"
#include "kpath/tree_decomposition.hpp"

namespace kpath {

/// Pieces to solve independently: the connected components of g, further cut
/// along bridges in E \ F when requested.
struct SplitPlan {
  std::vector<Subgraph> parts;
  /// Removed bridges, in original vertex ids.
  std::vector<Edge> cut_edges;
};

SplitPlan preprocess_split(const Graph& g, bool split_bridges);

/// Joins per-part colorings into one coloring of g. The number of colors is
/// the maximum over the parts, raised to 2 if any cut edge exists; for each
/// cut edge the far side's colors are permuted so its endpoints differ.
Coloring recombine(const Graph& g, const SplitPlan& plan, std::span<const Coloring> parts);

struct SolveOptions {
  Strategy strategy = Strategy::kBestOfBoth;
  bool certificate = false;
  bool split_bridges = true;
  bool color_symmetry = true;
  /// Parts solved concurrently; 1 runs everything on the calling thread.
  int jobs = 1;
  /// Root bag passed to make_nice (-1 = default rooting). Testing aid.
  int root_bag = -1;
};

struct SolveStats {
  double decompose_seconds = 0.0;
  double nicify_seconds = 0.0;
  /// Decide time summed over parts, keyed by the number of colors tried.
  std::map<int, double> decide_seconds;
  double total_seconds = 0.0;
  std::size_t total_states = 0;
  std::size_t peak_table = 0;
  int num_parts = 0;
  int max_part_size = 0;
  int max_nice_nodes = 0;
};

struct SolveResult {
  bool colorable = true;
  int chromatic = 0;
  /// Largest decomposition width over the parts (-1 for the empty graph).
  int width = -1;
  std::optional<Coloring> coloring;
  SolveStats stats;
};

/// k-path chromatic number. Each part is decomposed heuristically and L is
/// raised from 1 until decide succeeds; L = width + 1 must succeed, and an
/// InternalError is thrown if it does not.
SolveResult chromatic_number(const Graph& g, int k, const SolveOptions& opts = {});

}  // namespace kpath
