#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kpath/graph.hpp"
#include "kpath/oracle.hpp"
#include "kpath/trace.hpp"
#include "kpath/tree_decomposition.hpp"

namespace kpath {

inline constexpr std::uint8_t kDangle = 0xFF;
inline constexpr int kMaxK = 250;
inline constexpr int kMaxColors = 250;
inline constexpr int kMaxBagSize = 250;

/// One side of a bag vertex in the trace: either a link to another bag
/// vertex (`to` is its bag position, `length` the shrunken path length) or a
/// dangle towards a forgotten extremity (`to == kDangle`; length 0 means the
/// vertex itself ends the path on this side).
struct Arm {
  std::uint8_t to = kDangle;
  std::uint8_t length = 0;

  bool is_dangle() const { return to == kDangle; }
  friend auto operator<=>(const Arm&, const Arm&) = default;
};

using ArmPair = std::array<Arm, 2>;

/// Bag coloring plus the trace of every monochromatic path on the bag.
/// Indexed by position in the (sorted) bag of the owning table. Arm pairs
/// are kept sorted, which makes equality coincide with equality of the
/// canonical trace sets.
struct PartialSolution {
  std::vector<std::uint8_t> colors;
  std::vector<ArmPair> arms;

  std::map<Vertex, int> bag_coloring(std::span<const Vertex> bag) const;
  /// Canonical trace paths of color c, sorted.
  std::vector<TracePath> traces(std::span<const Vertex> bag, int color) const;

  friend auto operator<=>(const PartialSolution&, const PartialSolution&) = default;
};

struct PartialSolutionHash {
  std::size_t operator()(const PartialSolution& s) const;
};

/// Builds a solution from the path-level description; every bag vertex must
/// lie on exactly one path of its own color. Throws InputError otherwise.
PartialSolution make_partial_solution(std::span<const Vertex> bag, std::span<const int> colors,
                                      std::span<const TracePath> paths);

/// How a solution was produced from its children (indices into the child
/// tables). `color` is the color chosen for a leaf/introduced vertex in the
/// child's color space; `permutation` maps child colors to this table's
/// colors and is empty for the identity.
struct Backpointer {
  int first = -1;
  int second = -1;
  int color = -1;
  std::vector<std::uint8_t> permutation;
};

struct SolutionTable {
  std::vector<Vertex> bag;
  std::vector<PartialSolution> solutions;
  /// Parallel to `solutions` when recording, empty otherwise.
  std::vector<Backpointer> links;
};

struct DpOptions {
  /// Relabel colors by first use along the bag so color permutations of one
  /// state collapse into a single entry.
  bool color_symmetry = true;
  /// Keep backpointers and all tables so a coloring can be rebuilt.
  bool record = false;
};

SolutionTable process_leaf(Vertex v, int num_colors, const DpOptions& opts = {});

SolutionTable process_introduce(const SolutionTable& child, Vertex v, const Graph& g, int k,
                                int num_colors, const DpOptions& opts = {});

SolutionTable process_forget(const SolutionTable& child, Vertex v, int k, int num_colors,
                             const DpOptions& opts = {});

/// Throws std::logic_error if the two child bags differ.
SolutionTable process_join(const SolutionTable& left, const SolutionTable& right, const Graph& g,
                           int k, int num_colors, const DpOptions& opts = {});

struct DecideStats {
  std::vector<std::size_t> table_sizes;
  std::size_t peak_table = 0;
  std::size_t total_states = 0;
  double seconds = 0.0;
};

struct DecideResult {
  bool colorable = false;
  std::optional<Coloring> coloring;
  DecideStats stats;
};

/// Runs the bag procedures bottom-up over ntd. With opts.record the result
/// carries a certificate coloring. Throws InputError if ntd is not a valid
/// nice decomposition of g.
DecideResult decide(const Graph& g, const NiceTreeDecomposition& ntd, int k, int num_colors,
                    const DpOptions& opts = {});

/// Walks backpointers down from `root_solution` in the root table,
/// assigning each vertex the color chosen where it was introduced. Throws
/// std::logic_error if the tables carry no backpointers.
Coloring reconstruct(const NiceTreeDecomposition& ntd, std::span<const SolutionTable> tables,
                     int root_solution, int num_colors);

}  // namespace kpath
