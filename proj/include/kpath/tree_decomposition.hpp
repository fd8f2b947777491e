#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpath/graph.hpp"

namespace kpath {

/// Unrooted tree decomposition. Bags hold sorted vertex ids.
struct TreeDecomposition {
  int num_vertices = 0;
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

/// Largest bag size minus one; -1 when there are no bags.
int width(const TreeDecomposition& td);

enum class Strategy { kMinDegree, kMinFill, kBestOfBoth };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// Elimination order by the given greedy rule; ties go to the lowest id.
std::vector<Vertex> elimination_order(const Graph& g, Strategy s);

/// Tree decomposition built from an elimination order. Bags that are subsets
/// of an adjacent bag are contracted away.
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order);

/// Heuristic decomposition. kBestOfBoth keeps the narrower of the two
/// (min-degree on ties). Disconnected inputs yield a valid decomposition too.
TreeDecomposition heuristic_decompose(const Graph& g, Strategy s = Strategy::kBestOfBoth);

enum class TdViolation {
  kVertexOutOfRange,
  kMissingVertex,
  kUncoveredEdge,
  kDisconnectedOccurrence,
  kNotATree,
};

struct TdReport {
  bool valid = true;
  std::optional<TdViolation> violation;
  std::vector<Vertex> witness;
  std::string message;
};

TdReport validate(const Graph& g, const TreeDecomposition& td);

enum class NodeKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
  NodeKind kind = NodeKind::kLeaf;
  /// Leaf/introduced/forgotten vertex; -1 for joins.
  Vertex vertex = -1;
  std::vector<Vertex> bag;
  int parent = -1;
  std::vector<int> children;
};

/// Rooted nice tree decomposition. Children always precede their parent in
/// `nodes`, so index order is a valid bottom-up evaluation order.
struct NiceTreeDecomposition {
  int num_vertices = 0;
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
  /// Plain (unrooted) view, used for re-validation.
  TreeDecomposition as_tree_decomposition() const;
};

/// Rooted at `root_bag`, or by default at the first bag holding the lowest
/// vertex id. Each tree edge becomes a forget chain followed by an introduce
/// chain; nodes with m >= 2 children get m - 1 join nodes. Throws InputError if td is not a tree or violates
/// the connected-occurrence condition.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root_bag = -1);

/// Validates the underlying decomposition plus the per-kind bag rules.
TdReport validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

/// PACE ".td" text: `s td <bags> <max bag size> <n>`, `b <id> <v...>` and
/// `<id1> <id2>` lines, all 1-based. Comment lines start with `c`.
TreeDecomposition read_pace_td(std::istream& in);
void write_pace_td(std::ostream& out, const TreeDecomposition& td);

}  // namespace kpath
