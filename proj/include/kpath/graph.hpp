#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpath {

using Vertex = std::int32_t;

/// Raised for malformed user input (bad vertex ids, partial colorings, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  bool fusable = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  bool fusable = false;
};

/// Simple undirected graph G = (V, E) with a distinguished subset F of
/// fusable edges. Vertices are 0..n-1. Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Throws InputError on self-loops, duplicate edges or out-of-range ids.
  Graph(int num_vertices, std::span<const Edge> edges);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_fusable() const { return num_fusable_; }

  /// Edges with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of v sorted by id.
  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;

  bool has_edge(Vertex u, Vertex v) const { return find(u, v) != nullptr; }
  /// nullopt if (u,v) is not an edge, otherwise whether it lies in F.
  std::optional<bool> edge_fusable(Vertex u, Vertex v) const;

  bool contains(Vertex v) const { return v >= 0 && v < num_vertices(); }

 private:
  const Neighbor* find(Vertex u, Vertex v) const;

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
  int num_fusable_ = 0;
};

/// A subgraph together with the map from its local ids back to the parent.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_original;
};

/// Subgraph induced by `vertices` (any order; duplicates rejected), relabeled
/// 0..|vertices|-1 in the given order.
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Maximal connected subgraphs, ordered by their smallest original vertex.
/// Local ids follow increasing original id.
std::vector<Subgraph> connected_components(const Graph& g);

/// Bridges of g that belong to E \ F, sorted.
std::vector<Edge> find_ef_cut_edges(const Graph& g);

/// All bridges of g, sorted (Tarjan, iterative).
std::vector<Edge> find_bridges(const Graph& g);

/// Copy of g without the listed edges.
Graph remove_edges(const Graph& g, std::span<const Edge> removed);

enum class Violation { kNonFusableEdge, kDegreeAboveTwo, kCycle, kPathTooLong };

std::string to_string(Violation v);

struct ColorClassVerdict {
  bool valid = true;
  std::optional<Violation> violation;
  /// Vertices (and, for edge violations, the two endpoints) witnessing the
  /// violation. Empty when valid.
  std::vector<Vertex> witness;
};

/// Checks that the subgraph of g induced by `class_vertices` is a disjoint
/// union of F-paths, each with at most k edges.
ColorClassVerdict is_valid_color_class(const Graph& g, std::span<const Vertex> class_vertices,
                                       int k);

}  // namespace kpath
