#include "kpath/graph.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace kpath {

Graph::Graph(int num_vertices, std::span<const Edge> edges) {
  if (num_vertices < 0) throw InputError("negative vertex count");
  adjacency_.resize(num_vertices);
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!contains(e.u) || !contains(e.v)) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") has a vertex out of range");
    }
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.fusable});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InputError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                       std::to_string(edges_[i].v) + ")");
    }
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back({e.v, e.fusable});
    adjacency_[e.v].push_back({e.u, e.fusable});
    num_fusable_ += e.fusable ? 1 : 0;
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

const Neighbor* Graph::find(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return nullptr;
  const auto& nbrs = adjacency_[u];
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& a, Vertex x) { return a.vertex < x; });
  if (it == nbrs.end() || it->vertex != v) return nullptr;
  return &*it;
}

std::optional<bool> Graph::edge_fusable(Vertex u, Vertex v) const {
  const Neighbor* n = find(u, v);
  if (n == nullptr) return std::nullopt;
  return n->fusable;
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vertex v = vertices[i];
    if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (local[v] != -1) throw InputError("vertex " + std::to_string(v) + " listed twice");
    local[v] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (Vertex v : vertices) {
    for (const Neighbor& n : g.neighbors(v)) {
      if (n.vertex > v && local[n.vertex] != -1) {
        edges.push_back({local[v], local[n.vertex], n.fusable});
      }
    }
  }
  return {Graph(static_cast<int>(vertices.size()), edges),
          std::vector<Vertex>(vertices.begin(), vertices.end())};
}

std::vector<Subgraph> connected_components(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> members;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members[id].push_back(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (comp[nb.vertex] == -1) {
          comp[nb.vertex] = id;
          stack.push_back(nb.vertex);
        }
      }
    }
  }
  std::vector<Subgraph> out;
  out.reserve(members.size());
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    out.push_back(induced_subgraph(g, m));
  }
  return out;
}

std::vector<Edge> find_bridges(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> bridges;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.vertex == f.parent) continue;  // simple graph: one parent edge
        if (disc[nb.vertex] == -1) {
          disc[nb.vertex] = low[nb.vertex] = timer++;
          stack.push_back({nb.vertex, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[nb.vertex]);
        }
        continue;
      }
      const Vertex v = f.v;
      const Vertex p = f.parent;
      stack.pop_back();
      if (p != -1) {
        low[p] = std::min(low[p], low[v]);
        if (low[v] > disc[p]) {
          bridges.push_back({std::min(p, v), std::max(p, v), *g.edge_fusable(p, v)});
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return bridges;
}

std::vector<Edge> find_ef_cut_edges(const Graph& g) {
  std::vector<Edge> out;
  for (const Edge& e : find_bridges(g)) {
    if (!e.fusable) out.push_back(e);
  }
  return out;
}

Graph remove_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    bool drop = std::any_of(removed.begin(), removed.end(), [&](const Edge& r) {
      return std::min(r.u, r.v) == e.u && std::max(r.u, r.v) == e.v;
    });
    if (!drop) kept.push_back(e);
  }
  return Graph(g.num_vertices(), kept);
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kNonFusableEdge:
      return "non_f_edge";
    case Violation::kDegreeAboveTwo:
      return "vertex_degree_gt_2";
    case Violation::kCycle:
      return "cycle";
    case Violation::kPathTooLong:
      return "path_too_long";
  }
  return "unknown";
}

ColorClassVerdict is_valid_color_class(const Graph& g, std::span<const Vertex> class_vertices,
                                       int k) {
  std::vector<char> in_class(g.num_vertices(), 0);
  for (Vertex v : class_vertices) {
    if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
    in_class[v] = 1;
  }
  auto fail = [](Violation why, std::vector<Vertex> witness) {
    return ColorClassVerdict{false, why, std::move(witness)};
  };

  // Local conditions: F-membership and degree.
  for (Vertex v : class_vertices) {
    int deg = 0;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!in_class[nb.vertex]) continue;
      if (!nb.fusable) return fail(Violation::kNonFusableEdge, {std::min(v, nb.vertex), std::max(v, nb.vertex)});
      ++deg;
    }
    if (deg > 2) return fail(Violation::kDegreeAboveTwo, {v});
  }

  // Every component now has max degree 2: walk from each end to measure it.
  std::vector<char> seen(g.num_vertices(), 0);
  auto class_neighbors = [&](Vertex v) {
    std::vector<Vertex> out;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (in_class[nb.vertex]) out.push_back(nb.vertex);
    }
    return out;
  };
  for (Vertex start : class_vertices) {
    if (seen[start] || class_neighbors(start).size() == 2) continue;
    std::vector<Vertex> path{start};
    seen[start] = 1;
    Vertex prev = -1, cur = start;
    for (;;) {
      Vertex next = -1;
      for (Vertex u : class_neighbors(cur)) {
        if (u != prev) next = u;
      }
      if (next == -1) break;
      prev = cur;
      cur = next;
      seen[cur] = 1;
      path.push_back(cur);
    }
    if (static_cast<int>(path.size()) - 1 > k) return fail(Violation::kPathTooLong, std::move(path));
  }
  // Anything unvisited has degree exactly 2 everywhere in its component.
  for (Vertex v : class_vertices) {
    if (seen[v]) continue;
    std::vector<Vertex> cycle;
    Vertex prev = -1, cur = v;
    while (!seen[cur]) {
      seen[cur] = 1;
      cycle.push_back(cur);
      auto nbrs = class_neighbors(cur);
      Vertex next = nbrs[0] != prev ? nbrs[0] : nbrs[1];
      prev = cur;
      cur = next;
    }
    return fail(Violation::kCycle, std::move(cycle));
  }
  return {};
}

}  // namespace kpath
