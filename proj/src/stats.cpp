#include "kpath/stats.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace kpath {

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  int run() {
    std::vector<Vertex> all(g_.num_vertices());
    for (Vertex v = 0; v < g_.num_vertices(); ++v) all[v] = v;
    // High degree first tends to find a large clique early.
    std::stable_sort(all.begin(), all.end(),
                     [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
    expand(0, all);
    return best_;
  }

 private:
  // Greedy sequential coloring; colors[i] bounds the clique inside the first
  // i + 1 candidates.
  std::vector<int> color_bounds(const std::vector<Vertex>& cand) const {
    std::vector<std::vector<Vertex>> classes;
    std::vector<int> bounds(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = std::any_of(classes[c].begin(), classes[c].end(),
                                 [&](Vertex u) { return g_.has_edge(u, cand[i]); });
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(cand[i]);
      bounds[i] = static_cast<int>(classes.size());
    }
    return bounds;
  }

  void expand(int size, std::vector<Vertex> cand) {
    if (cand.empty()) {
      best_ = std::max(best_, size);
      return;
    }
    const std::vector<int> bounds = color_bounds(cand);
    for (std::size_t i = cand.size(); i-- > 0;) {
      if (size + bounds[i] <= best_) return;
      const Vertex v = cand[i];
      std::vector<Vertex> next;
      for (std::size_t j = 0; j < i; ++j) {
        if (g_.has_edge(v, cand[j])) next.push_back(cand[j]);
      }
      expand(size + 1, std::move(next));
    }
  }

  const Graph& g_;
  int best_ = 0;
};

int greedy_clique(const Graph& g) {
  int best = g.num_vertices() > 0 ? 1 : 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<Vertex> clique{v};
    for (const Neighbor& nb : g.neighbors(v)) {
      if (std::all_of(clique.begin(), clique.end(),
                      [&](Vertex u) { return g.has_edge(u, nb.vertex); })) {
        clique.push_back(nb.vertex);
      }
    }
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return best;
}

}  // namespace

CliqueResult clique_number(const Graph& g) {
  if (g.num_vertices() > kExactCliqueLimit) return {greedy_clique(g), false};
  return {CliqueSearch(g).run(), true};
}

InstanceStats compute_stats(const Graph& g, Strategy strategy) {
  InstanceStats s;
  s.n = g.num_vertices();
  s.m = g.num_edges();
  s.f_count = g.num_fusable();
  s.max_degree = g.max_degree();
  for (const Subgraph& c : connected_components(g)) {
    ++s.components;
    s.max_component_size = std::max(s.max_component_size, c.graph.num_vertices());
    // Cliques never span components, so small components keep omega exact.
    const CliqueResult omega = clique_number(c.graph);
    s.omega = std::max(s.omega, omega.size);
    s.omega_exact = s.omega_exact && omega.exact;
    s.width = std::max(s.width, width(heuristic_decompose(c.graph, strategy)));
  }
  if (s.omega - 1 > s.width) {
    throw InternalError("clique of size " + std::to_string(s.omega) + " but decomposition width " +
                        std::to_string(s.width));
  }
  return s;
}

}  // namespace kpath
