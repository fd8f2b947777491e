#include "kpath/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string>

namespace kpath {

int Coloring::colors_used() const {
  return static_cast<int>(std::set<int>(color.begin(), color.end()).size());
}

VerifyReport verify_coloring(const Graph& g, const Coloring& c, int k) {
  if (static_cast<int>(c.color.size()) != g.num_vertices()) {
    throw InputError("coloring assigns " + std::to_string(c.color.size()) + " vertices, graph has " +
                     std::to_string(g.num_vertices()));
  }
  std::vector<std::vector<Vertex>> classes(std::max(c.num_colors, 0));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (c.color[v] < 0 || c.color[v] >= c.num_colors) {
      throw InputError("vertex " + std::to_string(v) + " has color " + std::to_string(c.color[v]) +
                       " outside 0.." + std::to_string(c.num_colors - 1));
    }
    classes[c.color[v]].push_back(v);
  }
  VerifyReport report;
  for (const auto& members : classes) {
    report.classes.push_back(is_valid_color_class(g, members, k));
    report.valid = report.valid && report.classes.back().valid;
  }
  return report;
}

namespace {

std::vector<Vertex> bfs_order(const Graph& g) {
  std::vector<Vertex> order;
  std::vector<char> seen(g.num_vertices(), 0);
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      order.push_back(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          q.push(nb.vertex);
        }
      }
    }
  }
  return order;
}

}  // namespace

bool brute_force_decide(const Graph& g, int k, int num_colors, int cap) {
  const int n = g.num_vertices();
  if (n > cap) {
    throw InputError("brute force limited to " + std::to_string(cap) + " vertices, got " +
                     std::to_string(n));
  }
  if (n == 0) return true;
  if (num_colors <= 0) return false;

  const std::vector<Vertex> order = bfs_order(g);
  std::vector<std::vector<Vertex>> classes(num_colors);

  std::function<bool(int, int)> search = [&](int idx, int used) {
    if (idx == n) return true;
    const Vertex v = order[idx];
    const int limit = std::min(used + 1, num_colors);
    for (int c = 0; c < limit; ++c) {
      classes[c].push_back(v);
      if (is_valid_color_class(g, classes[c], k).valid &&
          search(idx + 1, std::max(used, c + 1))) {
        return true;
      }
      classes[c].pop_back();
    }
    return false;
  };
  return search(0, 0);
}

int brute_force_chromatic(const Graph& g, int k, int cap) {
  for (int colors = 0;; ++colors) {
    if (brute_force_decide(g, k, colors, cap)) return colors;
  }
}

}  // namespace kpath
