#include <doctest.h>

#include <algorithm>
#include <vector>

#include "kpath/graph.hpp"
#include "support/oracles.hpp"

using namespace kpath;
using namespace kpath::testing;

namespace {

std::vector<Vertex> members_of(std::uint32_t mask, int n) {
  std::vector<Vertex> out;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("graph construction rejects bad edges") {
  const std::vector<Edge> loop{{1, 1, true}};
  CHECK_THROWS_AS(Graph(3, loop), InputError);
  const std::vector<Edge> dup{{0, 1, true}, {1, 0, false}};
  CHECK_THROWS_AS(Graph(3, dup), InputError);
  const std::vector<Edge> range{{0, 3, true}};
  CHECK_THROWS_AS(Graph(3, range), InputError);
  const std::vector<Edge> negative{{-1, 0, true}};
  CHECK_THROWS_AS(Graph(3, negative), InputError);
}

TEST_CASE("graph accessors") {
  const std::vector<Edge> edges{{2, 0, true}, {1, 2, false}};
  Graph g(4, edges);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.num_fusable() == 1);
  CHECK(g.edges()[0] == Edge{0, 2, true});
  CHECK(g.edges()[1] == Edge{1, 2, false});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.edge_fusable(0, 2) == true);
  CHECK(g.edge_fusable(2, 1) == false);
  CHECK_FALSE(g.edge_fusable(0, 3).has_value());
  CHECK(g.degree(2) == 2);
  CHECK(g.degree(3) == 0);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("is_valid_color_class examples") {
  Graph triangle = complete_graph(3);
  SUBCASE("two triangle vertices, k=1") {
    const std::vector<Vertex> c{0, 1};
    CHECK(is_valid_color_class(triangle, c, 1).valid);
  }
  SUBCASE("whole triangle is a cycle") {
    const std::vector<Vertex> c{0, 1, 2};
    auto verdict = is_valid_color_class(triangle, c, 5);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.violation == Violation::kCycle);
  }
  SUBCASE("path of two edges with k=1") {
    Graph p = path_graph(3);
    const std::vector<Vertex> c{0, 1, 2};
    auto verdict = is_valid_color_class(p, c, 1);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.violation == Violation::kPathTooLong);
    CHECK(is_valid_color_class(p, c, 2).valid);
  }
  SUBCASE("empty class") {
    CHECK(is_valid_color_class(triangle, std::vector<Vertex>{}, 0).valid);
    CHECK(is_valid_color_class(triangle, std::vector<Vertex>{}, 0).witness.empty());
  }
  SUBCASE("non-fusable edge") {
    const std::vector<Edge> e{{0, 1, false}};
    Graph g(2, e);
    const std::vector<Vertex> c{0, 1};
    auto verdict = is_valid_color_class(g, c, 2);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.violation == Violation::kNonFusableEdge);
    CHECK(verdict.witness == std::vector<Vertex>{0, 1});
  }
  SUBCASE("degree three") {
    const std::vector<Edge> star{{0, 1, true}, {0, 2, true}, {0, 3, true}};
    Graph g(4, star);
    const std::vector<Vertex> c{0, 1, 2, 3};
    auto verdict = is_valid_color_class(g, c, 10);
    CHECK(verdict.violation == Violation::kDegreeAboveTwo);
  }
  SUBCASE("out-of-range vertex") {
    const std::vector<Vertex> c{0, 7};
    CHECK_THROWS_AS(is_valid_color_class(triangle, c, 1), InputError);
  }
}

TEST_CASE("violation names") {
  CHECK(to_string(Violation::kNonFusableEdge) == "non_f_edge");
  CHECK(to_string(Violation::kDegreeAboveTwo) == "vertex_degree_gt_2");
  CHECK(to_string(Violation::kCycle) == "cycle");
  CHECK(to_string(Violation::kPathTooLong) == "path_too_long");
}

TEST_CASE("is_valid_color_class agrees with the partition oracle") {
  Rng rng(11);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    const int n = 3 + static_cast<int>(rng.below(5));
    auto edges = with_random_f(rng, random_edges(rng, n, 45), 80);
    Graph g(n, edges);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto c = members_of(mask, n);
      int induced = 0;
      for (const Edge& e : g.edges()) induced += (mask >> e.u & 1) && (mask >> e.v & 1);
      if (induced > 10) continue;
      for (int k = 0; k <= 3; ++k) {
        CHECK(is_valid_color_class(g, c, k).valid == class_valid_by_partition(g, c, k));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("k=0 classes are exactly the independent sets") {
  Rng rng(12);
  for (int round = 0; round < 60; ++round) {
    const int n = 2 + static_cast<int>(rng.below(7));
    Graph g(n, with_random_f(rng, random_edges(rng, n, 40), 50));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      bool independent = true;
      for (const Edge& e : g.edges()) {
        if ((mask >> e.u & 1) && (mask >> e.v & 1)) independent = false;
      }
      CHECK(is_valid_color_class(g, members_of(mask, n), 0).valid == independent);
    }
  }
}

TEST_CASE("connected_components examples") {
  SUBCASE("two disjoint edges") {
    const std::vector<Edge> e{{0, 1, true}, {2, 3, false}};
    auto comps = connected_components(Graph(4, e));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].graph.num_vertices() == 2);
    CHECK(comps[1].graph.num_vertices() == 2);
    CHECK(comps[1].to_original == std::vector<Vertex>{2, 3});
    CHECK(comps[1].graph.edge_fusable(0, 1) == false);
  }
  SUBCASE("connected graph is returned unchanged") {
    Graph g = cycle_graph(5);
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].graph.edges() == g.edges());
    CHECK(comps[0].to_original == std::vector<Vertex>{0, 1, 2, 3, 4});
  }
  SUBCASE("edgeless graph") {
    auto comps = connected_components(Graph(3, std::vector<Edge>{}));
    REQUIRE(comps.size() == 3);
    for (const auto& c : comps) CHECK(c.graph.num_vertices() == 1);
  }
}

TEST_CASE("components partition the vertices and keep F flags") {
  Rng rng(13);
  for (int round = 0; round < 50; ++round) {
    const int n = 1 + static_cast<int>(rng.below(20));
    Graph g(n, with_random_f(rng, random_edges(rng, n, 10), 50));
    std::vector<int> hits(n, 0);
    int edges = 0;
    for (const Subgraph& c : connected_components(g)) {
      for (Vertex v : c.to_original) ++hits[v];
      CHECK(std::is_sorted(c.to_original.begin(), c.to_original.end()));
      for (const Edge& e : c.graph.edges()) {
        CHECK(g.edge_fusable(c.to_original[e.u], c.to_original[e.v]) == e.fusable);
        ++edges;
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(edges == g.num_edges());
  }
}

TEST_CASE("find_ef_cut_edges examples") {
  SUBCASE("path with one non-fusable edge") {
    const std::vector<Edge> e{{0, 1, true}, {1, 2, false}};
    auto cuts = find_ef_cut_edges(Graph(3, e));
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0] == Edge{1, 2, false});
  }
  SUBCASE("triangle has no bridges") {
    CHECK(find_ef_cut_edges(complete_graph(3, false)).empty());
  }
  SUBCASE("fusable star") {
    const std::vector<Edge> e{{0, 1, true}, {0, 2, true}, {0, 3, true}};
    Graph star(4, e);
    CHECK(find_ef_cut_edges(star).empty());
    CHECK(find_bridges(star).size() == 3);
  }
}

TEST_CASE("bridges agree with the naive finder") {
  Rng rng(14);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng.below(16));
    Graph g(n, with_random_f(rng, random_edges(rng, n, 20), 60));
    auto fast = find_bridges(g);
    auto slow = naive_bridges(g);
    CHECK(fast == slow);
    for (const Edge& e : find_ef_cut_edges(g)) {
      CHECK_FALSE(e.fusable);
      CHECK(std::find(slow.begin(), slow.end(), e) != slow.end());
    }
  }
}

TEST_CASE("induced_subgraph and remove_edges") {
  Graph g = complete_graph(4);
  const std::vector<Vertex> pick{3, 1};
  Subgraph s = induced_subgraph(g, pick);
  CHECK(s.graph.num_vertices() == 2);
  CHECK(s.graph.num_edges() == 1);
  CHECK(s.to_original == pick);
  const std::vector<Vertex> twice{1, 1};
  CHECK_THROWS_AS(induced_subgraph(g, twice), InputError);

  const std::vector<Edge> drop{{0, 1, true}};
  Graph h = remove_edges(g, drop);
  CHECK(h.num_edges() == 5);
  CHECK_FALSE(h.has_edge(0, 1));
}
