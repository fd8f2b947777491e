#include <doctest.h>

#include <vector>

#include "kpath/oracle.hpp"
#include "support/oracles.hpp"

using namespace kpath;
using namespace kpath::testing;

TEST_CASE("verify_coloring examples") {
  Graph tri = complete_graph(3);
  Coloring c{{0, 0, 1}, 2};
  CHECK(verify_coloring(tri, c, 1).valid);
  auto r = verify_coloring(tri, c, 0);
  CHECK_FALSE(r.valid);
  REQUIRE(r.classes.size() == 2);
  CHECK_FALSE(r.classes[0].valid);
  CHECK(r.classes[1].valid);

  Rng rng(61);
  for (int round = 0; round < 30; ++round) {
    const int n = 1 + static_cast<int>(rng.below(15));
    Graph g(n, with_random_f(rng, random_edges(rng, n, 50), 30));
    Coloring own{std::vector<int>(n), n};
    for (int v = 0; v < n; ++v) own.color[v] = v;
    for (int k = 0; k <= 2; ++k) CHECK(verify_coloring(g, own, k).valid);
  }
}

TEST_CASE("verify_coloring rejects malformed colorings") {
  Graph tri = complete_graph(3);
  CHECK_THROWS_AS(verify_coloring(tri, Coloring{{0, 1}, 2}, 1), InputError);
  CHECK_THROWS_AS(verify_coloring(tri, Coloring{{0, 1, 2}, 2}, 1), InputError);
  CHECK_THROWS_AS(verify_coloring(tri, Coloring{{0, -1, 1}, 2}, 1), InputError);
}

TEST_CASE("colors_used counts distinct colors") {
  CHECK(Coloring{{0, 2, 2}, 3}.colors_used() == 2);
  CHECK(Coloring{{}, 0}.colors_used() == 0);
}

TEST_CASE("brute force examples") {
  Graph p3 = path_graph(3);
  CHECK_FALSE(brute_force_decide(p3, 1, 1));
  CHECK(brute_force_decide(p3, 1, 2));
  CHECK(brute_force_decide(complete_graph(4), 1, 2));
  CHECK_FALSE(brute_force_decide(complete_graph(4), 0, 3));
  CHECK(brute_force_chromatic(cycle_graph(5), 1) == 2);
  CHECK(brute_force_chromatic(cycle_graph(5), 0) == 3);
  CHECK(brute_force_chromatic(complete_graph(4), 0) == 4);
  CHECK(brute_force_chromatic(Graph(), 0) == 0);
}

TEST_CASE("brute force enforces its cap") {
  CHECK_THROWS_AS(brute_force_decide(path_graph(16), 1, 2), InputError);
  CHECK_THROWS_AS(brute_force_chromatic(path_graph(6), 1, 5), InputError);
}

TEST_CASE("brute force agrees with plain enumeration") {
  Rng rng(62);
  for (int round = 0; round < 250; ++round) {
    const int n = 1 + static_cast<int>(rng.below(8));
    Graph g(n, with_random_f(rng, random_edges(rng, n, static_cast<int>(20 + rng.below(70))),
                             static_cast<int>(rng.below(101))));
    for (int k = 0; k <= 3; ++k) {
      for (int L = 1; L <= 3; ++L) CHECK(brute_force_decide(g, k, L) == exhaustive_decide(g, k, L));
    }
  }
}

TEST_CASE("brute force chromatic number is monotone in k and classical at k = 0") {
  Rng rng(63);
  for (int round = 0; round < 150; ++round) {
    const int n = 1 + static_cast<int>(rng.below(10));
    Graph g(n, with_random_f(rng, random_edges(rng, n, static_cast<int>(10 + rng.below(80))), 70));
    const int chi0 = brute_force_chromatic(g, 0);
    CHECK(chi0 == classical_chromatic(g));
    int previous = chi0;
    for (int k = 1; k <= 3; ++k) {
      const int current = brute_force_chromatic(g, k);
      CHECK(current <= previous);
      previous = current;
    }
  }
}
