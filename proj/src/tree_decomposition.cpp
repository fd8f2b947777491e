#include "kpath/tree_decomposition.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace kpath {

int width(const TreeDecomposition& td) {
  int best = -1;
  for (const auto& b : td.bags) best = std::max(best, static_cast<int>(b.size()) - 1);
  return best;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kMinDegree:
      return "min_degree";
    case Strategy::kMinFill:
      return "min_fill";
    case Strategy::kBestOfBoth:
      return "best_of_both";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "min_degree") return Strategy::kMinDegree;
  if (name == "min_fill") return Strategy::kMinFill;
  if (name == "best_of_both") return Strategy::kBestOfBoth;
  throw InputError("unknown strategy '" + name + "'");
}

namespace {

using AdjSets = std::vector<std::set<Vertex>>;

AdjSets adjacency_sets(const Graph& g) {
  AdjSets adj(g.num_vertices());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

int fill_in(const AdjSets& adj, Vertex v) {
  int missing = 0;
  for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
    for (auto b = std::next(a); b != adj[v].end(); ++b) {
      if (!adj[*a].contains(*b)) ++missing;
    }
  }
  return missing;
}

// Eliminates v: its neighbourhood becomes a clique and v is detached.
// Returns the neighbourhood at elimination time.
std::vector<Vertex> eliminate(AdjSets& adj, Vertex v) {
  std::vector<Vertex> nbrs(adj[v].begin(), adj[v].end());
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    adj[nbrs[i]].erase(v);
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      adj[nbrs[i]].insert(nbrs[j]);
      adj[nbrs[j]].insert(nbrs[i]);
    }
  }
  adj[v].clear();
  return nbrs;
}

}  // namespace

std::vector<Vertex> elimination_order(const Graph& g, Strategy s) {
  if (s == Strategy::kBestOfBoth) throw InputError("elimination_order needs a single rule");
  const int n = g.num_vertices();
  AdjSets adj = adjacency_sets(g);
  auto score = [&](Vertex v) {
    return s == Strategy::kMinDegree ? static_cast<int>(adj[v].size()) : fill_in(adj, v);
  };
  std::vector<int> current(n);
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    current[v] = score(v);
    queue.insert({current[v], v});
  }
  std::vector<char> done(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    done[v] = 1;
    order.push_back(v);
    const std::vector<Vertex> nbrs = eliminate(adj, v);

    std::set<Vertex> touched(nbrs.begin(), nbrs.end());
    if (s == Strategy::kMinFill) {
      for (Vertex u : nbrs) touched.insert(adj[u].begin(), adj[u].end());
    }
    for (Vertex u : touched) {
      if (done[u]) continue;
      const int fresh = score(u);
      if (fresh == current[u]) continue;
      queue.erase({current[u], u});
      current[u] = fresh;
      queue.insert({fresh, u});
    }
  }
  return order;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n) throw InputError("order must list every vertex once");
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!g.contains(order[i]) || position[order[i]] != -1) {
      throw InputError("order must list every vertex once");
    }
    position[order[i]] = i;
  }

  AdjSets adj = adjacency_sets(g);
  std::vector<std::vector<Vertex>> bags(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> later = eliminate(adj, v);
    int first = -1;
    for (Vertex u : later) {
      if (first == -1 || position[u] < first) first = position[u];
    }
    parent[i] = first;
    later.push_back(v);
    std::sort(later.begin(), later.end());
    bags[i] = std::move(later);
  }

  // Tree adjacency over bag indices; roots of the elimination forest are
  // chained together (they share no vertices, so this stays valid).
  std::vector<std::set<int>> tree(n);
  int previous_root = -1;
  for (int i = 0; i < n; ++i) {
    if (parent[i] != -1) {
      tree[i].insert(parent[i]);
      tree[parent[i]].insert(i);
    } else {
      if (previous_root != -1) {
        tree[i].insert(previous_root);
        tree[previous_root].insert(i);
      }
      previous_root = i;
    }
  }

  // Contract every bag that is a subset of an adjacent bag.
  std::vector<char> alive(n, 1);
  std::vector<std::pair<int, int>> work;
  for (int i = 0; i < n; ++i) {
    for (int j : tree[i]) {
      if (i < j) work.emplace_back(i, j);
    }
  }
  auto subset = [&](int a, int b) {
    return std::includes(bags[b].begin(), bags[b].end(), bags[a].begin(), bags[a].end());
  };
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (!alive[a] || !alive[b] || !tree[a].contains(b)) continue;
    if (!subset(a, b)) {
      if (!subset(b, a)) continue;
      std::swap(a, b);
    }
    // Merge a into b.
    for (int x : tree[a]) {
      if (x == b) continue;
      tree[x].erase(a);
      tree[x].insert(b);
      tree[b].insert(x);
      work.emplace_back(b, x);
    }
    tree[b].erase(a);
    tree[a].clear();
    alive[a] = 0;
  }

  TreeDecomposition td;
  td.num_vertices = n;
  std::vector<int> new_index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    new_index[i] = static_cast<int>(td.bags.size());
    td.bags.push_back(bags[i]);
  }
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (int j : tree[i]) {
      if (i < j) td.tree_edges.emplace_back(new_index[i], new_index[j]);
    }
  }
  std::sort(td.tree_edges.begin(), td.tree_edges.end());
  return td;
}

TreeDecomposition heuristic_decompose(const Graph& g, Strategy s) {
  if (s != Strategy::kBestOfBoth) return decomposition_from_order(g, elimination_order(g, s));
  TreeDecomposition by_degree = heuristic_decompose(g, Strategy::kMinDegree);
  TreeDecomposition by_fill = heuristic_decompose(g, Strategy::kMinFill);
  return width(by_fill) < width(by_degree) ? by_fill : by_degree;
}

namespace {

TdReport fail(TdViolation why, std::vector<Vertex> witness, std::string message) {
  return {false, why, std::move(witness), std::move(message)};
}

// Tree-ness of the bag graph and the connected-occurrence condition; these
// do not need the graph itself.
TdReport validate_structure(const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  for (const auto& bag : td.bags) {
    for (Vertex v : bag) {
      if (v < 0 || v >= td.num_vertices) {
        return fail(TdViolation::kVertexOutOfRange, {v}, "bag vertex out of range");
      }
    }
  }
  if (nb == 0) {
    if (!td.tree_edges.empty()) return fail(TdViolation::kNotATree, {}, "edges without bags");
    return {};
  }
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) {
    return fail(TdViolation::kNotATree, {}, "tree must have exactly bags-1 edges");
  }
  std::vector<int> dsu(nb);
  std::iota(dsu.begin(), dsu.end(), 0);
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) {
      return fail(TdViolation::kNotATree, {}, "tree edge with invalid endpoint");
    }
    const int ra = find(a), rb = find(b);
    if (ra == rb) return fail(TdViolation::kNotATree, {}, "tree edges contain a cycle");
    dsu[ra] = rb;
  }

  // A vertex's bags form a subtree iff (#bags holding it) - 1 tree edges
  // have it on both sides.
  std::vector<int> occurrences(td.num_vertices, 0), inner_edges(td.num_vertices, 0);
  std::vector<std::set<Vertex>> sets;
  sets.reserve(nb);
  for (const auto& bag : td.bags) {
    sets.emplace_back(bag.begin(), bag.end());
    for (Vertex v : sets.back()) ++occurrences[v];
  }
  for (auto [a, b] : td.tree_edges) {
    for (Vertex v : sets[a]) {
      if (sets[b].contains(v)) ++inner_edges[v];
    }
  }
  for (Vertex v = 0; v < td.num_vertices; ++v) {
    if (occurrences[v] > 0 && inner_edges[v] != occurrences[v] - 1) {
      return fail(TdViolation::kDisconnectedOccurrence, {v},
                  "bags holding vertex " + std::to_string(v) + " are not connected");
    }
  }
  return {};
}

}  // namespace

TdReport validate(const Graph& g, const TreeDecomposition& td) {
  if (td.num_vertices != g.num_vertices()) {
    return fail(TdViolation::kVertexOutOfRange, {}, "vertex count differs from graph");
  }
  if (TdReport r = validate_structure(td); !r.valid) return r;

  std::vector<std::vector<int>> holding(g.num_vertices());
  for (int i = 0; i < static_cast<int>(td.bags.size()); ++i) {
    for (Vertex v : td.bags[i]) {
      if (holding[v].empty() || holding[v].back() != i) holding[v].push_back(i);
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (holding[v].empty()) {
      return fail(TdViolation::kMissingVertex, {v}, "vertex " + std::to_string(v) + " in no bag");
    }
  }
  for (const Edge& e : g.edges()) {
    std::vector<int> common;
    std::set_intersection(holding[e.u].begin(), holding[e.u].end(), holding[e.v].begin(),
                          holding[e.v].end(), std::back_inserter(common));
    if (common.empty()) {
      return fail(TdViolation::kUncoveredEdge, {e.u, e.v},
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") in no bag");
    }
  }
  return {};
}

int NiceTreeDecomposition::width() const {
  int best = -1;
  for (const auto& n : nodes) best = std::max(best, static_cast<int>(n.bag.size()) - 1);
  return best;
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
  TreeDecomposition td;
  td.num_vertices = num_vertices;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    td.bags.push_back(nodes[i].bag);
    if (nodes[i].parent != -1) td.tree_edges.emplace_back(i, nodes[i].parent);
  }
  return td;
}

namespace {

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceTreeDecomposition& out) : out_(out) {}

  int add(NodeKind kind, Vertex v, std::vector<Vertex> bag, std::vector<int> children) {
    const int id = static_cast<int>(out_.nodes.size());
    for (int c : children) out_.nodes[c].parent = id;
    out_.nodes.push_back({kind, v, std::move(bag), -1, std::move(children)});
    return id;
  }

  // Chain from node `from` (or nothing, if -1) up to a node with bag `target`.
  int chain(int from, const std::vector<Vertex>& target) {
    if (from == -1) {
      if (target.empty()) return -1;
      from = add(NodeKind::kLeaf, target.front(), {target.front()}, {});
    }
    std::vector<Vertex> bag = out_.nodes[from].bag;
    for (Vertex v : std::vector<Vertex>(bag)) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      from = add(NodeKind::kForget, v, bag, {from});
    }
    for (Vertex v : target) {
      if (std::binary_search(bag.begin(), bag.end(), v)) continue;
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      from = add(NodeKind::kIntroduce, v, bag, {from});
    }
    return from;
  }

 private:
  NiceTreeDecomposition& out_;
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& input, int root_bag) {
  if (TdReport r = validate_structure(input); !r.valid) {
    throw InputError("make_nice: invalid decomposition: " + r.message);
  }
  TreeDecomposition td = input;
  for (auto& bag : td.bags) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  }

  NiceTreeDecomposition ntd;
  ntd.num_vertices = td.num_vertices;
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) return ntd;

  if (root_bag >= nb) throw InputError("make_nice: root bag out of range");
  int root = std::max(root_bag, 0);
  for (Vertex v = 0; root_bag < 0 && v < td.num_vertices; ++v) {
    auto it = std::find_if(td.bags.begin(), td.bags.end(), [v](const auto& b) {
      return std::binary_search(b.begin(), b.end(), v);
    });
    if (it != td.bags.end()) {
      root = static_cast<int>(it - td.bags.begin());
      break;
    }
  }

  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Root the bag tree.
  std::vector<int> parent(nb, -1);
  std::vector<std::vector<int>> children(nb);
  std::vector<int> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int c : adj[t]) {
      if (parent[c] != -1) continue;
      parent[c] = t;
      children[t].push_back(c);
      stack.push_back(c);
    }
  }
  // Post-order over the rooted tree.
  std::vector<int> order;
  order.reserve(nb);
  stack.assign(1, root);
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    order.push_back(t);
    for (auto it = children[t].rbegin(); it != children[t].rend(); ++it) stack.push_back(*it);
  }

  NiceBuilder build(ntd);
  std::vector<int> top(nb, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    std::vector<int> tops;
    for (int c : children[t]) {
      const int chained = build.chain(top[c], td.bags[t]);
      if (chained != -1) tops.push_back(chained);
    }
    if (tops.empty()) {
      top[t] = build.chain(-1, td.bags[t]);
      continue;
    }
    int acc = tops.front();
    for (std::size_t i = 1; i < tops.size(); ++i) {
      acc = build.add(NodeKind::kJoin, -1, td.bags[t], {acc, tops[i]});
    }
    top[t] = acc;
  }
  ntd.root = top[root];
  return ntd;
}

TdReport validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
  const int nn = static_cast<int>(ntd.nodes.size());
  auto bad = [](int node, const std::string& what) {
    return fail(TdViolation::kNotATree, {}, "node " + std::to_string(node) + ": " + what);
  };
  if (nn == 0) {
    if (g.num_vertices() != 0) return fail(TdViolation::kMissingVertex, {}, "empty decomposition");
    return {};
  }
  if (ntd.root < 0 || ntd.root >= nn || ntd.nodes[ntd.root].parent != -1) {
    return bad(ntd.root, "root must exist and have no parent");
  }
  for (int i = 0; i < nn; ++i) {
    const NiceNode& node = ntd.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
        std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
      return bad(i, "bag not sorted and duplicate-free");
    }
    if (i != ntd.root && (node.parent < 0 || node.parent >= nn)) return bad(i, "missing parent");
    for (int c : node.children) {
      if (c < 0 || c >= nn || ntd.nodes[c].parent != i) return bad(i, "child/parent mismatch");
    }
    auto with = [](std::vector<Vertex> bag, Vertex v) {
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      return bag;
    };
    switch (node.kind) {
      case NodeKind::kLeaf:
        if (!node.children.empty() || node.bag.size() != 1 || node.bag[0] != node.vertex) {
          return bad(i, "leaf must hold exactly its vertex and have no children");
        }
        break;
      case NodeKind::kIntroduce: {
        if (node.children.size() != 1) return bad(i, "introduce needs one child");
        const auto& child = ntd.nodes[node.children[0]].bag;
        if (std::binary_search(child.begin(), child.end(), node.vertex) ||
            with(child, node.vertex) != node.bag) {
          return bad(i, "introduce bag must be child bag plus its vertex");
        }
        break;
      }
      case NodeKind::kForget: {
        if (node.children.size() != 1) return bad(i, "forget needs one child");
        const auto& child = ntd.nodes[node.children[0]].bag;
        if (std::binary_search(node.bag.begin(), node.bag.end(), node.vertex) ||
            with(node.bag, node.vertex) != child) {
          return bad(i, "forget bag must be child bag minus its vertex");
        }
        break;
      }
      case NodeKind::kJoin:
        if (node.children.size() != 2 || ntd.nodes[node.children[0]].bag != node.bag ||
            ntd.nodes[node.children[1]].bag != node.bag) {
          return bad(i, "join needs two children with identical bags");
        }
        break;
    }
  }
  return validate(g, ntd.as_tree_decomposition());
}

TreeDecomposition read_pace_td(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  int line_no = 0;
  bool header = false;
  int declared_max = 0;
  std::vector<char> seen;
  auto error = [&](const std::string& what) {
    return InputError("td line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, kind;
      int bags = 0;
      if (header || !(ls >> s >> kind >> bags >> declared_max >> td.num_vertices) || kind != "td" ||
          bags < 0 || td.num_vertices < 0) {
        throw error("malformed header");
      }
      header = true;
      td.bags.resize(bags);
      seen.assign(bags, 0);
    } else if (!header) {
      throw error("content before header");
    } else if (line[0] == 'b') {
      std::string b;
      int id = 0;
      ls >> b >> id;
      if (!ls || id < 1 || id > static_cast<int>(td.bags.size()) || seen[id - 1]) {
        throw error("bad bag id");
      }
      seen[id - 1] = 1;
      Vertex v = 0;
      while (ls >> v) {
        if (v < 1 || v > td.num_vertices) throw error("bag vertex out of range");
        td.bags[id - 1].push_back(v - 1);
      }
      if (!ls.eof()) throw error("bad bag vertex");
    } else {
      int a = 0, c = 0;
      if (!(ls >> a >> c) || a < 1 || c < 1 || a > static_cast<int>(td.bags.size()) ||
          c > static_cast<int>(td.bags.size())) {
        throw error("bad tree edge");
      }
      td.tree_edges.emplace_back(a - 1, c - 1);
    }
  }
  if (!header) throw InputError("td: missing header");
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("td: missing bag line");
  int actual_max = 0;
  for (const auto& b : td.bags) actual_max = std::max(actual_max, static_cast<int>(b.size()));
  if (actual_max != declared_max) throw InputError("td: header max bag size does not match bags");
  return td;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td) {
  out << "s td " << td.bags.size() << ' ' << width(td) + 1 << ' ' << td.num_vertices << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

}  // namespace kpath
