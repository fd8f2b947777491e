#include "kpath/dp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

namespace kpath {

std::size_t PartialSolutionHash::operator()(const PartialSolution& s) const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (std::uint8_t c : s.colors) mix(c);
  for (const ArmPair& pair : s.arms) {
    for (const Arm& a : pair) {
      mix(a.to);
      mix(a.length);
    }
  }
  return static_cast<std::size_t>(h);
}

namespace {

void sort_pair(ArmPair& pair) {
  if (pair[1] < pair[0]) std::swap(pair[0], pair[1]);
}

Arm* free_end(ArmPair& pair) {
  for (Arm& a : pair) {
    if (a.is_dangle() && a.length == 0) return &a;
  }
  return nullptr;
}

bool has_dangle(const ArmPair& pair) { return pair[0].is_dangle() || pair[1].is_dangle(); }

struct Walk {
  int end = -1;
  int length = 0;
};

// Walks a trace path starting at one of its end vertices. Marks every vertex
// passed when `visited` is given; `on_step` sees (from, to, weight).
template <typename OnStep>
Walk walk_from(std::span<const ArmPair> arms, int start, std::vector<char>* visited,
               OnStep&& on_step) {
  Walk w;
  int prev = -1;
  int cur = start;
  for (;;) {
    if (visited != nullptr) (*visited)[cur] = 1;
    int next = -1;
    int weight = 0;
    for (const Arm& a : arms[cur]) {
      if (a.is_dangle()) {
        w.length += a.length;
      } else if (a.to != prev && next == -1) {
        next = a.to;
        weight = a.length;
      }
    }
    if (next == -1) {
      w.end = cur;
      return w;
    }
    on_step(cur, next, weight);
    w.length += weight;
    prev = cur;
    cur = next;
  }
}

Walk walk_from(std::span<const ArmPair> arms, int start, std::vector<char>* visited = nullptr) {
  return walk_from(arms, start, visited, [](int, int, int) {});
}

std::uint8_t clamp_length(int value, int k) {
  return static_cast<std::uint8_t>(saturating_add(value, 0, k));
}

// Relabels colors in first-use order along the bag. Returns the applied
// permutation, or an empty vector if it was the identity.
std::vector<std::uint8_t> normalize(std::vector<std::uint8_t>& colors, int num_colors,
                                    bool enabled) {
  if (!enabled) return {};
  constexpr std::uint8_t kUnset = 0xFF;
  std::vector<std::uint8_t> perm(num_colors, kUnset);
  std::uint8_t next = 0;
  for (std::uint8_t c : colors) {
    if (perm[c] == kUnset) perm[c] = next++;
  }
  for (auto& p : perm) {
    if (p == kUnset) p = next++;
  }
  bool identity = true;
  for (int c = 0; c < num_colors; ++c) identity = identity && perm[c] == c;
  if (identity) return {};
  for (auto& c : colors) c = perm[c];
  return perm;
}

void check_parameters(int k, int num_colors) {
  if (k < 0 || k > kMaxK) throw InputError("k must be in 0.." + std::to_string(kMaxK));
  if (num_colors < 0 || num_colors > kMaxColors) {
    throw InputError("number of colors must be in 0.." + std::to_string(kMaxColors));
  }
}

class TableBuilder {
 public:
  TableBuilder(std::vector<Vertex> bag, bool record) : record_(record) {
    table_.bag = std::move(bag);
  }

  void add(PartialSolution s, Backpointer link) {
    auto [it, inserted] = index_.try_emplace(std::move(s), static_cast<int>(table_.solutions.size()));
    if (!inserted) return;
    table_.solutions.push_back(it->first);
    if (record_) table_.links.push_back(std::move(link));
  }

  SolutionTable finish() && { return std::move(table_); }

 private:
  bool record_;
  SolutionTable table_;
  std::unordered_map<PartialSolution, int, PartialSolutionHash> index_;
};

int bag_position(const std::vector<Vertex>& bag, Vertex v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) return -1;
  return static_cast<int>(it - bag.begin());
}

}  // namespace

std::map<Vertex, int> PartialSolution::bag_coloring(std::span<const Vertex> bag) const {
  std::map<Vertex, int> out;
  for (std::size_t i = 0; i < colors.size(); ++i) out[bag[i]] = colors[i];
  return out;
}

std::vector<TracePath> PartialSolution::traces(std::span<const Vertex> bag, int color) const {
  std::vector<TracePath> out;
  std::vector<char> visited(arms.size(), 0);
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (colors[i] != color || visited[i] || !has_dangle(arms[i])) continue;
    TracePath t;
    t.bag_vertices.push_back(bag[i]);
    const ArmPair& first = arms[i];
    // A singleton carries both dangles; otherwise the start end has one.
    t.left_dangle = first[0].is_dangle() ? first[0].length : first[1].length;
    Walk w = walk_from(arms, static_cast<int>(i), &visited, [&](int, int to, int weight) {
      t.bag_vertices.push_back(bag[to]);
      t.weights.push_back(weight);
    });
    const ArmPair& last = arms[w.end];
    if (t.bag_vertices.size() == 1) {
      t.right_dangle = first[1].length;
    } else {
      t.right_dangle = last[0].is_dangle() ? last[0].length : last[1].length;
    }
    out.push_back(t.canonical());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartialSolution make_partial_solution(std::span<const Vertex> bag, std::span<const int> colors,
                                      std::span<const TracePath> paths) {
  if (!std::is_sorted(bag.begin(), bag.end())) throw InputError("bag must be sorted");
  if (colors.size() != bag.size()) throw InputError("one color per bag vertex required");
  const std::vector<Vertex> bag_vec(bag.begin(), bag.end());
  PartialSolution s;
  s.colors.reserve(colors.size());
  for (int c : colors) {
    if (c < 0 || c >= kMaxColors) throw InputError("color out of range");
    s.colors.push_back(static_cast<std::uint8_t>(c));
  }
  s.arms.assign(bag.size(), ArmPair{});
  std::vector<char> covered(bag.size(), 0);
  auto length = [](int x) {
    if (x < 0 || x > 255) throw InputError("trace length out of range");
    return static_cast<std::uint8_t>(x);
  };
  for (const TracePath& t : paths) {
    if (t.bag_vertices.empty() || t.weights.size() + 1 != t.bag_vertices.size()) {
      throw InputError("malformed trace path");
    }
    std::vector<int> pos;
    for (Vertex v : t.bag_vertices) {
      const int p = bag_position(bag_vec, v);
      if (p < 0 || covered[p]) throw InputError("trace vertex not in bag or used twice");
      if (s.colors[p] != s.colors[bag_position(bag_vec, t.bag_vertices[0])]) {
        throw InputError("trace path mixes colors");
      }
      covered[p] = 1;
      pos.push_back(p);
    }
    const std::size_t last = pos.size() - 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      ArmPair& a = s.arms[pos[i]];
      a[0] = i == 0 ? Arm{kDangle, length(t.left_dangle)}
                    : Arm{static_cast<std::uint8_t>(pos[i - 1]), length(t.weights[i - 1])};
      a[1] = i == last ? Arm{kDangle, length(t.right_dangle)}
                       : Arm{static_cast<std::uint8_t>(pos[i + 1]), length(t.weights[i])};
      sort_pair(a);
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw InputError("every bag vertex must lie on a trace path");
  }
  return s;
}

SolutionTable process_leaf(Vertex v, int num_colors, const DpOptions& opts) {
  check_parameters(0, num_colors);
  TableBuilder out({v}, opts.record);
  const int limit = opts.color_symmetry ? std::min(num_colors, 1) : num_colors;
  for (int c = 0; c < limit; ++c) {
    PartialSolution s{{static_cast<std::uint8_t>(c)}, {ArmPair{}}};
    out.add(std::move(s), Backpointer{-1, -1, c, {}});
  }
  return std::move(out).finish();
}

SolutionTable process_introduce(const SolutionTable& child, Vertex v, const Graph& g, int k,
                                int num_colors, const DpOptions& opts) {
  check_parameters(k, num_colors);
  if (bag_position(child.bag, v) >= 0) {
    throw std::logic_error("introduce: vertex " + std::to_string(v) + " already in child bag");
  }
  std::vector<Vertex> bag = child.bag;
  bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
  if (static_cast<int>(bag.size()) > kMaxBagSize) throw InputError("bag too large");
  const int n = static_cast<int>(bag.size());
  const int p = bag_position(bag, v);

  std::vector<std::optional<bool>> relation(n);
  for (int q = 0; q < n; ++q) {
    if (q != p) relation[q] = g.edge_fusable(v, bag[q]);
  }
  auto shift = [p](std::uint8_t to) {
    return to == kDangle ? to : static_cast<std::uint8_t>(to + (to >= p ? 1 : 0));
  };

  TableBuilder out(bag, opts.record);
  for (int ci = 0; ci < static_cast<int>(child.solutions.size()); ++ci) {
    const PartialSolution& s = child.solutions[ci];
    PartialSolution base;
    base.colors.resize(n);
    base.arms.resize(n);
    int used = 0;
    for (int i = 0; i < n - 1; ++i) {
      const int ni = i + (i >= p ? 1 : 0);
      base.colors[ni] = s.colors[i];
      used = std::max(used, s.colors[i] + 1);
      for (int side = 0; side < 2; ++side) {
        base.arms[ni][side] = {shift(s.arms[i][side].to), s.arms[i][side].length};
      }
    }
    const int limit = opts.color_symmetry ? std::min(used + 1, num_colors) : num_colors;

    for (int c = 0; c < limit; ++c) {
      std::array<int, 2> nbrs{};
      int count = 0;
      bool ok = true;
      for (int q = 0; q < n && ok; ++q) {
        if (q == p || base.colors[q] != c || !relation[q]) continue;
        if (!*relation[q] || count == 2) {
          ok = false;  // non-F edge inside the class, or degree above two
        } else {
          nbrs[count++] = q;
        }
      }
      if (!ok) continue;

      int total = count;
      for (int i = 0; i < count && ok; ++i) {
        if (free_end(base.arms[nbrs[i]]) == nullptr) ok = false;
      }
      if (!ok) continue;
      if (count >= 1) {
        const Walk first = walk_from(base.arms, nbrs[0]);
        if (count == 2 && first.end == nbrs[1]) continue;  // would close a cycle
        total += first.length;
        if (count == 2) total += walk_from(base.arms, nbrs[1]).length;
      }
      if (total > k) continue;

      PartialSolution next = base;
      next.colors[p] = static_cast<std::uint8_t>(c);
      for (int i = 0; i < count; ++i) {
        const int q = nbrs[i];
        *free_end(next.arms[q]) = Arm{static_cast<std::uint8_t>(p), 1};
        sort_pair(next.arms[q]);
        next.arms[p][i] = Arm{static_cast<std::uint8_t>(q), 1};
      }
      sort_pair(next.arms[p]);
      std::vector<std::uint8_t> perm = normalize(next.colors, num_colors, opts.color_symmetry);
      out.add(std::move(next), Backpointer{ci, -1, c, std::move(perm)});
    }
  }
  return std::move(out).finish();
}

SolutionTable process_forget(const SolutionTable& child, Vertex v, int k, int num_colors,
                             const DpOptions& opts) {
  check_parameters(k, num_colors);
  const int p = bag_position(child.bag, v);
  if (p < 0) throw std::logic_error("forget: vertex " + std::to_string(v) + " not in child bag");
  std::vector<Vertex> bag = child.bag;
  bag.erase(bag.begin() + p);
  const auto pos = static_cast<std::uint8_t>(p);

  TableBuilder out(bag, opts.record);
  for (int ci = 0; ci < static_cast<int>(child.solutions.size()); ++ci) {
    const PartialSolution& s = child.solutions[ci];
    PartialSolution next = s;
    auto replace = [&](int at, Arm from, Arm to) {
      for (Arm& a : next.arms[at]) {
        if (a == from) {
          a = to;
          break;
        }
      }
    };
    const ArmPair a = s.arms[p];
    // Links sort before dangles, so a[0] is a link whenever one exists.
    if (!a[1].is_dangle()) {
      const std::uint8_t merged = clamp_length(a[0].length + a[1].length, k);
      replace(a[0].to, {pos, a[0].length}, {a[1].to, merged});
      replace(a[1].to, {pos, a[1].length}, {a[0].to, merged});
    } else if (!a[0].is_dangle()) {
      replace(a[0].to, {pos, a[0].length}, {kDangle, clamp_length(a[0].length + a[1].length, k)});
    }
    // Two dangles: the path is complete; its length was checked when built.

    next.colors.erase(next.colors.begin() + p);
    next.arms.erase(next.arms.begin() + p);
    for (ArmPair& pair : next.arms) {
      for (Arm& arm : pair) {
        if (!arm.is_dangle() && arm.to > pos) --arm.to;
      }
      sort_pair(pair);
    }
    std::vector<std::uint8_t> perm = normalize(next.colors, num_colors, opts.color_symmetry);
    out.add(std::move(next), Backpointer{ci, -1, -1, std::move(perm)});
  }
  return std::move(out).finish();
}

SolutionTable process_join(const SolutionTable& left, const SolutionTable& right, const Graph& g,
                           int k, int num_colors, const DpOptions& opts) {
  (void)g;
  check_parameters(k, num_colors);
  if (left.bag != right.bag) throw std::logic_error("join: children have different bags");
  const int n = static_cast<int>(left.bag.size());

  auto key_of = [](const PartialSolution& s) {
    return std::string_view(reinterpret_cast<const char*>(s.colors.data()), s.colors.size());
  };
  std::unordered_map<std::string_view, std::vector<int>> by_coloring;
  for (int ri = 0; ri < static_cast<int>(right.solutions.size()); ++ri) {
    by_coloring[key_of(right.solutions[ri])].push_back(ri);
  }

  TableBuilder out(left.bag, opts.record);
  std::vector<char> visited(n);
  for (int li = 0; li < static_cast<int>(left.solutions.size()); ++li) {
    const PartialSolution& s1 = left.solutions[li];
    auto match = by_coloring.find(key_of(s1));
    if (match == by_coloring.end()) continue;
    for (int ri : match->second) {
      const PartialSolution& s2 = right.solutions[ri];
      PartialSolution merged;
      merged.colors = s1.colors;
      merged.arms.resize(n);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        std::array<Arm, 4> arms{};
        int count = 0;
        for (const Arm& a : s1.arms[i]) {
          if (!a.is_dangle() || a.length > 0) arms[count++] = a;
        }
        for (const Arm& b : s2.arms[i]) {
          if (b.is_dangle()) {
            if (b.length > 0) arms[count++] = b;
            continue;
          }
          bool shared = false;
          for (const Arm& a : s1.arms[i]) {
            if (a.is_dangle() || a.to != b.to) continue;
            // Same pair linked in both children: one G-edge seen twice, or
            // two distinct shrunken paths (a 2-cycle in the multigraph).
            if (a.length == 1 && b.length == 1) {
              shared = true;
            } else {
              ok = false;
            }
          }
          if (!shared) arms[count++] = b;
        }
        if (!ok || count > 2) {
          ok = false;
          break;
        }
        merged.arms[i] = {arms[0], arms[1]};
        if (count < 2) merged.arms[i][1] = Arm{};
        if (count < 1) merged.arms[i][0] = Arm{};
        sort_pair(merged.arms[i]);
      }
      if (!ok) continue;

      std::fill(visited.begin(), visited.end(), 0);
      for (int i = 0; i < n && ok; ++i) {
        if (visited[i] || !has_dangle(merged.arms[i])) continue;
        if (walk_from(merged.arms, i, &visited).length > k) ok = false;
      }
      // Whatever was not reached from a path end lies on a cycle.
      if (!ok || std::find(visited.begin(), visited.end(), 0) != visited.end()) continue;
      out.add(std::move(merged), Backpointer{li, ri, -1, {}});
    }
  }
  return std::move(out).finish();
}

DecideResult decide(const Graph& g, const NiceTreeDecomposition& ntd, int k, int num_colors,
                    const DpOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  check_parameters(k, num_colors);
  if (TdReport r = validate_nice(g, ntd); !r.valid) {
    throw InputError("decide: invalid nice tree decomposition: " + r.message);
  }
  DecideResult result;
  auto finish = [&]() -> DecideResult {
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(result);
  };
  if (ntd.nodes.empty()) {
    result.colorable = true;
    if (opts.record) result.coloring = Coloring{{}, num_colors};
    return finish();
  }

  const int nn = static_cast<int>(ntd.nodes.size());
  std::vector<SolutionTable> tables(nn);
  result.stats.table_sizes.assign(nn, 0);
  auto release = [&](int idx) {
    if (!opts.record) tables[idx] = SolutionTable{};
  };
  for (int i = 0; i < nn; ++i) {
    const NiceNode& node = ntd.nodes[i];
    switch (node.kind) {
      case NodeKind::kLeaf:
        tables[i] = process_leaf(node.vertex, num_colors, opts);
        break;
      case NodeKind::kIntroduce:
        tables[i] = process_introduce(tables[node.children[0]], node.vertex, g, k, num_colors, opts);
        release(node.children[0]);
        break;
      case NodeKind::kForget:
        tables[i] = process_forget(tables[node.children[0]], node.vertex, k, num_colors, opts);
        release(node.children[0]);
        break;
      case NodeKind::kJoin:
        tables[i] = process_join(tables[node.children[0]], tables[node.children[1]], g, k,
                                 num_colors, opts);
        release(node.children[0]);
        release(node.children[1]);
        break;
    }
    const std::size_t size = tables[i].solutions.size();
    result.stats.table_sizes[i] = size;
    result.stats.total_states += size;
    result.stats.peak_table = std::max(result.stats.peak_table, size);
    if (size == 0) return finish();
  }

  const SolutionTable& root = tables[ntd.root];
  result.colorable = !root.solutions.empty();
  if (result.colorable && opts.record) {
    const auto best = std::min_element(root.solutions.begin(), root.solutions.end());
    result.coloring =
        reconstruct(ntd, tables, static_cast<int>(best - root.solutions.begin()), num_colors);
  }
  return finish();
}

Coloring reconstruct(const NiceTreeDecomposition& ntd, std::span<const SolutionTable> tables,
                     int root_solution, int num_colors) {
  Coloring out{std::vector<int>(ntd.num_vertices, -1), num_colors};
  if (ntd.nodes.empty()) return out;
  if (tables.size() != ntd.nodes.size()) throw std::logic_error("reconstruct: table count mismatch");

  struct Frame {
    int node;
    int solution;
    std::vector<std::uint8_t> to_global;
  };
  std::vector<std::uint8_t> identity(num_colors);
  for (int c = 0; c < num_colors; ++c) identity[c] = static_cast<std::uint8_t>(c);
  std::vector<Frame> stack{{ntd.root, root_solution, identity}};

  auto assign = [&](Vertex v, int color) {
    if (out.color[v] != -1 && out.color[v] != color) {
      throw InternalError("reconstruct: vertex " + std::to_string(v) + " colored inconsistently");
    }
    out.color[v] = color;
  };
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const SolutionTable& table = tables[f.node];
    if (table.links.size() != table.solutions.size() || f.solution < 0 ||
        f.solution >= static_cast<int>(table.links.size())) {
      throw std::logic_error("reconstruct: backpointers missing");
    }
    const Backpointer& link = table.links[f.solution];
    auto through = [&](int c) { return link.permutation.empty() ? c : link.permutation[c]; };
    std::vector<std::uint8_t> child_map(num_colors);
    for (int c = 0; c < num_colors; ++c) child_map[c] = f.to_global[through(c)];

    const NiceNode& node = ntd.nodes[f.node];
    switch (node.kind) {
      case NodeKind::kLeaf:
        assign(node.vertex, f.to_global[through(link.color)]);
        break;
      case NodeKind::kIntroduce:
        assign(node.vertex, f.to_global[through(link.color)]);
        stack.push_back({node.children[0], link.first, std::move(child_map)});
        break;
      case NodeKind::kForget:
        stack.push_back({node.children[0], link.first, std::move(child_map)});
        break;
      case NodeKind::kJoin:
        stack.push_back({node.children[0], link.first, f.to_global});
        stack.push_back({node.children[1], link.second, std::move(f.to_global)});
        break;
    }
  }
  for (Vertex v = 0; v < ntd.num_vertices; ++v) {
    if (out.color[v] == -1) throw InternalError("reconstruct: vertex " + std::to_string(v) + " uncolored");
  }
  return out;
}

}  // namespace kpath
