#include "kpath/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <queue>
#include <string>
#include <thread>

namespace kpath {

SplitPlan preprocess_split(const Graph& g, bool split_bridges) {
  SplitPlan plan;
  if (!split_bridges) {
    plan.parts = connected_components(g);
    return plan;
  }
  plan.cut_edges = find_ef_cut_edges(g);
  const Graph pruned = remove_edges(g, plan.cut_edges);
  plan.parts = connected_components(pruned);
  return plan;
}

Coloring recombine(const Graph& g, const SplitPlan& plan, std::span<const Coloring> parts) {
  if (parts.size() != plan.parts.size()) throw InputError("recombine: one coloring per part required");
  const int n = g.num_vertices();
  Coloring out{std::vector<int>(n, -1), 0};
  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Subgraph& part = plan.parts[i];
    if (parts[i].color.size() != part.to_original.size()) {
      throw InputError("recombine: part coloring has the wrong size");
    }
    out.num_colors = std::max(out.num_colors, parts[i].num_colors);
    for (std::size_t local = 0; local < part.to_original.size(); ++local) {
      out.color[part.to_original[local]] = parts[i].color[local];
      part_of[part.to_original[local]] = static_cast<int>(i);
    }
  }
  if (plan.cut_edges.empty()) return out;
  out.num_colors = std::max(out.num_colors, 2);

  // Cut edges are bridges, so parts and cut edges form a forest; fix each
  // newly reached part with one color swap.
  std::vector<std::vector<Edge>> incident(parts.size());
  for (const Edge& e : plan.cut_edges) {
    incident[part_of[e.u]].push_back(e);
    incident[part_of[e.v]].push_back(e);
  }
  std::vector<char> reached(parts.size(), 0);
  for (std::size_t start = 0; start < parts.size(); ++start) {
    if (reached[start]) continue;
    reached[start] = 1;
    std::queue<int> q;
    q.push(static_cast<int>(start));
    while (!q.empty()) {
      const int p = q.front();
      q.pop();
      for (const Edge& e : incident[p]) {
        const Vertex near = part_of[e.u] == p ? e.u : e.v;
        const Vertex far = near == e.u ? e.v : e.u;
        const int other = part_of[far];
        if (reached[other]) continue;
        reached[other] = 1;
        q.push(other);
        const int clash = out.color[near];
        if (out.color[far] != clash) continue;
        const int spare = clash == 0 ? 1 : 0;
        for (Vertex v : plan.parts[other].to_original) {
          if (out.color[v] == clash) {
            out.color[v] = spare;
          } else if (out.color[v] == spare) {
            out.color[v] = clash;
          }
        }
      }
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct PartOutcome {
  int chromatic = 0;
  int width = -1;
  std::optional<Coloring> coloring;
  double decompose_seconds = 0.0;
  double nicify_seconds = 0.0;
  std::map<int, double> decide_seconds;
  std::size_t total_states = 0;
  std::size_t peak_table = 0;
  int nice_nodes = 0;
};

PartOutcome solve_part(const Graph& g, int k, const SolveOptions& opts) {
  PartOutcome out;
  auto t = Clock::now();
  const TreeDecomposition td = heuristic_decompose(g, opts.strategy);
  out.decompose_seconds = seconds_since(t);

  t = Clock::now();
  const int root = opts.root_bag < static_cast<int>(td.bags.size()) ? opts.root_bag : -1;
  const NiceTreeDecomposition ntd = make_nice(td, root);
  out.nicify_seconds = seconds_since(t);
  out.nice_nodes = static_cast<int>(ntd.nodes.size());
  out.width = width(td);

  const DpOptions dp{opts.color_symmetry, opts.certificate};
  for (int colors = 1; colors <= out.width + 1; ++colors) {
    DecideResult r = decide(g, ntd, k, colors, dp);
    out.decide_seconds[colors] += r.stats.seconds;
    out.total_states += r.stats.total_states;
    out.peak_table = std::max(out.peak_table, r.stats.peak_table);
    if (r.colorable) {
      out.chromatic = colors;
      out.coloring = std::move(r.coloring);
      return out;
    }
  }
  if (g.num_vertices() == 0) return out;
  throw InternalError("no k-path coloring with width+1 = " + std::to_string(out.width + 1) +
                      " colors on a part of " + std::to_string(g.num_vertices()) + " vertices");
}

}  // namespace

SolveResult chromatic_number(const Graph& g, int k, const SolveOptions& opts) {
  const auto start = Clock::now();
  if (k < 0 || k > kMaxK) throw InputError("k must be in 0.." + std::to_string(kMaxK));
  const SplitPlan plan = preprocess_split(g, opts.split_bridges);
  const int count = static_cast<int>(plan.parts.size());
  std::vector<PartOutcome> outcomes(count);

  const int jobs = std::clamp(opts.jobs, 1, std::max(count, 1));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) outcomes[i] = solve_part(plan.parts[i].graph, k, opts);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (int i = next++; i < count; i = next++) {
            outcomes[i] = solve_part(plan.parts[i].graph, k, opts);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SolveResult result;
  for (int i = 0; i < count; ++i) {
    const PartOutcome& o = outcomes[i];
    result.chromatic = std::max(result.chromatic, o.chromatic);
    result.width = std::max(result.width, o.width);
    result.stats.decompose_seconds += o.decompose_seconds;
    result.stats.nicify_seconds += o.nicify_seconds;
    for (auto [colors, secs] : o.decide_seconds) result.stats.decide_seconds[colors] += secs;
    result.stats.total_states += o.total_states;
    result.stats.peak_table = std::max(result.stats.peak_table, o.peak_table);
    result.stats.max_part_size =
        std::max(result.stats.max_part_size, plan.parts[i].graph.num_vertices());
    result.stats.max_nice_nodes = std::max(result.stats.max_nice_nodes, o.nice_nodes);
  }
  result.stats.num_parts = count;
  if (!plan.cut_edges.empty()) {
    // Gluing the part decompositions with one {u, v} bag per cut edge gives
    // a decomposition of g of width max(part widths, 1).
    result.chromatic = std::max(result.chromatic, 2);
    result.width = std::max(result.width, 1);
  }
  if (result.chromatic > result.width + 1) {
    throw InternalError("chromatic number " + std::to_string(result.chromatic) +
                        " exceeds width + 1 = " + std::to_string(result.width + 1));
  }

  if (opts.certificate) {
    std::vector<Coloring> colorings;
    colorings.reserve(count);
    for (auto& o : outcomes) colorings.push_back(std::move(*o.coloring));
    result.coloring = recombine(g, plan, colorings);
  }
  result.stats.total_seconds = seconds_since(start);
  return result;
}

}  // namespace kpath
