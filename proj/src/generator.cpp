#include "kpath/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kpath {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

void check_params(const GenParams& p) {
  if (p.target_vertices < 0) throw InputError("target vertex count must be non-negative");
  if (p.pitch <= 0) throw InputError("pitch must be positive");
  if (p.dsa_min_distance < 0 || p.dsa_min_distance > p.lithography_distance) {
    throw InputError("need 0 <= dsa_min_distance <= lithography_distance");
  }
  if (p.region_width < 0 || p.region_height < 0 || p.area_per_vertex <= 0) {
    throw InputError("region dimensions must be positive");
  }
  if (p.max_attempts_per_point <= 0) throw InputError("attempt budget must be positive");
}

GeneratedInstance generate(const GenParams& params) {
  check_params(params);
  const int n = params.target_vertices;
  long long w = params.region_width;
  long long h = params.region_height;
  if (w == 0 || h == 0) {
    const auto side = static_cast<long long>(
        std::ceil(std::sqrt(static_cast<double>(std::max(n, 1)) * params.area_per_vertex)));
    w = w == 0 ? side : w;
    h = h == 0 ? side : h;
  }
  if (w <= 0 || h <= 0) throw InputError("region dimensions must be positive");

  const long long cell = std::max(params.pitch, params.lithography_distance);
  const long long cols = w / cell + 1;
  const long long rows = h / cell + 1;
  if (cols * rows > 100'000'000) throw InputError("region too large");
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(cols * rows));
  auto cell_of = [&](const Point& p) { return (p.y / cell) * cols + p.x / cell; };

  auto dist2 = [](const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  };
  // Calls fn(index) for every placed point in the 3x3 block of cells around p.
  auto for_near = [&](const Point& p, auto&& fn) {
    const long long cx = p.x / cell, cy = p.y / cell;
    for (long long y = std::max(cy - 1, 0LL); y <= std::min(cy + 1, rows - 1); ++y) {
      for (long long x = std::max(cx - 1, 0LL); x <= std::min(cx + 1, cols - 1); ++x) {
        for (int idx : grid[static_cast<std::size_t>(y * cols + x)]) {
          if (!fn(idx)) return false;
        }
      }
    }
    return true;
  };

  Rng rng(params.seed);
  GeneratedInstance out;
  out.layout.reserve(n);
  const long long pitch2 = params.pitch * params.pitch;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_attempts_per_point && !placed; ++attempt) {
      const Point p{static_cast<long long>(rng.below(static_cast<std::uint64_t>(w))),
                    static_cast<long long>(rng.below(static_cast<std::uint64_t>(h)))};
      const bool clear =
          for_near(p, [&](int idx) { return dist2(p, out.layout[idx]) >= pitch2; });
      if (!clear) continue;
      grid[static_cast<std::size_t>(cell_of(p))].push_back(i);
      out.layout.push_back(p);
      placed = true;
    }
    if (!placed) {
      throw GenerationError("could not place vertex " + std::to_string(i) + " of " +
                            std::to_string(n) + " in a " + std::to_string(w) + "x" +
                            std::to_string(h) + " region");
    }
  }

  const long long lith2 = params.lithography_distance * params.lithography_distance;
  const long long dsa2 = params.dsa_min_distance * params.dsa_min_distance;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for_near(out.layout[i], [&](int j) {
      if (j > i) {
        const long long d2 = dist2(out.layout[i], out.layout[j]);
        if (d2 <= lith2) edges.push_back({i, j, d2 >= dsa2});
      }
      return true;
    });
  }
  out.instance = {Graph(n, edges), params.k};
  return out;
}

Instance chain_instance(int n, std::uint64_t seed, int f_percent, int k) {
  if (n < 0) throw InputError("chain length must be non-negative");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int step = 1; step <= 2 && i + step < n; ++step) {
      const bool fusable = static_cast<int>(rng.below(100)) < f_percent;
      edges.push_back({i, i + step, fusable});
    }
  }
  return {Graph(n, edges), k};
}

}  // namespace kpath
