#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "kpath/graph.hpp"
#include "kpath/instance_io.hpp"

namespace kpath {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometric conflict-graph parameters, in integer length units. Two points
/// conflict (edge) when their distance is at most lithography_distance; the
/// edge is fusable when the distance is also at least dsa_min_distance.
struct GenParams {
  int target_vertices = 150;
  /// Region size; 0 derives a square region from area_per_vertex.
  long long region_width = 0;
  long long region_height = 0;
  long long area_per_vertex = 1600;
  long long pitch = 20;
  long long lithography_distance = 28;
  long long dsa_min_distance = 21;
  std::uint64_t seed = 1;
  int max_attempts_per_point = 5000;
  int k = 1;
};

/// Throws InputError unless 0 <= dsa_min <= lithography, pitch > 0 and the
/// target count is non-negative.
void check_params(const GenParams& params);

struct GeneratedInstance {
  Instance instance;
  std::vector<Point> layout;
};

/// Random sequential placement on the integer grid with rejection of points
/// closer than `pitch`. Deterministic in the seed on every platform. Throws
/// GenerationError if a point cannot be placed within the attempt budget.
GeneratedInstance generate(const GenParams& params);

/// Triangle strip on n vertices (edges i~i+1, i~i+2): treewidth 2, clique
/// number 3. Each edge is fusable with probability f_percent/100.
Instance chain_instance(int n, std::uint64_t seed, int f_percent = 95, int k = 1);

/// std::mt19937_64 with an unbiased bounded draw. The standard fixes the
/// engine's output sequence but not uniform_int_distribution's, so the
/// bounded draw is done here to keep instances identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace kpath
