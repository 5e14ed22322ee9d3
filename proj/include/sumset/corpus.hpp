#pragma once

// Seeded random instance generators. Every generator draws only from Rng, whose
// integer sampling is fully specified here (mt19937_64 plus rejection), so a
// (seed, instance) pair reproduces the same instance on every platform.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sumset/grid_set.hpp"
#include "sumset/hull.hpp"
#include "sumset/intervals.hpp"
#include "sumset/rational.hpp"

namespace sumset {

inline constexpr std::uint64_t kDefaultSeed = 0xB4A11;

/// Seed for instance `index` of a corpus with base seed `seed` (splitmix64).
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& options) {
    return options[below(options.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Up to max_parts closed intervals with endpoints in (1/den)Z inside [lo, hi];
/// roughly one part in eight is a single point. Never empty.
IntervalSet random_interval_set(Rng& rng, int max_parts = 4, std::int64_t den = 64, std::int64_t lo = 0,
                                std::int64_t hi = 1);

/// As above inside [0,1], with total measure at most cap.
IntervalSet random_capped_interval_set(Rng& rng, const Rational& cap, int max_parts = 3, std::int64_t den = 64);

struct GridCorpusConfig {
  std::vector<int> dims{1, 2, 3};
  std::vector<std::int64_t> resolutions{1, 2, 4};
  int max_boxes = 6;
  int max_far_cells = 2;
  std::int64_t extent = 3;        // box corners in [0, extent) (continuous units)
  std::int64_t max_side = 2;      // box sides in (0, max_side]
  std::int64_t far_distance = 8;  // far cells start this far out
};

/// Union of 1..max_boxes random boxes plus 0..max_far_cells isolated far cells.
GridSet random_grid_set(Rng& rng, const GridCorpusConfig& config, int dim, std::int64_t q);

/// Two random sets at the same resolution; cells are removed at random from the
/// larger one until both volumes agree.
std::pair<GridSet, GridSet> random_equal_volume_pair(Rng& rng, const GridCorpusConfig& config, int dim,
                                                     std::int64_t q);

/// Hull of `vertices` random points with coordinates in (1/den)Z inside
/// [-range, range]^dim, redrawn until full-dimensional.
Polytope random_polytope(Rng& rng, int dim, int vertices, std::int64_t range = 4, std::int64_t den = 8);

}  // namespace sumset
