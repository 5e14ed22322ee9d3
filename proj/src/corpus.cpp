#include "sumset/corpus.hpp"

#include <algorithm>
#include <numeric>

namespace sumset {

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the 2^64 mod n smallest outputs so the remainder is unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

IntervalSet random_interval_set(Rng& rng, int max_parts, std::int64_t den, std::int64_t lo, std::int64_t hi) {
  const std::int64_t span = (hi - lo) * den;
  std::vector<Interval> parts;
  auto count = rng.range(1, max_parts);
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t a = rng.range(0, span);
    std::int64_t b = rng.chance(1, 8) ? a : rng.range(a, span);
    parts.push_back({make_rational(lo * den + a, den), make_rational(lo * den + b, den)});
  }
  return IntervalSet(std::move(parts));
}

IntervalSet random_capped_interval_set(Rng& rng, const Rational& cap, int max_parts, std::int64_t den) {
  const auto budget = to_int64(floor(cap * den));
  std::int64_t left = rng.range(0, budget);
  std::vector<Interval> parts;
  auto count = rng.range(1, max_parts);
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t len = i + 1 == count ? left : rng.range(0, left);
    left -= len;
    std::int64_t a = rng.range(0, den - len);
    parts.push_back({make_rational(a, den), make_rational(a + len, den)});
  }
  return IntervalSet(std::move(parts));
}

GridSet random_grid_set(Rng& rng, const GridCorpusConfig& config, int dim, std::int64_t q) {
  std::vector<std::int64_t> flat;
  const auto d = static_cast<std::size_t>(dim);
  auto boxes = rng.range(1, config.max_boxes);
  for (std::int64_t b = 0; b < boxes; ++b) {
    Anchor lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = rng.range(0, config.extent * q - 1);
      hi[i] = lo[i] + rng.range(1, config.max_side * q);
    }
    GridSet block = GridSet::box(q, lo, hi);
    const auto& cells = block.flat();
    flat.insert(flat.end(), cells.begin(), cells.end());
  }
  auto far = rng.range(0, config.max_far_cells);
  for (std::int64_t f = 0; f < far; ++f) {
    for (std::size_t i = 0; i < d; ++i) {
      flat.push_back(rng.range(config.far_distance * q, (config.far_distance + 4) * q));
    }
  }
  return GridSet(dim, q, std::move(flat));
}

std::pair<GridSet, GridSet> random_equal_volume_pair(Rng& rng, const GridCorpusConfig& config, int dim,
                                                     std::int64_t q) {
  GridSet a = random_grid_set(rng, config, dim, q);
  GridSet b = random_grid_set(rng, config, dim, q);
  bool a_larger = a.size() > b.size();
  const GridSet& big = a_larger ? a : b;
  const std::size_t keep = std::min(a.size(), b.size());
  std::vector<std::size_t> order(big.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < keep; ++i) {
    std::swap(order[i], order[i + rng.below(order.size() - i)]);
  }
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < keep; ++i) {
    auto cell = big.cell(order[i]);
    flat.insert(flat.end(), cell.begin(), cell.end());
  }
  GridSet trimmed(dim, q, std::move(flat));
  return a_larger ? std::pair{trimmed, b} : std::pair{a, trimmed};
}

Polytope random_polytope(Rng& rng, int dim, int vertices, std::int64_t range, std::int64_t den) {
  for (;;) {
    std::vector<RationalVector> pts;
    for (int v = 0; v < vertices; ++v) {
      RationalVector p;
      for (int i = 0; i < dim; ++i) p.push_back(make_rational(rng.range(-range * den, range * den), den));
      pts.push_back(std::move(p));
    }
    Polytope poly = hull_of(dim, pts);
    if (hull_volume(poly) > 0) return poly;
  }
}

}  // namespace sumset
