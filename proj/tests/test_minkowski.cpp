#include "doctest.h"
#include "oracles.hpp"
#include "sumset/corpus.hpp"
#include "sumset/minkowski.hpp"

using namespace sumset;

TEST_CASE("sum examples") {
  GridSet sq = GridSet::unit_cube(2, 1);
  GridSet doubled = minkowski_sum(sq, sq);
  CHECK(same_set(doubled, GridSet::box(1, Anchor{0, 0}, Anchor{2, 2})));
  CHECK(volume(doubled) == 4);

  GridSet with_far = unite(sq, GridSet::from_cells(2, 1, {{10, 10}}));
  GridSet s = minkowski_sum(sq, with_far);
  CHECK(volume(s) == 8);
  CHECK(same_set(s, unite(GridSet::box(1, Anchor{0, 0}, Anchor{2, 2}), GridSet::box(1, Anchor{10, 10}, Anchor{12, 12}))));

  GridSet one = GridSet::unit_cube(1, 1);
  CHECK(volume(minkowski_sum(one, one)) == 2);
  CHECK(same_set(minkowski_sum_fast(sq, sq), doubled));
}

TEST_CASE("naive and fast paths agree with the dense oracle") {
  Rng rng(instance_seed(kDefaultSeed, 1));
  GridCorpusConfig cfg;
  for (int i = 0; i < 60; ++i) {
    int d = static_cast<int>(rng.range(1, 2));
    std::int64_t q = rng.pick(cfg.resolutions);
    GridSet a = random_grid_set(rng, cfg, d, q);
    GridSet b = random_grid_set(rng, cfg, d, q);
    GridSet naive = minkowski_sum(a, b);
    CHECK(oracle::cell_set(naive) == oracle::dense_sum(a, b));
    CHECK(minkowski_sum_fast(a, b) == naive);
    CHECK(sum(a, b) == naive);
  }
}

TEST_CASE("sum is commutative and associative") {
  Rng rng(instance_seed(kDefaultSeed, 2));
  GridCorpusConfig cfg;
  cfg.max_boxes = 3;
  for (int i = 0; i < 20; ++i) {
    int d = static_cast<int>(rng.range(1, 3));
    GridSet a = random_grid_set(rng, cfg, d, 2);
    GridSet b = random_grid_set(rng, cfg, d, 2);
    GridSet c = random_grid_set(rng, cfg, d, 2);
    CHECK(sum(a, b) == sum(b, a));
    CHECK(sum(sum(a, b), c) == sum(a, sum(b, c)));
  }
}

TEST_CASE("sum commutes with refinement") {
  GridSet a = GridSet::from_cells(2, 1, {{0, 0}, {3, 1}});
  GridSet b = GridSet::from_cells(2, 1, {{1, 1}, {-2, 0}});
  CHECK(same_set(refine(sum(a, b), 3), sum(refine(a, 3), refine(b, 3))));
}

TEST_CASE("sum of sets at different resolutions") {
  GridSet a = GridSet::unit_cube(1, 1);
  GridSet b = GridSet::box(2, RationalVector{0}, RationalVector{make_rational(1, 2)});
  CHECK(volume(sum(a, b)) == make_rational(3, 2));
}

TEST_CASE("scaled_sum examples") {
  GridSet sq = GridSet::unit_cube(2, 1);
  GridSet s = scaled_sum(sq, sq, RationalScalar(1, 2));
  CHECK(volume(s) == 1);
  CHECK(same_set(s, sq));
  GridSet line = GridSet::unit_cube(1, 1);
  CHECK(volume(scaled_sum(line, line, RationalScalar(1, 3))) == 1);
}

TEST_CASE("scaled_sum approaches the sharp value as q grows") {
  const RationalScalar t(1, 2);
  Rational prev(100);
  for (std::int64_t q : {2, 4, 8, 16}) {
    GridSet a = GridSet::unit_cube(2, q);
    GridSet b = unite(a, GridSet::from_cells(2, q, {{8 * q, 8 * q}}));
    Rational v = volume(scaled_sum(a, b, t));
    Rational side = make_rational(1, 2) + make_rational(1, 2 * q);
    CHECK(v == 1 + side * side);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("iterated_sum examples") {
  GridSet s = GridSet::from_cells(2, 2, {{0, 0}, {3, 1}});
  CHECK(iterated_sum(s, 1) == s);
  CHECK(volume(iterated_sum(GridSet::unit_cube(1, 1), 3)) == 3);
  GridSet a = unite(GridSet::unit_cube(2, 4), GridSet::from_cells(2, 4, {{40, 40}}));
  // Pieces: [0,2]^2, [0,1+1/4]^2 + v, [0,2/4]^2 + 2v.
  Rational expect = 4 + make_rational(25, 16) + make_rational(1, 4);
  CHECK(volume(iterated_sum(a, 2)) == expect);
  CHECK_THROWS_AS(iterated_sum(s, 0), InputError);
}

TEST_CASE("dense block sum agrees with naive block sum") {
  Rng rng(instance_seed(kDefaultSeed, 3));
  for (int i = 0; i < 30; ++i) {
    int d = static_cast<int>(rng.range(1, 3));
    std::vector<std::int64_t> l, r;
    for (int c = 0; c < 20; ++c) for (int k = 0; k < d; ++k) l.push_back(rng.range(0, 9));
    for (int c = 0; c < 15; ++c) for (int k = 0; k < d; ++k) r.push_back(rng.range(-3, 6));
    normalize_anchors(d, l);
    normalize_anchors(d, r);
    std::int64_t side = rng.range(1, 3);
    CHECK(detail::block_sum_dense(d, l, r, side) == detail::block_sum_naive(d, l, r, side));
  }
}

TEST_CASE("cluster splitting separates far groups") {
  std::vector<std::int64_t> flat{0, 1, 2, 100, 101, 500};
  auto parts = detail::split_clusters(1, flat);
  CHECK(parts.size() >= 2);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  CHECK(total == flat.size());
}

TEST_CASE("sum respects the cell cap") {
  Limits lim;
  lim.max_cells = 50;
  GridSet a = GridSet::unit_cube(2, 8);
  CHECK_THROWS_AS(sum(a, a, lim), CapacityError);
}
