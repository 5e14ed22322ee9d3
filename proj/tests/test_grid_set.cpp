#include "doctest.h"
#include "sumset/grid_set.hpp"

using namespace sumset;

TEST_CASE("volume examples") {
  CHECK(volume(GridSet::unit_cube(2, 1)) == 1);
  CHECK(GridSet::unit_cube(2, 4).size() == 16);
  CHECK(volume(GridSet::unit_cube(2, 4)) == 1);
  CHECK(volume(GridSet::from_cells(2, 2, {{0, 0}, {3, 3}})) == make_rational(1, 2));
}

TEST_CASE("anchors are sorted and deduplicated") {
  GridSet s = GridSet::from_cells(2, 1, {{3, 1}, {0, 0}, {3, 1}, {-2, 5}});
  CHECK(s.size() == 3);
  CHECK(s.cells() == std::vector<Anchor>{{-2, 5}, {0, 0}, {3, 1}});
  CHECK(s.contains_cell(std::vector<std::int64_t>{0, 0}));
  CHECK_FALSE(s.contains_cell(std::vector<std::int64_t>{1, 0}));
  CHECK(s.lower() == Anchor{-2, 0});
  CHECK(s.upper() == Anchor{3, 5});
}

TEST_CASE("refine examples") {
  GridSet r = refine(GridSet::unit_cube(1, 1), 3);
  CHECK(r.resolution() == 3);
  CHECK(r.cells() == std::vector<Anchor>{{0}, {1}, {2}});
  GridSet s = GridSet::from_cells(2, 2, {{0, 1}, {5, -3}});
  CHECK(refine(s, 1) == s);
  GridSet sq = refine(GridSet::unit_cube(2, 1), 2);
  CHECK(sq.size() == 4);
  CHECK(volume(sq) == 1);
}

TEST_CASE("refinement preserves volume") {
  GridSet s = GridSet::from_cells(3, 2, {{0, 0, 0}, {1, 2, 3}, {-4, 0, 1}});
  for (std::int64_t m : {1, 2, 3, 5}) CHECK(volume(refine(s, m)) == volume(s));
  CHECK(same_set(s, refine(s, 4)));
  CHECK(refine_to(s, 6).resolution() == 6);
  CHECK_THROWS(refine_to(s, 3));
}

TEST_CASE("caps raise CapacityError") {
  Limits lim;
  lim.max_cells = 10;
  CHECK_THROWS_AS(refine(GridSet::unit_cube(2, 1), 4, lim), CapacityError);
  lim = {};
  lim.max_resolution = 4;
  CHECK_THROWS_AS(refine(GridSet::unit_cube(1, 1), 8, lim), CapacityError);
}

TEST_CASE("translate and scale examples") {
  GridSet s = GridSet::unit_cube(2, 2);
  CHECK(translate(s, {0, 0}) == s);
  GridSet half = scale(GridSet::unit_cube(2, 1), RationalScalar(1, 2));
  CHECK(volume(half) == make_rational(1, 4));
  CHECK(same_set(half, GridSet::box(2, RationalVector{0, 0}, RationalVector{make_rational(1, 2), make_rational(1, 2)})));
  GridSet moved = translate(GridSet::unit_cube(1, 1), {make_rational(1, 3)});
  CHECK(moved.resolution() == 3);
  CHECK(moved.cells() == std::vector<Anchor>{{1}, {2}, {3}});
}

TEST_CASE("box from rational corners") {
  GridSet b = GridSet::box(4, RationalVector{make_rational(1, 4), 0}, RationalVector{1, make_rational(1, 2)});
  CHECK(b.size() == 6);
  CHECK_THROWS_AS(GridSet::box(2, RationalVector{make_rational(1, 3)}, RationalVector{1}), InputError);
}

TEST_CASE("unite, subset and dimension mismatch") {
  GridSet a = GridSet::unit_cube(2, 1);
  GridSet b = GridSet::from_cells(2, 2, {{4, 4}});
  GridSet u = unite(a, b);
  CHECK(u.resolution() == 2);
  CHECK(volume(u) == make_rational(5, 4));
  CHECK(is_subset(a, u));
  CHECK_FALSE(is_subset(u, a));
  CHECK_THROWS_AS(require_same_dim(a, GridSet::unit_cube(3, 1)), InputError);
}

TEST_CASE("overflowing anchors are rejected") {
  CHECK_THROWS(refine(GridSet::from_cells(1, 1, {{INT64_MAX / 2}}), 4));
}
