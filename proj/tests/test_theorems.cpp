#include "doctest.h"
#include "sumset/corpus.hpp"
#include "sumset/minkowski.hpp"
#include "sumset/theorems.hpp"

#include <sstream>

using namespace sumset;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return make_rational(p, q); }

}  // namespace

TEST_CASE("delta examples") {
  for (int d = 1; d <= 3; ++d) {
    GridSet c = GridSet::unit_cube(d, 2);
    for (auto t : {RationalScalar(1, 2), RationalScalar(1, 3), RationalScalar(3, 4)}) CHECK(delta_t(c, c, t) == 0);
  }
  CHECK_THROWS_AS(delta_t(GridSet::unit_cube(1, 1), GridSet::from_cells(1, 1, {{0}, {2}}), RationalScalar(1, 2)),
                  InputError);
}

TEST_CASE("delta is nonnegative on random equal-volume pairs") {
  Rng rng(instance_seed(kDefaultSeed, 51));
  GridCorpusConfig cfg;
  for (int i = 0; i < 40; ++i) {
    int d = static_cast<int>(rng.range(1, 3));
    auto [a, b] = random_equal_volume_pair(rng, cfg, d, rng.pick(cfg.resolutions));
    CHECK(delta_t(a, b, rng.pick(std::vector<RationalScalar>{{1, 2}, {1, 3}, {1, 4}})) >= 0);
  }
}

TEST_CASE("threshold constants") {
  CHECK(distinct_threshold(2, RationalScalar(1, 2)) == r(1, 4));
  CHECK(distinct_threshold(3, RationalScalar(1, 3)) == r(1, 27));
  CHECK(iterated_threshold(2, 2) == 5);
  CHECK(iterated_threshold(1, 3) == 6);
  CHECK(iterated_threshold(3, 2) == 9);
  // L = (2 / (t(1-t)))^{4d}: 8^4 at d = 1, t = 1/2.
  CHECK(constant_l(1, RationalScalar(1, 2)) == 4096);
  CHECK(constant_c(1, RationalScalar(1, 2)) == 4096);
  CHECK(constant_c(2, RationalScalar(1, 2)) == pow(Rational(8), 16));
}

TEST_CASE("sharp two-set family") {
  auto rep = sharp_family_exact({2, RationalScalar(1, 2), std::nullopt, {8, 8}});
  CHECK(rep.kind == "sharp-two-set");
  CHECK(rep.get("delta") == r(1, 4));
  CHECK(rep.tight);
  CHECK(rep.holds);
  CHECK(rep.get("grid_delta_q2") == r(9, 16));
  CHECK(rep.get("grid_delta_q4") == r(25, 64));
  CHECK(rep.get("grid_delta_q8") == r(81, 256));
  CHECK(rep.get("hull_ratio") == 8);
  CHECK_THROWS_AS(sharp_family_exact({2, RationalScalar(1, 2), std::nullopt, {0, 0}}), InputError);
  CHECK_THROWS_AS(sharp_family_exact({2, RationalScalar(1, 2), 2, {8, 8}}), InputError);
}

TEST_CASE("sharp iterated family") {
  auto rep = sharp_family_exact({2, std::nullopt, 2, {8, 8}});
  CHECK(rep.get("ratio") == 5);
  CHECK(rep.holds);
  CHECK(rep.get("grid_volume_q2") == r(29, 4));
  CHECK(rep.get("grid_volume_q4") == r(93, 16));
  CHECK(rep.get("grid_volume_q8") == r(341, 64));
  auto one = sharp_family_exact({1, std::nullopt, 3, {10}});
  CHECK(one.get("ratio") == 6);
  CHECK(one.get("interval_ratio") == 6);
  CHECK(one.holds);
}

TEST_CASE("hull ratio of the sharp family grows with |v|") {
  Rational prev(0);
  for (std::int64_t v : {4, 8, 16, 32}) {
    auto rep = sharp_family_exact({2, RationalScalar(1, 2), std::nullopt, {v, v}}, {});
    CHECK(rep.get("hull_ratio") > prev);
    prev = rep.get("hull_ratio");
  }
}

TEST_CASE("thm-distinct examples") {
  GridSet sq = GridSet::unit_cube(2, 1);
  auto rep = check_thm_distinct(sq, sq, RationalScalar(1, 2));
  CHECK(rep.get("delta") == 0);
  CHECK(rep.get("hull_ratio") == 1);
  CHECK(rep.get("hypothesis") == 1);
  CHECK(rep.holds);

  // Finite-q sharp family: B has one extra far cell, A the matching extra near cell.
  const std::int64_t q = 4;
  GridSet a = unite(GridSet::unit_cube(2, q), GridSet::from_cells(2, q, {{q, 0}}));
  GridSet b = unite(GridSet::unit_cube(2, q), GridSet::from_cells(2, q, {{8 * q, 8 * q}}));
  auto far = check_thm_distinct(a, b, RationalScalar(1, 2));
  CHECK(far.holds);
  CHECK(far.get("delta") > r(1, 4));
  CHECK(far.get("hypothesis") == 0);
  CHECK_THROWS_AS(check_thm_distinct(sq, sq, RationalScalar(2, 3)), InputError);
}

TEST_CASE("thm-distinct translation alignment helps") {
  GridSet a = GridSet::unit_cube(2, 1);
  GridSet b = translate(a, {50, 50});
  auto rep = check_thm_distinct(a, b, RationalScalar(1, 2));
  CHECK(rep.get("hull_ratio") == 1);
  CHECK(rep.get("hull_ratio_untranslated") > 1);
}

TEST_CASE("thm-iterated examples") {
  auto sq = check_thm_iterated(GridSet::unit_cube(2, 1), 2);
  CHECK(sq.get("ratio") == 4);
  CHECK(sq.get("hull_ratio") == 1);
  CHECK(sq.holds);
  IntervalSet a = unite(IntervalSet::interval(0, 1), IntervalSet::point(3));
  auto one = check_thm_iterated(a, 2);
  CHECK(one.get("ratio") == 3);
  CHECK(one.get("threshold") == 3);
  CHECK(one.get("hypothesis") == 0);
  CHECK(one.holds);
  CHECK(one.tight);
}

TEST_CASE("Plunnecke examples") {
  GridSet sq = GridSet::unit_cube(2, 1);
  auto a = check_plunnecke(sq, sq, 2);
  CHECK(a.get("lambda") == 4);
  CHECK(a.get("mX") == 4);
  CHECK(a.bound == 16);
  CHECK(a.holds);
  IntervalSet x = unite(IntervalSet::interval(0, 1), IntervalSet::point(5));
  auto b = check_plunnecke(x, IntervalSet::interval(0, 1), 2);
  CHECK(b.get("lambda") == 3);
  CHECK(b.get("mX") == 3);
  CHECK(b.bound == 9);
  CHECK(b.holds);
}

TEST_CASE("long-fibre claim") {
  GridSet sq = GridSet::unit_cube(2, 1);
  auto vacuous = check_long_fibre_claim(sq, sq, RationalScalar(1, 2), 100);
  CHECK(vacuous.get("hypothesis") == 0);
  CHECK(vacuous.holds);

  // A plus sign of two crossing bars; |A| = 15, longest tA fibre 4, and
  // 4^4 >= 1 * 15^2 meets the hypothesis at L = 1.
  GridSet a = unite(GridSet::box(1, Anchor{0, 3}, Anchor{8, 4}), GridSet::box(1, Anchor{3, 0}, Anchor{4, 8}));
  auto cross = check_long_fibre_claim(a, a, RationalScalar(1, 2), 1);
  CHECK(cross.get("fibre_1") == 4);
  CHECK(cross.get("fibre_2") == 4);
  CHECK(cross.get("hypothesis") == 1);
  CHECK(cross.holds);
  CHECK(check_long_fibre_claim(a, a, RationalScalar(1, 2), 4).get("hypothesis") == 0);

  // A long convex interval is not a counterexample once lengths are normalized.
  GridSet line = GridSet::box(1, Anchor{0}, Anchor{128});
  auto flat = check_long_fibre_claim(line, line, RationalScalar(1, 2), constant_l(1, RationalScalar(1, 2)));
  CHECK(flat.get("hypothesis") == 0);
  CHECK(flat.holds);

  GridSet c = GridSet::box(1, Anchor{0, 0}, Anchor{8, 1});
  GridSet d = GridSet::box(1, Anchor{0, 0}, Anchor{1, 8});
  auto slabs = check_long_fibre_claim(c, d, RationalScalar(1, 2), 1);
  CHECK(slabs.get("hypothesis") == 1);
  CHECK(slabs.get("sum") >= 2 * volume(c));
  CHECK(slabs.get("conclusion") == 1);
}

TEST_CASE("sweep is deterministic and ordered") {
  for (const auto& name : sweep_checkers()) {
    SweepConfig cfg;
    cfg.checker = name;
    cfg.count = 5;
    cfg.seed = 99;
    auto a = sweep(cfg), b = sweep(cfg);
    REQUIRE(a.size() == b.size());
    std::ostringstream sa, sb;
    write_csv_header(sa);
    write_csv_header(sb);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].instance == i);
      write_csv_row(sa, a[i]);
      write_csv_row(sb, b[i]);
    }
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("sweep edge cases") {
  SweepConfig cfg;
  cfg.checker = "thm-distinct";
  cfg.count = 0;
  CHECK(sweep(cfg).empty());
  cfg.checker = "no-such-checker";
  cfg.count = 1;
  CHECK_THROWS_AS(sweep(cfg), InputError);
}

TEST_CASE("sharp-family sweep gives delta t^d") {
  SweepConfig cfg;
  cfg.checker = "sharp-family";
  cfg.count = 9;
  for (const auto& rec : sweep(cfg)) {
    CHECK(rec.holds);
    CHECK(rec.primary == rec.threshold);
  }
}
