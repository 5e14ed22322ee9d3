#include "doctest.h"
#include "oracles.hpp"
#include "sumset/corpus.hpp"
#include "sumset/intervals.hpp"

using namespace sumset;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return make_rational(p, q); }

IntervalSet iv(std::int64_t p1, std::int64_t q1, std::int64_t p2, std::int64_t q2) {
  return IntervalSet::interval(r(p1, q1), r(p2, q2));
}

std::vector<std::pair<Rational, Rational>> pairs_of(const IntervalSet& s) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& p : s.parts()) out.emplace_back(p.lo, p.hi);
  return out;
}

// Pairwise enumeration of a + b over parts.
std::vector<std::pair<Rational, Rational>> pairwise_sum(const IntervalSet& a, const IntervalSet& b) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& x : a.parts()) {
    for (const auto& y : b.parts()) out.emplace_back(x.lo + y.lo, x.hi + y.hi);
  }
  return out;
}

}  // namespace

TEST_CASE("normalization merges overlapping and touching parts") {
  IntervalSet s({{1, 2}, {0, 1}, {r(5), r(5)}, {r(3, 2), 3}});
  CHECK(s.parts() == std::vector<Interval>{{0, 3}, {5, 5}});
  CHECK(s.measure() == 3);
  CHECK(s.hull_length() == 5);
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(4));
  CHECK(s.within(0, 5));
}

TEST_CASE("sum_1d examples") {
  CHECK(sum_1d(iv(0, 1, 1, 2), iv(0, 1, 1, 2)) == iv(0, 1, 1, 1));
  IntervalSet a = unite(iv(0, 1, 1, 1), IntervalSet::point(3));
  IntervalSet s = sum_1d(a, a);
  CHECK(s.parts() == std::vector<Interval>{{0, 2}, {3, 4}, {6, 6}});
  CHECK(s.measure() == 3);
  IntervalSet y({{0, r(1, 3)}, {r(1, 2), 1}});
  CHECK(sum_1d(IntervalSet::point(0), y) == y);
}

TEST_CASE("sum_1d agrees with a raster oracle") {
  Rng rng(instance_seed(kDefaultSeed, 11));
  for (int i = 0; i < 200; ++i) {
    IntervalSet a = random_interval_set(rng, 4, 16), b = random_interval_set(rng, 4, 16);
    CHECK(sum_1d(a, b).measure() == oracle::raster_measure(pairwise_sum(a, b), 16));
    CHECK(a.measure() == oracle::raster_measure(pairs_of(a), 16));
  }
}

TEST_CASE("iterated_sum and integer_copies") {
  IntervalSet a = unite(iv(0, 1, 1, 1), IntervalSet::point(3));
  CHECK(iterated_sum(a, 3).parts() == std::vector<Interval>{{0, 5}, {6, 7}, {9, 9}});
  CHECK(iterated_sum(a, 1) == a);
  CHECK(integer_copies(iv(0, 1, 1, 2), 2).parts() == std::vector<Interval>{{0, r(1, 2)}, {1, r(3, 2)}, {2, r(5, 2)}});
}

TEST_CASE("translate and scale") {
  CHECK(translate(iv(0, 1, 1, 1), r(1, 3)) == iv(1, 3, 4, 3));
  CHECK(scale(iv(0, 1, 1, 1), r(1, 2)) == iv(0, 1, 1, 2));
}

TEST_CASE("torus_project examples") {
  CHECK(torus_project(iv(1, 2, 27, 10)).measure() == 1);
  TorusSet a = torus_project(iv(0, 1, 3, 10));
  CHECK(a.measure() == r(3, 10));
  TorusSet w = torus_project(iv(8, 10, 11, 10));
  CHECK(w.measure() == r(3, 10));
  CHECK(w.arcs().contains(r(1, 20)));
  CHECK(w.arcs().contains(r(9, 10)));
  CHECK_FALSE(w.arcs().contains(r(1, 2)));
}

TEST_CASE("Cauchy-Davenport examples") {
  auto a = check_cauchy_davenport(iv(0, 1, 3, 10), iv(0, 1, 4, 10));
  CHECK(a.get("torus_sum") == r(7, 10));
  CHECK(a.bound == r(7, 10));
  CHECK(a.tight);
  auto b = check_cauchy_davenport(iv(0, 1, 6, 10), iv(0, 1, 6, 10));
  CHECK(b.get("torus_sum") == 1);
  CHECK(b.bound == 1);
  CHECK(b.tight);
  auto c = check_cauchy_davenport(IntervalSet::point(0), iv(0, 1, 1, 2));
  CHECK(c.get("torus_sum") == r(1, 2));
  CHECK(c.tight);
}

TEST_CASE("lemma-distinct examples") {
  IntervalSet h = iv(0, 1, 1, 2), u = iv(0, 1, 1, 1), p = IntervalSet::point(r(1, 2));
  auto a = check_lemma_distinct(h, h, h);
  CHECK(a.get("S") == r(3, 2));
  CHECK(a.bound == r(3, 2));
  CHECK(a.tight);
  auto b = check_lemma_distinct(u, u, u);
  CHECK(b.get("S") == 2);
  CHECK(b.bound == 2);
  CHECK(b.tight);
  auto c = check_lemma_distinct(p, p, p);
  CHECK(c.get("S") == 0);
  CHECK(c.bound == 0);
  CHECK(c.holds);
}

TEST_CASE("lemma-iterated examples") {
  auto a = check_lemma_iterated({iv(0, 1, 1, 2), iv(0, 1, 1, 2)});
  CHECK(a.get("S") == r(3, 2));
  CHECK(a.tight);
  auto b = check_lemma_iterated({iv(0, 1, 1, 3), iv(0, 1, 1, 3), iv(0, 1, 1, 3)});
  CHECK(b.get("S") == 2);
  CHECK(b.bound == 2);
  CHECK(b.tight);
  auto c = check_lemma_iterated({IntervalSet::point(0), IntervalSet::point(0)});
  CHECK(c.get("S") == 0);
  CHECK(c.holds);
}

TEST_CASE("Freiman examples") {
  IntervalSet a = unite(iv(0, 1, 1, 1), IntervalSet::point(3));
  auto two = freiman_iterated_bound(a, 2);
  CHECK(two.get("ell") == 2);
  CHECK(two.bound == 3);
  CHECK(two.get("kA") == 3);
  CHECK(two.tight);
  auto three = freiman_iterated_bound(a, 3);
  CHECK(three.bound == 6);
  CHECK(three.get("kA") == 6);
  CHECK(three.tight);
  for (int k = 1; k <= 5; ++k) {
    auto u = freiman_iterated_bound(iv(0, 1, 1, 1), k);
    CHECK(u.get("ell") == 1);
    CHECK(u.bound == k);
    CHECK(u.tight);
  }
}

TEST_CASE("random lemma and Freiman instances hold") {
  Rng rng(instance_seed(kDefaultSeed, 12));
  for (int i = 0; i < 200; ++i) {
    CHECK(check_lemma_distinct(random_interval_set(rng, 8), random_interval_set(rng, 8), random_interval_set(rng, 8)).holds);
    int k = static_cast<int>(rng.range(2, 4));
    std::vector<IntervalSet> ys;
    for (int j = 0; j < k; ++j) ys.push_back(random_capped_interval_set(rng, r(1, k)));
    CHECK(check_lemma_iterated(ys).holds);
    IntervalSet a = random_interval_set(rng, 4, 16, 0, 4);
    if (a.measure() > 0) CHECK(freiman_iterated_bound(a, static_cast<int>(rng.range(1, 5))).holds);
    CHECK(check_cauchy_davenport(random_interval_set(rng), random_interval_set(rng)).holds);
  }
}
