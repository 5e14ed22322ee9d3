// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sumset/corpus.hpp"
#include "sumset/intervals.hpp"
#include "sumset/minkowski.hpp"
#include "sumset/positioning.hpp"
#include "sumset/theorems.hpp"
#include "sumset/transport.hpp"

using namespace sumset;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Rational r(std::int64_t p, std::int64_t q = 1) { return make_rational(p, q); }

const std::vector<RationalScalar> kTs{{1, 2}, {1, 3}, {1, 4}};

Outcome sharp_two_set() {
  Outcome o;
  for (int d = 1; d <= 3; ++d) {
    for (const auto& t : kTs) {
      const std::string tag = "d=" + std::to_string(d) + " t=" + to_string(t);
      auto rep = sharp_family_exact({d, t, std::nullopt, RationalVector(static_cast<std::size_t>(d), Rational(8))});
      const Rational s = t.value();
      o.require(rep.get("delta") == pow(s, static_cast<unsigned>(d)), tag + ": delta != t^d");
      o.require(rep.holds, tag + ": report does not hold");
      Rational prev(2);
      for (std::int64_t q : {2, 4, 8}) {
        // The far cell grows the point block [0,t]^d to side t + (1-t)/q.
        Rational excess = pow(s + (1 - s) / q, static_cast<unsigned>(d)) - pow(s, static_cast<unsigned>(d));
        Rational got = rep.get("grid_excess_q" + std::to_string(q));
        o.require(got == excess, tag + ": grid excess at q=" + std::to_string(q) + " is " + to_string(got));
        o.require(got < prev, tag + ": grid excess not decreasing");
        o.require(rep.get("grid_delta_q" + std::to_string(q)) == pow(s, static_cast<unsigned>(d)) + excess,
                  tag + ": grid delta");
        prev = got;
      }
    }
  }
  o.detail = o.ok ? "delta = t^d exactly for 9 (d,t); grid excess exact and decreasing" : o.detail;
  return o;
}

Outcome sharp_iterated() {
  Outcome o;
  for (int d = 1; d <= 2; ++d) {
    for (int k = 2; k <= 3; ++k) {
      const std::string tag = "d=" + std::to_string(d) + " k=" + std::to_string(k);
      Rational expect(0);
      for (int j = 1; j <= k; ++j) expect += pow(Rational(j), static_cast<unsigned>(d));
      auto rep = sharp_family_exact({d, std::nullopt, k, RationalVector(static_cast<std::size_t>(d), Rational(10))});
      o.require(rep.get("ratio") == expect, tag + ": closed form " + to_string(rep.get("ratio")));
      o.require(rep.get("sliced_ratio") == expect, tag + ": sliced measure");
      o.require(rep.holds, tag + ": report does not hold");
      if (d == 1) {
        // Direct interval path, independent of the evaluator.
        IntervalSet a = unite(IntervalSet::interval(0, 1), IntervalSet::point(10));
        o.require(iterated_sum(a, k).measure() == expect, tag + ": interval path");
      }
    }
  }
  o.detail = o.ok ? "ratio = sum j^d for (d,k) in {1,2}x{2,3}" : o.detail;
  return o;
}

Outcome lemma_distinct() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 3));
  int held = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = random_interval_set(rng, 8), y = random_interval_set(rng, 8), z = random_interval_set(rng, 8);
    auto rep = check_lemma_distinct(x, y, z);
    o.require(rep.holds, "violation at instance " + std::to_string(i) + ": " + describe(x));
    held += rep.holds;
  }
  auto h = IntervalSet::interval(0, r(1, 2)), u = IntervalSet::interval(0, 1);
  auto a = check_lemma_distinct(h, h, h), b = check_lemma_distinct(u, u, u);
  o.require(a.get("S") == r(3, 2) && a.bound == r(3, 2), "witness [0,1/2]");
  o.require(b.get("S") == 2 && b.bound == 2, "witness [0,1]");
  if (o.ok) o.detail = std::to_string(held) + "/1000 hold; witnesses 3/2 and 2 exact";
  return o;
}

Outcome lemma_iterated() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 4));
  for (int k = 2; k <= 4; ++k) {
    for (int i = 0; i < 1000; ++i) {
      std::vector<IntervalSet> ys;
      for (int j = 0; j < k; ++j) {
        ys.push_back(random_capped_interval_set(rng, r(1, k)));
        o.require(ys.back().measure() <= r(1, k), "generator exceeded the cap");
      }
      o.require(check_lemma_iterated(ys).holds, "violation at k=" + std::to_string(k) + " instance " + std::to_string(i));
    }
  }
  auto h = IntervalSet::interval(0, r(1, 2)), th = IntervalSet::interval(0, r(1, 3));
  auto a = check_lemma_iterated({h, h}), b = check_lemma_iterated({th, th, th});
  o.require(a.get("S") == r(3, 2) && a.bound == r(3, 2), "witness k=2");
  o.require(b.get("S") == 2 && b.bound == 2, "witness k=3");
  if (o.ok) o.detail = "3000/3000 hold; witnesses 3/2 and 2 exact";
  return o;
}

Outcome freiman() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 5));
  for (int k = 2; k <= 5; ++k) {
    int done = 0;
    while (done < 1000) {
      IntervalSet a = random_interval_set(rng, 4, 16, 0, 4);
      if (a.measure() == 0) continue;
      o.require(freiman_iterated_bound(a, k).holds, "violation at k=" + std::to_string(k) + ": " + describe(a));
      ++done;
    }
  }
  IntervalSet w = unite(IntervalSet::interval(0, 1), IntervalSet::point(3));
  auto two = freiman_iterated_bound(w, 2), three = freiman_iterated_bound(w, 3);
  o.require(two.get("kA") == 3 && two.bound == 3, "witness k=2");
  o.require(three.get("kA") == 6 && three.bound == 6, "witness k=3");
  if (o.ok) o.detail = "4000/4000 hold; witnesses 3 and 6 exact";
  return o;
}

Outcome transport() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 6));
  GridCorpusConfig cfg;
  int runs = 0;
  for (const auto& t : {RationalScalar(1, 2), RationalScalar(1, 3)}) {
    for (int i = 0; i < 200; ++i) {
      auto [a, b] = random_equal_volume_pair(rng, cfg, 2, rng.pick(cfg.resolutions));
      auto run = run_transport(a, b, t, static_cast<int>(rng.range(0, 1)));
      o.require(run.rho.get("integral") >= volume(a), "integral below |A| at instance " + std::to_string(i));
      o.require(run.rho.holds, "rho report fails");
      auto same = run_transport(a, a, t, 0);
      o.require(same.rho.get("integral") == volume(a), "A == B is not an equality");
      runs += 2;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    IntervalSet x = random_interval_set(rng, 3, 32, 0, 2), y = random_interval_set(rng, 3, 32, 0, 2);
    RationalScalar t(rng.range(1, 15), 16);
    Rational lhs = fiber_plus(x, y, t).measure();
    o.require(lhs == t.value() * x.measure() + (1 - t.value()) * y.measure(), "per-pair identity fails");
  }
  if (o.ok) o.detail = std::to_string(runs) + " transport runs exact; 1000 fibre pairs satisfy the identity";
  return o;
}

std::vector<RationalVector> sorted(std::vector<RationalVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Outcome positioning() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 7));
  auto run = [&](int d, int vx, int vy) {
    Polytope x = random_polytope(rng, d, vx), y = random_polytope(rng, d, vy);
    auto res = position(x, y);
    o.require(verify_certificate(res.certificate).holds, "certificate fails in d=" + std::to_string(d));
    o.require(hull_volume(res.certificate.u) == abs(res.map.det()) * hull_volume(x), "volume covariance");
  };
  for (int i = 0; i < 200; ++i) run(2, static_cast<int>(rng.range(3, 4)), static_cast<int>(rng.range(3, 4)));
  for (int i = 0; i < 50; ++i) run(3, 4, 4);
  Polytope tri = hull_of(2, {{0, 0}, {2, 0}, {1, 1}});
  auto res = position(tri, tri);
  std::vector<RationalVector> expect{{0, 0}, {0, 1}, {2, 0}};
  o.require(sorted(res.certificate.u.vertices) == expect, "shear example vertices");
  o.require(res.certificate.lambdas == std::vector<Rational>{2, 1}, "shear example lambdas");
  if (o.ok) o.detail = "200 planar and 50 tetrahedron pairs verify; shear example vertex-exact";
  return o;
}

Outcome plunnecke() {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 8));
  GridCorpusConfig cfg;
  for (int i = 0; i < 300; ++i) {
    int d = static_cast<int>(rng.range(1, 2));
    std::int64_t q = rng.pick(cfg.resolutions);
    GridSet x = random_grid_set(rng, cfg, d, q), y = random_grid_set(rng, cfg, d, q);
    int m = static_cast<int>(rng.range(1, 3));
    o.require(check_plunnecke(x, y, m).holds, "violation at instance " + std::to_string(i));
  }
  if (o.ok) o.detail = "300/300 hold";
  return o;
}

Outcome fast_path(double& dense_seconds) {
  Outcome o;
  Rng rng(instance_seed(kDefaultSeed, 9));
  GridCorpusConfig cfg;
  for (int i = 0; i < 200; ++i) {
    int d = rng.pick(cfg.dims);
    std::int64_t q = rng.pick(cfg.resolutions);
    GridSet a = random_grid_set(rng, cfg, d, q), b = random_grid_set(rng, cfg, d, q);
    o.require(minkowski_sum_fast(a, b) == minkowski_sum(a, b), "mismatch at instance " + std::to_string(i));
  }
  // A 1024 x 1024 window with a full frame (one component) and random interior.
  std::vector<std::int64_t> flat;
  for (std::int64_t x = 0; x < 1024; ++x) {
    for (std::int64_t y = 0; y < 1024; ++y) {
      bool frame = x == 0 || y == 0 || x == 1023 || y == 1023 || x == 512 || y == 512;
      if (frame || rng.chance(1, 2)) {
        flat.push_back(x);
        flat.push_back(y);
      }
    }
  }
  GridSet big(2, 1, std::move(flat));
  auto start = std::chrono::steady_clock::now();
  GridSet s = minkowski_sum_fast(big, big);
  dense_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(s.size() == 2048u * 2048u, "dense sum has " + std::to_string(s.size()) + " cells");
  o.require(dense_seconds < 2.0, "dense fast path took " + std::to_string(dense_seconds) + " s");
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "200/200 identical; dense 1024x1024 in %.2f s", dense_seconds);
    o.detail = buf;
  }
  return o;
}

Outcome theorem_corpora() {
  Outcome o;
  std::string summary;
  for (const char* name : {"thm-distinct", "thm-iterated"}) {
    SweepConfig cfg;
    cfg.checker = name;
    cfg.count = 500;
    cfg.seed = kDefaultSeed;
    auto records = sweep(cfg);
    std::size_t bad = 0;
    for (const auto& rec : records) bad += !rec.holds;
    o.require(records.size() == 500 && bad == 0, std::string(name) + ": " + std::to_string(bad) + " counterexamples");
    summary += std::string(summary.empty() ? "" : "; ") + name + " 0/" + std::to_string(records.size());
  }
  if (o.ok) o.detail = summary + " counterexamples";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  double dense = 0;
  std::vector<Criterion> criteria{
      {1, "two-set threshold sharpness", 10, sharp_two_set},
      {2, "iterated threshold sharpness", 5, sharp_iterated},
      {3, "distinct lemma suite", 10, lemma_distinct},
      {4, "iterated lemma suite", 20, lemma_iterated},
      {5, "Freiman iterated bound", 0, freiman},
      {6, "transport lemma", 0, transport},
      {7, "positioning certificate", 0, positioning},
      {8, "Plunnecke", 0, plunnecke},
      {9, "fast-path equivalence", 0, [&] { return fast_path(dense); }},
      {10, "theorem corpora", 0, theorem_corpora},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit > 0 && secs >= c.limit) {
      o.ok = false;
      o.detail = "took longer than " + std::to_string(static_cast<int>(c.limit)) + " s";
    }
    failed += !o.ok;
    std::printf("[%s] %2d %-30s %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
