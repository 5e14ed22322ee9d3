#include "sumset/theorems.hpp"

#include <algorithm>
#include <ostream>

#include "sumset/corpus.hpp"
#include "sumset/hull.hpp"
#include "sumset/minkowski.hpp"
#include "sumset/positioning.hpp"
#include "sumset/transport.hpp"

namespace sumset {

namespace {

struct Box {
  RationalVector lo, hi;
};

Rational box_volume(const Box& b) {
  Rational v(1);
  for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
  return v;
}

// Exact measure of a union of boxes by slicing along successive axes; the last
// axis is an interval-set union.
Rational union_measure(const std::vector<const Box*>& boxes, std::size_t axis) {
  if (boxes.empty()) return 0;
  const std::size_t d = boxes.front()->lo.size();
  if (axis + 1 == d) {
    std::vector<Interval> parts;
    for (const auto* b : boxes) parts.push_back({b->lo[axis], b->hi[axis]});
    return IntervalSet(std::move(parts)).measure();
  }
  std::vector<Rational> cuts;
  for (const auto* b : boxes) {
    cuts.push_back(b->lo[axis]);
    cuts.push_back(b->hi[axis]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rational total(0);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    std::vector<const Box*> active;
    for (const auto* b : boxes) {
      if (b->lo[axis] <= cuts[c] && cuts[c + 1] <= b->hi[axis]) active.push_back(b);
    }
    total += (cuts[c + 1] - cuts[c]) * union_measure(active, axis + 1);
  }
  return total;
}

Rational union_measure(const std::vector<Box>& boxes) {
  std::vector<const Box*> ptrs;
  for (const auto& b : boxes) ptrs.push_back(&b);
  return union_measure(ptrs, 0);
}

Box cube_at(const RationalVector& corner, const Rational& side) {
  Box b{corner, corner};
  for (auto& x : b.hi) x += side;
  return b;
}

RationalVector scaled(const RationalVector& v, const Rational& s) {
  RationalVector out(v);
  for (auto& x : out) x *= s;
  return out;
}

std::string describe_vector(const RationalVector& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + to_string(x);
  return "(" + out + ")";
}

std::string grid_text(const GridSet& s) {
  std::string out = std::to_string(s.dim()) + "/" + std::to_string(s.resolution()) + ":";
  for (auto x : s.flat()) out += std::to_string(x) + ",";
  return out;
}

Rational flag(bool b) { return b ? Rational(1) : Rational(0); }

void require_equal_volume(const GridSet& a, const GridSet& b) {
  require_same_dim(a, b);
  Rational va = volume(a), vb = volume(b);
  if (va != vb) throw InputError("volumes differ: " + to_string(va) + " vs " + to_string(vb));
  if (va == 0) throw InputError("sets must have positive volume");
}

void require_hull_dim(int d) {
  if (d > kMaxHullDim) {
    throw InputError("hull computations are supported for d <= 3, got d = " + std::to_string(d));
  }
}

// Anchor of v on the 1/q grid, if it lies on it.
std::optional<Anchor> grid_point(const RationalVector& v, std::int64_t q) {
  Anchor a;
  for (const auto& x : v) {
    Rational s = x * q;
    if (s.get_den() != 1) return std::nullopt;
    a.push_back(to_int64(s.get_num()));
  }
  return a;
}

std::string grid_key(const char* name, std::int64_t q) { return std::string(name) + "_q" + std::to_string(q); }

}  // namespace

Rational delta_t(const GridSet& a, const GridSet& b, const RationalScalar& t, const Limits& limits) {
  require_equal_volume(a, b);
  return volume(scaled_sum(a, b, t, limits)) / volume(a) - 1;
}

Rational distinct_threshold(int d, const RationalScalar& t) { return pow(t.value(), static_cast<unsigned>(d)); }

Rational iterated_threshold(int d, int k) {
  Rational s(0);
  for (int j = 1; j <= k; ++j) s += pow(Rational(j), static_cast<unsigned>(d));
  return s;
}

Rational constant_l(int d, const RationalScalar& t) {
  t.require_open_unit();
  return pow(2 / ((1 - t.value()) * t.value()), static_cast<unsigned>(4 * d));
}

Rational constant_c(int d, const RationalScalar& t) { return pow(constant_l(d, t), static_cast<unsigned>(d)); }

VerdictReport sharp_family_exact(const SharpFamily& family, const std::vector<std::int64_t>& grid_qs,
                                 const Limits& limits) {
  const int d = family.dim;
  if (d < 1) throw InputError("dimension must be positive");
  if (static_cast<int>(family.v.size()) != d) {
    throw InputError("v has " + std::to_string(family.v.size()) + " coordinates, expected d = " + std::to_string(d));
  }
  if (family.t.has_value() == family.k.has_value()) {
    throw InputError("a sharp family takes exactly one of t (two-set) or k (iterated)");
  }
  const RationalVector origin(static_cast<std::size_t>(d), Rational(0));
  const Box unit = cube_at(origin, 1);
  VerdictReport r;
  r.inputs_digest = digest("d=" + std::to_string(d) + ";v=" + describe_vector(family.v) +
                           (family.t ? ";t=" + to_string(*family.t) : ";k=" + std::to_string(*family.k)));
  std::vector<std::int64_t> qs(grid_qs);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  bool grid_ok = true;
  std::optional<Rational> last_excess;

  if (family.t) {
    const RationalScalar& t = *family.t;
    t.require_open_unit();
    const Rational s = t.value(), u = 1 - s;
    r.kind = "sharp-two-set";
    // tA + (1-t)B = A u (tA + (1-t)v).
    std::vector<Box> parts{unit, cube_at(scaled(family.v, u), s)};
    Rational closed = box_volume(parts[0]) + box_volume(parts[1]);
    Rational sliced = union_measure(parts);
    if (closed != sliced) {
      throw InputError("v = " + describe_vector(family.v) + " is too small: the blocks of the closed form overlap");
    }
    Rational delta = closed - 1;
    r.bound = distinct_threshold(d, t);
    r.set("delta", delta);
    r.set("threshold", r.bound);
    r.set("sum_volume", sliced);
    for (std::int64_t q : qs) {
      auto anchor = grid_point(family.v, q);
      if (!anchor) {
        r.notes.push_back("q = " + std::to_string(q) + " skipped: v is not on the grid");
        continue;
      }
      GridSet a = GridSet::unit_cube(d, q);
      GridSet b = unite(a, GridSet::from_cells(d, q, {*anchor}), limits);
      Rational grid_delta = volume(scaled_sum(a, b, t, limits)) - 1;
      // The far cell turns the point block [0,t]^d into a block of side t + (1-t)/q.
      Box block = cube_at(scaled(family.v, u), s + u / q);
      Rational expected = union_measure(std::vector<Box>{unit, block}) - 1;
      Rational excess = grid_delta - delta;
      Rational cell_term = box_volume(block) - box_volume(parts[1]);
      r.set(grid_key("grid_delta", q), grid_delta);
      r.set(grid_key("grid_excess", q), excess);
      if (grid_delta != expected || excess != cell_term) grid_ok = false;
      if (last_excess && !(excess < *last_excess)) grid_ok = false;
      last_excess = excess;
    }
    r.tight = delta == r.bound;
    r.holds = r.tight && grid_ok;
  } else {
    const int k = *family.k;
    if (k < 1) throw InputError("k must be a positive integer");
    r.kind = "sharp-iterated";
    // k.A = u_{i=0..k} (iv + [0,k-i]^d); the i = k piece is a single point.
    std::vector<Box> parts;
    Rational closed(0);
    for (int i = 0; i <= k; ++i) {
      parts.push_back(cube_at(scaled(family.v, i), k - i));
      closed += box_volume(parts.back());
    }
    Rational sliced = union_measure(parts);
    if (closed != sliced) {
      throw InputError("v = " + describe_vector(family.v) + " is too small: the blocks of the closed form overlap");
    }
    r.bound = iterated_threshold(d, k);
    r.set("ratio", closed);
    r.set("threshold", r.bound);
    r.set("sliced_ratio", sliced);
    bool interval_ok = true;
    if (d == 1) {
      IntervalSet a = unite(IntervalSet::interval(0, 1), IntervalSet::point(family.v[0]));
      Rational path = iterated_sum(a, k).measure() / a.measure();
      r.set("interval_ratio", path);
      interval_ok = path == closed;
    }
    for (std::int64_t q : qs) {
      auto anchor = grid_point(family.v, q);
      if (!anchor) {
        r.notes.push_back("q = " + std::to_string(q) + " skipped: v is not on the grid");
        continue;
      }
      GridSet a = unite(GridSet::unit_cube(d, q), GridSet::from_cells(d, q, {*anchor}), limits);
      Rational grid = volume(iterated_sum(a, k, limits));
      // With the point replaced by a cell, piece i has side (k-i) + i/q.
      std::vector<Box> grown;
      for (int i = 0; i <= k; ++i) grown.push_back(cube_at(scaled(family.v, i), (k - i) + make_rational(i, q)));
      Rational expected = union_measure(grown);
      Rational excess = grid - closed;
      r.set(grid_key("grid_volume", q), grid);
      r.set(grid_key("grid_excess", q), excess);
      if (grid != expected) grid_ok = false;
      if (last_excess && !(excess < *last_excess)) grid_ok = false;
      last_excess = excess;
    }
    r.tight = closed == r.bound;
    r.holds = r.tight && grid_ok && interval_ok;
  }
  if (d <= kMaxHullDim) {
    std::vector<RationalVector> pts;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      RationalVector c(origin);
      for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      pts.push_back(std::move(c));
    }
    pts.push_back(family.v);
    r.set("hull_ratio", hull_volume(hull_of(d, pts)));
  }
  if (!grid_ok) r.notes.push_back("grid cross-check disagrees with the closed form");
  return r;
}

std::vector<RationalVector> alignment_candidates(const GridSet& a, const GridSet& b) {
  require_same_dim(a, b);
  const auto d = static_cast<std::size_t>(a.dim());
  const Rational qa(a.resolution()), qb(b.resolution());
  Anchor la = a.lower(), ua = a.upper(), lb = b.lower(), ub = b.upper();
  RationalVector mean_a(d, Rational(0)), mean_b(d, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) mean_a[k] += a.cell(i)[k];
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) mean_b[k] += b.cell(i)[k];
  }
  std::vector<RationalVector> out(5, RationalVector(d));
  for (std::size_t k = 0; k < d; ++k) {
    Rational a_lo = la[k] / qa, a_hi = (ua[k] + 1) / qa, b_lo = lb[k] / qb, b_hi = (ub[k] + 1) / qb;
    out[0][k] = 0;
    out[1][k] = a_lo - b_lo;
    out[2][k] = a_hi - b_hi;
    out[3][k] = (a_lo + a_hi - b_lo - b_hi) / 2;
    out[4][k] = (mean_a[k] / static_cast<long>(a.size()) + make_rational(1, 2)) / qa -
                (mean_b[k] / static_cast<long>(b.size()) + make_rational(1, 2)) / qb;
  }
  std::vector<RationalVector> unique;
  for (auto& v : out) {
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(std::move(v));
  }
  return unique;
}

VerdictReport check_thm_distinct(const GridSet& a, const GridSet& b, const RationalScalar& t, const Limits& limits) {
  t.require_open_unit();
  if (t.value() > make_rational(1, 2)) throw InputError("t must lie in (0, 1/2], got " + to_string(t));
  require_equal_volume(a, b);
  const int d = a.dim();
  require_hull_dim(d);
  VerdictReport r;
  r.kind = "thm-distinct";
  r.inputs_digest = digest(grid_text(a) + ";" + grid_text(b) + ";t=" + to_string(t));
  const Rational vol = volume(a);
  const Rational delta = volume(scaled_sum(a, b, t, limits)) / vol - 1;
  const Rational threshold = distinct_threshold(d, t);
  const auto pa = hull_candidates(a), pb = hull_candidates(b);
  std::optional<Rational> best, untranslated;
  RationalVector best_v;
  auto candidates = alignment_candidates(a, b);
  for (const auto& v : candidates) {
    std::vector<RationalVector> pts(pa);
    for (auto p : pb) {
      for (std::size_t k = 0; k < p.size(); ++k) p[k] += v[k];
      pts.push_back(std::move(p));
    }
    Rational ratio = hull_volume(hull_of(d, pts)) / vol;
    if (!untranslated) untranslated = ratio;
    if (!best || ratio < *best) {
      best = ratio;
      best_v = v;
    }
  }
  const Rational c = constant_c(d, t);
  const bool hypothesis = delta < threshold;
  r.bound = threshold;
  r.set("delta", delta);
  r.set("threshold", threshold);
  r.set("hull_ratio", *best);
  r.set("hull_ratio_untranslated", *untranslated);
  r.set("C", c);
  r.set("hypothesis", flag(hypothesis));
  r.holds = !(hypothesis && *best > c);
  r.tight = delta == threshold;
  r.notes.push_back("hull ratio minimized over " + std::to_string(candidates.size()) + " alignment translations");
  if (!hypothesis) r.notes.push_back("hypothesis not met: delta >= t^d");
  Json v = Json::array();
  for (const auto& x : best_v) v.push_back(to_string(x));
  r.witness = {{"translation", v}};
  return r;
}

namespace {

VerdictReport iterated_report(int d, int k, const Rational& ratio, const Rational& hull, std::optional<Rational> c,
                              const std::string& text) {
  VerdictReport r;
  r.kind = "thm-iterated";
  r.inputs_digest = digest(text + ";k=" + std::to_string(k));
  const Rational threshold = iterated_threshold(d, k);
  const bool heuristic = !c.has_value();
  const Rational bound_c = c ? *c : constant_c(d, RationalScalar(1, 2));
  const bool hypothesis = ratio < threshold;
  r.bound = threshold;
  r.set("ratio", ratio);
  r.set("threshold", threshold);
  r.set("hull_ratio", hull);
  r.set("C", bound_c);
  r.set("hypothesis", flag(hypothesis));
  r.holds = !(hypothesis && hull > bound_c);
  r.tight = ratio == threshold;
  if (heuristic) r.notes.push_back("C is the heuristic default L^d at t = 1/2");
  if (!hypothesis) r.notes.push_back("hypothesis not met: |kA|/|A| >= 1^d + ... + k^d");
  return r;
}

}  // namespace

VerdictReport check_thm_iterated(const GridSet& a, int k, std::optional<Rational> c, const Limits& limits) {
  if (k < 1) throw InputError("k must be a positive integer");
  require_hull_dim(a.dim());
  const Rational vol = volume(a);
  if (vol == 0) throw InputError("set must have positive volume");
  Rational ratio = volume(iterated_sum(a, k, limits)) / vol;
  return iterated_report(a.dim(), k, ratio, hull_ratio(a), c, grid_text(a));
}

VerdictReport check_thm_iterated(const IntervalSet& a, int k, std::optional<Rational> c) {
  if (k < 1) throw InputError("k must be a positive integer");
  if (a.measure() == 0) throw InputError("set must have positive measure");
  Rational ratio = iterated_sum(a, k).measure() / a.measure();
  return iterated_report(1, k, ratio, hull_ratio(a), c, describe(a));
}

namespace {

VerdictReport plunnecke_report(const Rational& xy, const Rational& y, const Rational& mx, int m,
                               const std::string& text) {
  VerdictReport r;
  r.kind = "plunnecke";
  r.inputs_digest = digest(text + ";m=" + std::to_string(m));
  Rational lambda = xy / y;
  r.bound = pow(lambda, static_cast<unsigned>(m)) * y;
  r.set("lambda", lambda);
  r.set("mX", mx);
  r.set("Y", y);
  r.holds = mx <= r.bound;
  r.tight = mx == r.bound;
  return r;
}

}  // namespace

VerdictReport check_plunnecke(const GridSet& x, const GridSet& y, int m, const Limits& limits) {
  if (m < 1) throw InputError("m must be a positive integer");
  require_same_dim(x, y);
  if (volume(x) == 0 || volume(y) == 0) throw InputError("Plunnecke needs sets of positive volume");
  return plunnecke_report(volume(sum(x, y, limits)), volume(y), volume(iterated_sum(x, m, limits)), m,
                          grid_text(x) + ";" + grid_text(y));
}

VerdictReport check_plunnecke(const IntervalSet& x, const IntervalSet& y, int m) {
  if (m < 1) throw InputError("m must be a positive integer");
  if (x.measure() == 0 || y.measure() == 0) throw InputError("Plunnecke needs sets of positive measure");
  return plunnecke_report(sum_1d(x, y).measure(), y.measure(), iterated_sum(x, m).measure(), m,
                          describe(x) + ";" + describe(y));
}

VerdictReport check_long_fibre_claim(const GridSet& a, const GridSet& b, const RationalScalar& t, const Rational& l,
                                     const Limits& limits) {
  t.require_open_unit();
  require_equal_volume(a, b);
  if (l < 0) throw InputError("L must be nonnegative");
  const int d = a.dim();
  const Rational s = t.value(), u = 1 - s;
  const auto ud = static_cast<unsigned>(d);
  const Rational vol = volume(a);
  VerdictReport r;
  r.kind = "long-fibre";
  r.inputs_digest = digest(grid_text(a) + ";" + grid_text(b) + ";t=" + to_string(t) + ";L=" + to_string(l));
  bool hypothesis = true;
  for (int i = 0; i < d; ++i) {
    Rational longest(0);
    for (const auto& [base, fiber] : decompose(a, i).fibers) longest = max(longest, s * fiber.measure());
    for (const auto& [base, fiber] : decompose(b, i).fibers) longest = max(longest, u * fiber.measure());
    r.set("fibre_" + std::to_string(i + 1), longest);
    // The claim is stated for |A| = 1. Scaling by |A|^{-1/d} turns
    // longest^2 >= L into longest^{2d} >= L^d |A|^2.
    if (pow(longest, 2 * ud) < pow(l, ud) * vol * vol) hypothesis = false;
  }
  const Rational l_dt = constant_l(d, t);
  const bool in_scope = l >= l_dt;
  r.bound = 2 * volume(a);
  r.set("L", l);
  r.set("L_dt", l_dt);
  r.set("A", volume(a));
  r.set("hypothesis", flag(hypothesis));
  r.notes.push_back("fibre lengths are raw; the hypothesis compares them after scaling to |A| = 1");
  r.notes.push_back("positioning of A and B is the caller's responsibility");
  if (!in_scope) r.notes.push_back("L is below L_{d,t}; a failed implication is outside the claim's scope");
  if (!hypothesis) {
    r.notes.push_back("hypothesis not met; no claim tested");
    r.holds = true;
    return r;
  }
  Rational total = volume(scaled_sum(a, b, t, limits));
  bool conclusion = total >= r.bound;
  r.set("sum", total);
  r.set("conclusion", flag(conclusion));
  r.tight = total == r.bound;
  r.holds = conclusion || !in_scope;
  if (!conclusion && !in_scope) r.notes.push_back("implication fails at this L");
  return r;
}

const std::vector<std::string>& sweep_checkers() {
  static const std::vector<std::string> names{
      "thm-distinct", "thm-iterated",     "plunnecke",   "long-fibre", "lemma-distinct", "lemma-iterated",
      "freiman",      "cauchy-davenport", "transport",   "positioning", "sharp-family"};
  return names;
}

SweepRecord sweep_instance(const SweepConfig& config, std::uint64_t index) {
  static const std::vector<RationalScalar> ts{RationalScalar(1, 2), RationalScalar(1, 3), RationalScalar(1, 4)};
  const std::string& name = config.checker;
  Rng rng(instance_seed(config.seed, index));
  GridCorpusConfig grid;
  SweepRecord rec;
  rec.seed = config.seed;
  rec.instance = index;
  auto pick_t = [&](const std::vector<RationalScalar>& cycle) {
    return config.t ? *config.t : cycle[index % cycle.size()];
  };
  auto pick_int = [&](std::optional<int> fixed, const std::vector<int>& cycle) {
    return fixed ? *fixed : cycle[index % cycle.size()];
  };
  auto set_t = [&](const RationalScalar& t) { rec.t_or_k = "t=" + to_string(t); };
  auto set_k = [&](const char* key, int k) { rec.t_or_k = std::string(key) + "=" + std::to_string(k); };

  if (name == "thm-distinct") {
    rec.d = rng.pick(grid.dims);
    rec.q = rng.pick(grid.resolutions);
    RationalScalar t = pick_t(ts);
    set_t(t);
    auto [a, b] = random_equal_volume_pair(rng, grid, rec.d, *rec.q);
    rec.report = check_thm_distinct(a, b, t, config.limits);
    rec.primary = rec.report.get("delta");
    rec.hull_ratio = rec.report.get("hull_ratio");
  } else if (name == "thm-iterated") {
    rec.d = rng.pick(std::vector<int>{1, 2});
    rec.q = rng.pick(grid.resolutions);
    int k = pick_int(config.k, {2, 3});
    set_k("k", k);
    GridSet a = random_grid_set(rng, grid, rec.d, *rec.q);
    rec.report = check_thm_iterated(a, k, std::nullopt, config.limits);
    rec.primary = rec.report.get("ratio");
    rec.hull_ratio = rec.report.get("hull_ratio");
  } else if (name == "plunnecke") {
    rec.d = rng.pick(std::vector<int>{1, 2});
    rec.q = rng.pick(grid.resolutions);
    int m = pick_int(config.m, {1, 2, 3});
    set_k("m", m);
    GridSet x = random_grid_set(rng, grid, rec.d, *rec.q);
    GridSet y = random_grid_set(rng, grid, rec.d, *rec.q);
    rec.report = check_plunnecke(x, y, m, config.limits);
    rec.primary = rec.report.get("mX");
  } else if (name == "long-fibre") {
    rec.d = rng.pick(std::vector<int>{1, 2});
    rec.q = rng.pick(grid.resolutions);
    RationalScalar t = pick_t(ts);
    set_t(t);
    auto [a, b] = random_equal_volume_pair(rng, grid, rec.d, *rec.q);
    rec.report = check_long_fibre_claim(a, b, t, constant_l(rec.d, t), config.limits);
    rec.primary = rec.report.get("hypothesis");
  } else if (name == "lemma-distinct") {
    IntervalSet x = random_interval_set(rng), y = random_interval_set(rng), z = random_interval_set(rng);
    rec.report = check_lemma_distinct(x, y, z);
    rec.primary = rec.report.get("S");
  } else if (name == "lemma-iterated") {
    int k = pick_int(config.k, {2, 3, 4});
    set_k("k", k);
    std::vector<IntervalSet> ys;
    for (int i = 0; i < k; ++i) ys.push_back(random_capped_interval_set(rng, make_rational(1, k)));
    rec.report = check_lemma_iterated(ys);
    rec.primary = rec.report.get("S");
  } else if (name == "freiman") {
    int k = pick_int(config.k, {2, 3, 4, 5});
    set_k("k", k);
    IntervalSet a;
    do {
      a = random_interval_set(rng, 4, rng.pick(std::vector<std::int64_t>{16, 32, 64}), 0, 4);
    } while (a.measure() == 0);
    rec.report = freiman_iterated_bound(a, k);
    rec.primary = rec.report.get("kA");
  } else if (name == "cauchy-davenport") {
    IntervalSet x = random_interval_set(rng, 4, 64, 0, 3), y = random_interval_set(rng, 4, 64, 0, 3);
    rec.report = check_cauchy_davenport(x, y);
    rec.primary = rec.report.get("torus_sum");
  } else if (name == "transport") {
    rec.d = 2;
    rec.q = rng.pick(grid.resolutions);
    RationalScalar t = pick_t({RationalScalar(1, 2), RationalScalar(1, 3)});
    set_t(t);
    auto [a, b] = random_equal_volume_pair(rng, grid, rec.d, *rec.q);
    TransportRun run = run_transport(a, b, t, 0, config.limits);
    rec.report = run.rho;
    rec.report.set("S1", run.s1.measure);
    rec.report.set("per_pair_identity", flag(run.s1.per_pair_identity));
    rec.report.set("s1_contained", flag(run.s1_contained));
    rec.report.holds = rec.report.holds && run.s1.per_pair_identity && run.s1_contained;
    rec.primary = rec.report.get("integral");
  } else if (name == "positioning") {
    rec.d = rng.pick(std::vector<int>{2, 3});
    int vertices = rec.d == 2 ? static_cast<int>(rng.range(3, 4)) : 4;
    Polytope x = random_polytope(rng, rec.d, vertices), y = random_polytope(rng, rec.d, vertices);
    PositioningResult res = position(x, y);
    rec.report = verify_certificate(res.certificate);
    rec.primary = rec.report.get("lambda_product");
  } else if (name == "sharp-family") {
    RationalScalar t = ts[index % ts.size()];
    rec.d = static_cast<int>((index / ts.size()) % 3) + 1;
    set_t(t);
    SharpFamily fam{rec.d, t, std::nullopt, RationalVector(static_cast<std::size_t>(rec.d), Rational(8))};
    rec.report = sharp_family_exact(fam, {}, config.limits);
    rec.primary = rec.report.get("delta");
    rec.hull_ratio = rec.report.get("hull_ratio");
  } else {
    throw InputError("unknown checker '" + name + "'");
  }
  rec.threshold = rec.report.bound;
  rec.holds = rec.report.holds;
  rec.tight = rec.report.tight;
  return rec;
}

std::vector<SweepRecord> sweep(const SweepConfig& config) {
  const auto& names = sweep_checkers();
  if (std::find(names.begin(), names.end(), config.checker) == names.end()) {
    throw InputError("unknown checker '" + config.checker + "'");
  }
  std::vector<SweepRecord> out;
  out.reserve(config.count);
  for (std::uint64_t i = 0; i < config.count; ++i) out.push_back(sweep_instance(config, i));
  return out;
}

void write_csv_header(std::ostream& out) {
  out << "seed,instance,d,q,t_or_k,primary_measure,threshold,hull_ratio,holds,tight\n";
}

void write_csv_row(std::ostream& out, const SweepRecord& r) {
  out << r.seed << ',' << r.instance << ',' << r.d << ',' << (r.q ? std::to_string(*r.q) : "") << ',' << r.t_or_k
      << ',' << to_string(r.primary) << ',' << to_string(r.threshold) << ','
      << (r.hull_ratio ? to_string(*r.hull_ratio) : "") << ',' << (r.holds ? "true" : "false") << ','
      << (r.tight ? "true" : "false") << '\n';
}

}  // namespace sumset
