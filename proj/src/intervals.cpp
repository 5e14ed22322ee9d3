#include "sumset/intervals.hpp"

#include <algorithm>

namespace sumset {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const auto& p : parts) {
    if (p.lo > p.hi) {
      throw InputError("interval [" + to_string(p.lo) + ", " + to_string(p.hi) + "] has lo > hi");
    }
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (p.hi > parts_.back().hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

IntervalSet IntervalSet::point(const Rational& x) { return IntervalSet({{x, x}}); }

IntervalSet IntervalSet::interval(const Rational& lo, const Rational& hi) {
  return IntervalSet({{lo, hi}});
}

Rational IntervalSet::measure() const {
  Rational m(0);
  for (const auto& p : parts_) m += p.length();
  return m;
}

Rational IntervalSet::min() const {
  if (empty()) throw InputError("min of an empty interval set");
  return parts_.front().lo;
}

Rational IntervalSet::max() const {
  if (empty()) throw InputError("max of an empty interval set");
  return parts_.back().hi;
}

Rational IntervalSet::hull_length() const { return empty() ? Rational(0) : max() - min(); }

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& p) { return p.lo <= x && x <= p.hi; });
}

bool IntervalSet::within(const Rational& lo, const Rational& hi) const {
  return empty() || (lo <= min() && max() <= hi);
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalSet(std::move(parts));
}

IntervalSet translate(const IntervalSet& x, const Rational& shift) {
  std::vector<Interval> parts;
  parts.reserve(x.parts().size());
  for (const auto& p : x.parts()) parts.push_back({p.lo + shift, p.hi + shift});
  return IntervalSet(std::move(parts));
}

IntervalSet scale(const IntervalSet& x, const Rational& c) {
  if (c < 0) throw InputError("negative scale factor");
  std::vector<Interval> parts;
  for (const auto& p : x.parts()) parts.push_back({p.lo * c, p.hi * c});
  return IntervalSet(std::move(parts));
}

IntervalSet sum_1d(const IntervalSet& x, const IntervalSet& y) {
  if (x.empty() || y.empty()) throw InputError("sum_1d requires nonempty operands");
  std::vector<Interval> parts;
  parts.reserve(x.parts().size() * y.parts().size());
  for (const auto& a : x.parts()) {
    for (const auto& b : y.parts()) parts.push_back({a.lo + b.lo, a.hi + b.hi});
  }
  return IntervalSet(std::move(parts));
}

IntervalSet iterated_sum(const IntervalSet& x, int k) {
  if (k < 1) throw InputError("k must be a positive integer");
  IntervalSet out = x;
  for (int i = 1; i < k; ++i) out = sum_1d(out, x);
  return out;
}

IntervalSet integer_copies(const IntervalSet& x, int n) {
  std::vector<Interval> parts;
  for (int j = 0; j <= n; ++j) {
    for (const auto& p : x.parts()) parts.push_back({p.lo + j, p.hi + j});
  }
  return IntervalSet(std::move(parts));
}

TorusSet::TorusSet(IntervalSet arcs) : arcs_(std::move(arcs)) {
  if (!arcs_.within(0, 1)) throw std::logic_error("torus arcs must lie in [0,1]");
}

TorusSet torus_project(const IntervalSet& x) {
  std::vector<Interval> arcs;
  for (const auto& p : x.parts()) {
    if (p.length() >= 1) return TorusSet(IntervalSet::interval(0, 1));
    Rational lo = p.lo - Rational(floor(p.lo));
    Rational hi = lo + p.length();
    if (hi <= 1) {
      arcs.push_back({lo, hi});
    } else {
      arcs.push_back({lo, Rational(1)});
      arcs.push_back({Rational(0), hi - 1});
    }
  }
  return TorusSet(IntervalSet(std::move(arcs)));
}

std::string describe(const IntervalSet& x) {
  std::string out;
  for (const auto& p : x.parts()) {
    if (!out.empty()) out += "u";
    out += "[" + to_string(p.lo) + "," + to_string(p.hi) + "]";
  }
  return out.empty() ? "{}" : out;
}

namespace {

void require_nonempty(const IntervalSet& s, const char* name) {
  if (s.empty()) throw InputError(std::string(name) + " must be nonempty");
}

void require_unit(const IntervalSet& s, const std::string& name) {
  if (!s.within(0, 1)) throw InputError(name + " = " + describe(s) + " is not contained in [0,1]");
}

void finish(VerdictReport& r, const Rational& lhs) {
  r.holds = lhs >= r.bound;
  r.tight = lhs == r.bound;
}

}  // namespace

VerdictReport check_cauchy_davenport(const IntervalSet& x, const IntervalSet& y) {
  require_nonempty(x, "X");
  require_nonempty(y, "Y");
  VerdictReport r;
  r.kind = "cauchy-davenport";
  r.inputs_digest = digest(describe(x) + ";" + describe(y));
  Rational fx = torus_project(x).measure();
  Rational fy = torus_project(y).measure();
  Rational lhs = torus_project(sum_1d(x, y)).measure();
  r.bound = min(Rational(1), fx + fy);
  r.set("torus_sum", lhs);
  r.set("torus_x", fx);
  r.set("torus_y", fy);
  r.set("slack", lhs - r.bound);
  finish(r, lhs);
  return r;
}

VerdictReport check_lemma_distinct(const IntervalSet& x, const IntervalSet& y, const IntervalSet& z) {
  require_nonempty(x, "X");
  require_nonempty(y, "Y");
  require_nonempty(z, "Z");
  require_unit(x, "X");
  require_unit(y, "Y");
  require_unit(z, "Z");
  VerdictReport r;
  r.kind = "lemma-distinct";
  r.inputs_digest = digest(describe(x) + ";" + describe(y) + ";" + describe(z));
  IntervalSet s = unite(sum_1d(x, y), integer_copies(z, 1));
  Rational lhs = s.measure();
  r.bound = min(Rational(1), x.measure() + y.measure()) + z.measure();
  r.set("S", lhs);
  r.set("X", x.measure());
  r.set("Y", y.measure());
  r.set("Z", z.measure());
  finish(r, lhs);
  return r;
}

VerdictReport check_lemma_iterated(const std::vector<IntervalSet>& ys) {
  if (ys.empty()) throw InputError("lemma-iterated needs at least one set Y_1");
  const int k = static_cast<int>(ys.size());
  const Rational cap = make_rational(1, k);
  VerdictReport r;
  r.kind = "lemma-iterated";
  std::string text;
  IntervalSet s;
  Rational bound(0);
  for (int i = 1; i <= k; ++i) {
    const auto& y = ys[static_cast<std::size_t>(i - 1)];
    std::string name = "Y_" + std::to_string(i);
    require_unit(y, name);
    if (y.measure() > cap) {
      throw InputError(name + " has measure " + to_string(y.measure()) + " > 1/k = " + to_string(cap) +
                       "; the inequality is only asserted when every |Y_i| <= 1/k");
    }
    text += describe(y) + ";";
    r.set(name, y.measure());
    bound += y.measure() * i;
    if (y.empty()) continue;
    s = unite(s, integer_copies(iterated_sum(y, i), k - i));
  }
  r.inputs_digest = digest(text);
  r.bound = bound;
  r.set("S", s.measure());
  finish(r, s.measure());
  return r;
}

VerdictReport freiman_iterated_bound(const IntervalSet& a, int k) {
  if (k < 1) throw InputError("k must be a positive integer");
  if (a.empty() || a.measure() == 0) throw InputError("freiman bound needs a set of positive measure");
  VerdictReport r;
  r.kind = "freiman";
  r.inputs_digest = digest(describe(a) + ";k=" + std::to_string(k));
  const Rational m = a.measure();
  const Rational co = a.hull_length();
  Integer ell_z = floor(co / m);
  long ell = ell_z > k ? k : ell_z.get_si();
  const Rational ka = iterated_sum(a, k).measure();
  r.bound = m * make_rational(ell * (ell + 1) / 2, 1) + co * (k - ell);
  r.set("kA", ka);
  r.set("A", m);
  r.set("hull", co);
  r.set("ell", Rational(ell));
  finish(r, ka);
  if (ell == 1 && k >= 2) {
    Rational deficit = co - m;
    Rational deficit_bound = (ka - m * k) / (k - 1);
    r.set("hull_deficit", deficit);
    r.set("deficit_bound", deficit_bound);
    r.notes.push_back("dense case l=1: |co(A)\\A| <= (|kA| - k|A|)/(k-1)");
    r.holds = r.holds && deficit <= deficit_bound;
  }
  return r;
}

}  // namespace sumset
