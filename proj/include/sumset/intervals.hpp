#pragma once

// Exact one-dimensional sets: finite unions of closed intervals with rational
// endpoints (degenerate intervals are points of measure zero), their images on
// the circle R/Z, and the sumset inequalities built on them.

#include <string>
#include <vector>

#include "sumset/rational.hpp"
#include "sumset/verdict.hpp"

namespace sumset {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

class IntervalSet {
 public:
  IntervalSet() = default;
  /// Sorts and merges overlapping or touching parts; rejects lo > hi.
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet point(const Rational& x);
  static IntervalSet interval(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  Rational measure() const;
  Rational min() const;
  Rational max() const;
  /// |co(X)| = max - min.
  Rational hull_length() const;

  bool contains(const Rational& x) const;
  bool within(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<Interval> parts_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet translate(const IntervalSet& x, const Rational& shift);
/// c * X for c >= 0 (c = 0 collapses a nonempty set to {0}).
IntervalSet scale(const IntervalSet& x, const Rational& c);
/// Minkowski sum X + Y; both must be nonempty.
IntervalSet sum_1d(const IntervalSet& x, const IntervalSet& y);
/// k * X = X + ... + X.
IntervalSet iterated_sum(const IntervalSet& x, int k);
/// {0, 1, ..., n} + X.
IntervalSet integer_copies(const IntervalSet& x, int n);

/// A finite union of arcs of R/Z, stored as a normalized IntervalSet inside [0,1].
class TorusSet {
 public:
  TorusSet() = default;
  explicit TorusSet(IntervalSet arcs);

  const IntervalSet& arcs() const { return arcs_; }
  Rational measure() const { return arcs_.measure(); }

 private:
  IntervalSet arcs_;
};

/// Image of X under x -> x - floor(x).
TorusSet torus_project(const IntervalSet& x);

/// |f(X+Y)| >= min{1, |f(X)| + |f(Y)|} on the circle.
VerdictReport check_cauchy_davenport(const IntervalSet& x, const IntervalSet& y);

/// |(X+Y) u ({0,1}+Z)| >= min{1, |X|+|Y|} + |Z| for X, Y, Z in [0,1].
VerdictReport check_lemma_distinct(const IntervalSet& x, const IntervalSet& y, const IntervalSet& z);

/// |U_i ({0..k-i} + i*Y_i)| >= sum_i i|Y_i| for Y_i in [0,1], |Y_i| <= 1/k.
/// Inputs violating |Y_i| <= 1/k are rejected with InputError.
VerdictReport check_lemma_iterated(const std::vector<IntervalSet>& ys);

/// |k*A| >= C(l+1,2)|A| + (k-l)|co(A)| with l = min{floor(|co A|/|A|), k}.
VerdictReport freiman_iterated_bound(const IntervalSet& a, int k);

std::string describe(const IntervalSet& x);

}  // namespace sumset
