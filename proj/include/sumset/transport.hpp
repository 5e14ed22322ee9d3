#pragma once

// Fibre decompositions of grid sets, transport of fibre-length marginals, the
// interpolated density rho_t and the S^1 construction built from the fibre sum
//   tI (+) (1-t)J = (t min I + (1-t)J) u (tI + (1-t) max J).
//
// Axes are 0-based throughout this header.

#include <cstdint>
#include <map>
#include <vector>

#include "sumset/grid_set.hpp"
#include "sumset/intervals.hpp"
#include "sumset/rational.hpp"
#include "sumset/verdict.hpp"

namespace sumset {

struct FiberDecomposition {
  int dim = 0;
  int axis = 0;
  std::int64_t q = 1;
  /// Base-cell anchor (dim-1 integers) -> fibre over that base cell, in
  /// continuous coordinates along `axis`.
  std::map<Anchor, IntervalSet> fibers;

  /// q^-(dim-1).
  Rational base_cell_area() const;
  /// Center of a base cell, (anchor + 1/2)/q.
  RationalVector center(const Anchor& base) const;
  /// Inverse of center(); throws InputError if x is not a base-cell center.
  Anchor anchor_of(const RationalVector& x) const;
  /// sum |A_x| * base_cell_area().
  Rational total() const;
};

FiberDecomposition decompose(const GridSet& s, int axis);

/// Rebuilds the grid set from its fibres.
GridSet reassemble(const FiberDecomposition& f);

struct Atom {
  RationalVector x;
  Rational mass;
};

/// Atoms at base-cell centers, mass |A_x| * base-cell area, sorted by x.
using Marginal = std::vector<Atom>;

Marginal marginal(const FiberDecomposition& f);

struct TransportPair {
  RationalVector x;
  RationalVector y;
  Rational m;
};

struct TransportPlan {
  std::vector<TransportPair> pairs;
  Rational cost{0};
};

/// Squared Euclidean cost of a plan.
Rational plan_cost(const std::vector<TransportPair>& pairs);

/// Exact optimal plan for squared Euclidean cost. One-dimensional marginals use
/// the monotone rearrangement; higher-dimensional ones an exact min-cost flow.
/// Throws InputError on unequal totals.
TransportPlan optimal_transport(const Marginal& mu_a, const Marginal& mu_b);

/// Largest absolute violation of the marginal constraints (exactly zero for a
/// feasible plan).
Rational marginal_residual(const TransportPlan& plan, const Marginal& mu_a, const Marginal& mu_b);

/// The fibre sum tI (+) (1-t)J; both sets must be nonempty.
IntervalSet fiber_plus(const IntervalSet& i, const IntervalSet& j, const RationalScalar& t);

/// Integral of rho_t over the interpolated base, in unnormalized form: each pair
/// (x, y, m) with fibre lengths a = |A_x|, b = |B_y| covers base measure
/// t*m/a + (1-t)*m/b at density t*a + (1-t)*b. Holds iff the integral is >= |A|.
VerdictReport rho_t_check(const FiberDecomposition& a, const FiberDecomposition& b,
                          const TransportPlan& plan, const RationalScalar& t);

struct S1Fiber {
  RationalVector x;         // source base-cell center
  RationalVector y;         // target base-cell center
  RationalVector position;  // t x + (1-t) y
  Rational mass;
  Rational base_measure;    // t m/|A_x| + (1-t) m/|B_y|
  IntervalSet fiber;        // tA_x (+) (1-t)B_y
};

struct S1Record {
  std::vector<S1Fiber> fibers;
  Rational measure{0};  // sum of base_measure * |fiber|
  /// Every pair satisfied |tI (+) (1-t)J| == t|I| + (1-t)|J|.
  bool per_pair_identity = true;
};

S1Record s1_construct(const FiberDecomposition& a, const FiberDecomposition& b,
                      const TransportPlan& plan, const RationalScalar& t);

/// Grid version of S^1 at resolution q*r: the pair over base cells x, y sits on
/// the base block (p x + (r-p) y) + {0..r-1}^(d-1). Requires a.q == b.q.
GridSet s1_grid(const FiberDecomposition& a, const FiberDecomposition& b, const TransportPlan& plan,
                const RationalScalar& t, const Limits& limits = {});

struct TransportRun {
  FiberDecomposition a;
  FiberDecomposition b;
  TransportPlan plan;
  VerdictReport rho;
  S1Record s1;
  bool s1_contained = false;
};

/// Refines both sets to a common resolution, decomposes along `axis`, builds
/// the optimal plan, rho_t and S^1, and checks S^1 inside tA + (1-t)B.
TransportRun run_transport(const GridSet& a, const GridSet& b, const RationalScalar& t, int axis,
                           const Limits& limits = {});

Json to_json(const TransportPlan& plan);

}  // namespace sumset
