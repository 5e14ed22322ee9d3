#pragma once

// Exact convex hulls in dimensions 1 to 3. All predicates are evaluated in
// rational arithmetic, so collinear and coplanar configurations need no
// tolerances.

#include <vector>

#include "sumset/grid_set.hpp"
#include "sumset/intervals.hpp"
#include "sumset/rational.hpp"

namespace sumset {

inline constexpr int kMaxHullDim = 3;

struct Polytope {
  int dim = 0;
  /// Extreme points of the hull, deduplicated. In d = 2 they are listed
  /// counter-clockwise; otherwise in lexicographic order.
  std::vector<RationalVector> vertices;
};

Polytope hull_of(int dim, const std::vector<RationalVector>& points);
Polytope hull_of(const GridSet& s, const std::vector<RationalVector>& extra_points = {});

Rational hull_volume(const Polytope& p);

/// Closed-membership test: x lies in co(vertices).
bool contains(const Polytope& p, const RationalVector& x);

/// Corner points of a grid set that can possibly be extreme (every lattice
/// line keeps only its two end points).
std::vector<RationalVector> hull_candidates(const GridSet& s);

/// |co(S u extra)| / |S|.
Rational hull_ratio(const GridSet& s, const std::vector<RationalVector>& extra_points = {});
Rational hull_ratio(const IntervalSet& s, const std::vector<Rational>& extra_points = {});

}  // namespace sumset
