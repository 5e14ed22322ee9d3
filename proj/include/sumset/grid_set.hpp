#pragma once

// Grid-discretized subsets of R^d. A GridSet at resolution q is a finite union
// of closed cells a/q + [0, 1/q]^d, stored sparsely as a sorted, duplicate-free
// flat array of integer anchors. Closed cells make Minkowski sums exact.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumset/rational.hpp"

namespace sumset {

using Anchor = std::vector<std::int64_t>;

/// Caps on working-set size; exceeding one raises CapacityError.
struct Limits {
  std::size_t max_cells = std::numeric_limits<std::size_t>::max();
  std::int64_t max_resolution = std::numeric_limits<std::int64_t>::max();
};

class CapacityError : public InputError {
 public:
  using InputError::InputError;
};

class GridSet {
 public:
  GridSet(int dim, std::int64_t q);
  /// Takes ownership of a flat anchor array (size multiple of dim); sorts and
  /// deduplicates.
  GridSet(int dim, std::int64_t q, std::vector<std::int64_t> flat_anchors);

  static GridSet from_cells(int dim, std::int64_t q, const std::vector<Anchor>& cells);
  /// All cells with lo[i] <= a[i] < hi[i].
  static GridSet box(std::int64_t q, const Anchor& lo, const Anchor& hi);
  /// The closed box [lo, hi] given in continuous coordinates; lo*q and hi*q
  /// must be integers and lo < hi componentwise.
  static GridSet box(std::int64_t q, const RationalVector& lo, const RationalVector& hi);
  /// [0,1]^d at resolution q.
  static GridSet unit_cube(int dim, std::int64_t q = 1);

  int dim() const { return dim_; }
  std::int64_t resolution() const { return q_; }
  std::size_t size() const { return dim_ == 0 ? 0 : flat_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return flat_.empty(); }

  std::span<const std::int64_t> cell(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<std::int64_t>& flat() const { return flat_; }
  std::vector<Anchor> cells() const;

  bool contains_cell(std::span<const std::int64_t> anchor) const;

  /// Inclusive anchor bounds per axis; requires a nonempty set.
  Anchor lower() const;
  Anchor upper() const;

  friend bool operator==(const GridSet& a, const GridSet& b) {
    return a.dim_ == b.dim_ && a.q_ == b.q_ && a.flat_ == b.flat_;
  }

 private:
  int dim_;
  std::int64_t q_;
  std::vector<std::int64_t> flat_;
};

/// Sorts a flat anchor array lexicographically and removes duplicates.
void normalize_anchors(int dim, std::vector<std::int64_t>& flat);

/// |cells| / q^d.
Rational volume(const GridSet& s);

/// Same continuous set at resolution q*m.
GridSet refine(const GridSet& s, std::int64_t m, const Limits& limits = {});

/// Refines to resolution target (a multiple of s.resolution()).
GridSet refine_to(const GridSet& s, std::int64_t target, const Limits& limits = {});

/// Exact translate by a rational vector, refining as needed.
GridSet translate(const GridSet& s, const RationalVector& v, const Limits& limits = {});

/// Exact dilation by t = p/r: each cell becomes a side-p block at resolution q*r.
GridSet scale(const GridSet& s, const RationalScalar& t, const Limits& limits = {});

/// Union of two sets (refined to a common resolution).
GridSet unite(const GridSet& a, const GridSet& b, const Limits& limits = {});

/// True when a and b describe the same continuous set.
bool same_set(const GridSet& a, const GridSet& b);

/// True when every point of a lies in b (exact, via a common refinement).
bool is_subset(const GridSet& a, const GridSet& b);

/// Rational cell-corner coordinates (a + offset)/q; every corner of every cell.
std::vector<RationalVector> cell_corners(const GridSet& s);

/// Pads the anchor array with the side^d block offsets: a + {0..side-1}^d.
std::vector<std::int64_t> dilate_anchors(int dim, const std::vector<std::int64_t>& sorted_flat,
                                         std::int64_t side);

void require_same_dim(const GridSet& a, const GridSet& b);

}  // namespace sumset
