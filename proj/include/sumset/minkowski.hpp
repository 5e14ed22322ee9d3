#pragma once

// Exact Minkowski sums of grid sets.
//
// Two closed cells sum to a closed 2x2 block: [x, x+h] + [y, y+h] = [x+y, x+y+2h]
// per axis, so a + b is the anchor sumset dilated by {0,1}^d. The scaled sum
// tA + (1-t)B with t = p/r is handled the same way at resolution q*r: the
// anchors become p*a + (r-p)*b and each is dilated by a side-r block.

#include <cstdint>
#include <stdexcept>

#include "sumset/grid_set.hpp"
#include "sumset/rational.hpp"

namespace sumset {

/// Raised by minkowski_sum_fast when the dense convolution workspace would be
/// too large (or numerically unsafe); callers fall back to the naive path.
class WorkspaceOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest dense workspace (in array elements) the fast path will allocate.
inline constexpr std::size_t kMaxWorkspace = std::size_t{1} << 23;

/// Reference implementation: pairwise anchor enumeration. Requires equal
/// dimension and equal resolution.
GridSet minkowski_sum(const GridSet& a, const GridSet& b);

/// Indicator-array convolution over the joint bounding box (FFT), followed by
/// the {0,1}^d dilation. Bit-identical to minkowski_sum.
GridSet minkowski_sum_fast(const GridSet& a, const GridSet& b);

/// Production entry point: refines to a common resolution, splits both sets
/// into spatially separated clusters and sums cluster pairs with whichever
/// path is cheaper.
GridSet sum(const GridSet& a, const GridSet& b, const Limits& limits = {});

/// tA + (1-t)B for 0 < t < 1, exact.
GridSet scaled_sum(const GridSet& a, const GridSet& b, const RationalScalar& t,
                   const Limits& limits = {});

/// k-fold sum A + ... + A.
GridSet iterated_sum(const GridSet& a, int k, const Limits& limits = {});

namespace detail {

/// Union over a in lhs, b in rhs of a + b + {0..side-1}^d, naive enumeration.
std::vector<std::int64_t> block_sum_naive(int dim, const std::vector<std::int64_t>& lhs,
                                          const std::vector<std::int64_t>& rhs, std::int64_t side);

/// Same result through a dense FFT convolution; throws WorkspaceOverflow.
std::vector<std::int64_t> block_sum_dense(int dim, const std::vector<std::int64_t>& lhs,
                                          const std::vector<std::int64_t>& rhs, std::int64_t side);

/// Cluster-splitting dispatcher over the two routes above.
std::vector<std::int64_t> block_sum(int dim, const std::vector<std::int64_t>& lhs,
                                    const std::vector<std::int64_t>& rhs, std::int64_t side,
                                    const Limits& limits);

/// Splits a sorted anchor array into spatially separated clusters.
std::vector<std::vector<std::int64_t>> split_clusters(int dim, const std::vector<std::int64_t>& flat);

}  // namespace detail

}  // namespace sumset
