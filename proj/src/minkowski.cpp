#include "sumset/minkowski.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace sumset {

namespace detail {

namespace {

constexpr std::size_t kNaiveFlushEntries = std::size_t{1} << 22;

struct Bounds {
  Anchor lo, hi;  // inclusive
};

Bounds bounds_of(int dim, const std::vector<std::int64_t>& flat) {
  auto d = static_cast<std::size_t>(dim);
  Bounds b{Anchor(flat.begin(), flat.begin() + dim), Anchor(flat.begin(), flat.begin() + dim)};
  for (std::size_t i = d; i < flat.size(); i += d) {
    for (std::size_t k = 0; k < d; ++k) {
      b.lo[k] = std::min(b.lo[k], flat[i + k]);
      b.hi[k] = std::max(b.hi[k], flat[i + k]);
    }
  }
  return b;
}

double box_volume(const Bounds& b) {
  double v = 1;
  for (std::size_t k = 0; k < b.lo.size(); ++k) v *= static_cast<double>(b.hi[k] - b.lo[k] + 1);
  return v;
}

// Smallest n' >= n whose only prime factors are 2, 3, 5, 7.
std::size_t smooth_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

void merge_into(int dim, std::vector<std::int64_t>& acc, std::vector<std::int64_t>& buf) {
  acc.insert(acc.end(), buf.begin(), buf.end());
  buf.clear();
  normalize_anchors(dim, acc);
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw WorkspaceOverflow("fftw_malloc failed");
  return std::unique_ptr<T[], FftwFree>(p);
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// Sliding-window OR of width `side` along one axis of a row-major byte array.
void dilate_axis(std::vector<std::uint8_t>& grid, const std::vector<std::size_t>& ext,
                 std::size_t axis, std::int64_t side) {
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < ext.size(); ++k) stride *= ext[k];
  std::size_t len = ext[axis];
  std::size_t outer = grid.size() / (len * stride);
  std::vector<std::uint8_t> line(len);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      std::size_t base = o * len * stride + s;
      for (std::size_t i = 0; i < len; ++i) line[i] = grid[base + i * stride];
      std::int64_t window = 0;
      for (std::size_t i = 0; i < len; ++i) {
        window += line[i];
        if (i >= static_cast<std::size_t>(side)) window -= line[i - static_cast<std::size_t>(side)];
        grid[base + i * stride] = window > 0 ? 1 : 0;
      }
    }
  }
}

}  // namespace

std::vector<std::int64_t> block_sum_naive(int dim, const std::vector<std::int64_t>& lhs,
                                          const std::vector<std::int64_t>& rhs, std::int64_t side) {
  auto d = static_cast<std::size_t>(dim);
  std::vector<std::int64_t> acc, buf;
  if (lhs.empty() || rhs.empty()) return acc;
  for (std::size_t i = 0; i < lhs.size(); i += d) {
    for (std::size_t j = 0; j < rhs.size(); j += d) {
      for (std::size_t k = 0; k < d; ++k) buf.push_back(checked_add(lhs[i + k], rhs[j + k]));
    }
    if (buf.size() > kNaiveFlushEntries) merge_into(dim, acc, buf);
  }
  merge_into(dim, acc, buf);
  return dilate_anchors(dim, acc, side);
}

std::vector<std::int64_t> block_sum_dense(int dim, const std::vector<std::int64_t>& lhs,
                                          const std::vector<std::int64_t>& rhs, std::int64_t side) {
  auto d = static_cast<std::size_t>(dim);
  if (lhs.empty() || rhs.empty()) return {};
  Bounds bl = bounds_of(dim, lhs), br = bounds_of(dim, rhs);

  // Linear (non-cyclic) convolution needs wl + wr - 1 samples per axis.
  std::vector<std::size_t> conv(d), padded(d), out_ext(d);
  double work = 1, out_work = 1;
  for (std::size_t k = 0; k < d; ++k) {
    double wl = static_cast<double>(bl.hi[k]) - static_cast<double>(bl.lo[k]) + 1;
    double wr = static_cast<double>(br.hi[k]) - static_cast<double>(br.lo[k]) + 1;
    double n = wl + wr - 1;
    if (n > static_cast<double>(kMaxWorkspace)) throw WorkspaceOverflow("bounding box too large");
    conv[k] = static_cast<std::size_t>(n);
    padded[k] = smooth_size(conv[k]);
    out_ext[k] = conv[k] + static_cast<std::size_t>(side) - 1;
    work *= static_cast<double>(padded[k]);
    out_work *= static_cast<double>(out_ext[k]);
  }
  if (work > static_cast<double>(kMaxWorkspace) || out_work > static_cast<double>(kMaxWorkspace)) {
    throw WorkspaceOverflow("convolution workspace of " + std::to_string(work) +
                            " elements exceeds " + std::to_string(kMaxWorkspace));
  }

  // Rounding error of an FFT convolution is O(eps log N |a|_2 |b|_2); insist on
  // a wide margin below 1/2 so thresholding recovers the exact support.
  double nl = static_cast<double>(lhs.size() / d), nr = static_cast<double>(rhs.size() / d);
  double err_bound = 8.0 * std::numeric_limits<double>::epsilon() * std::log2(work + 2) *
                     std::sqrt(nl) * std::sqrt(nr);
  if (err_bound > 0.125) throw WorkspaceOverflow("convolution would lose exactness");

  std::size_t total = static_cast<std::size_t>(work);
  std::size_t last = padded[d - 1];
  std::size_t complex_total = total / last * (last / 2 + 1);
  auto in_a = fftw_array<double>(total);
  auto in_b = fftw_array<double>(total);
  auto spec_a = fftw_array<fftw_complex>(complex_total);
  auto spec_b = fftw_array<fftw_complex>(complex_total);
  std::fill(in_a.get(), in_a.get() + total, 0.0);
  std::fill(in_b.get(), in_b.get() + total, 0.0);

  auto index_of = [&](const std::int64_t* p, const Anchor& lo) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < d; ++k) idx = idx * padded[k] + static_cast<std::size_t>(p[k] - lo[k]);
    return idx;
  };
  for (std::size_t i = 0; i < lhs.size(); i += d) in_a[index_of(lhs.data() + i, bl.lo)] = 1.0;
  for (std::size_t i = 0; i < rhs.size(); i += d) in_b[index_of(rhs.data() + i, br.lo)] = 1.0;

  std::vector<int> dims(padded.begin(), padded.end());
  Plan fa(fftw_plan_dft_r2c(dim, dims.data(), in_a.get(), spec_a.get(), FFTW_ESTIMATE));
  Plan fb(fftw_plan_dft_r2c(dim, dims.data(), in_b.get(), spec_b.get(), FFTW_ESTIMATE));
  Plan inv(fftw_plan_dft_c2r(dim, dims.data(), spec_a.get(), in_a.get(), FFTW_ESTIMATE));
  if (!fa || !fb || !inv) throw WorkspaceOverflow("FFTW planning failed");
  fftw_execute(fa.get());
  fftw_execute(fb.get());
  for (std::size_t i = 0; i < complex_total; ++i) {
    double re = spec_a[i][0] * spec_b[i][0] - spec_a[i][1] * spec_b[i][1];
    double im = spec_a[i][0] * spec_b[i][1] + spec_a[i][1] * spec_b[i][0];
    spec_a[i][0] = re;
    spec_a[i][1] = im;
  }
  fftw_execute(inv.get());

  // Copy the support into the (dilation-sized) output grid.
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(out_work), 0);
  double scale = 1.0 / static_cast<double>(total);
  double worst = 0;
  std::vector<std::size_t> idx(d, 0);
  std::size_t conv_total = 1;
  for (std::size_t k = 0; k < d; ++k) conv_total *= conv[k];
  for (std::size_t c = 0; c < conv_total; ++c) {
    std::size_t src = 0, dst = 0;
    for (std::size_t k = 0; k < d; ++k) {
      src = src * padded[k] + idx[k];
      dst = dst * out_ext[k] + idx[k];
    }
    double v = in_a[src] * scale;
    double r = std::nearbyint(v);
    worst = std::max(worst, std::fabs(v - r));
    grid[dst] = r >= 1.0 ? 1 : 0;
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < conv[k]) break;
      idx[k] = 0;
    }
  }
  if (worst > 0.25) throw WorkspaceOverflow("convolution rounding error too large");

  for (std::size_t k = 0; k < d; ++k) dilate_axis(grid, out_ext, k, side);

  std::vector<std::int64_t> out;
  Anchor origin(d);
  for (std::size_t k = 0; k < d; ++k) origin[k] = checked_add(bl.lo[k], br.lo[k]);
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t pos = 0; pos < grid.size(); ++pos) {
    if (grid[pos]) {
      for (std::size_t k = 0; k < d; ++k) out.push_back(origin[k] + static_cast<std::int64_t>(idx[k]));
    }
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < out_ext[k]) break;
      idx[k] = 0;
    }
  }
  return out;  // row-major traversal is already lexicographic
}

std::vector<std::vector<std::int64_t>> split_clusters(int dim, const std::vector<std::int64_t>& flat) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::vector<std::int64_t>> pending{flat};
  auto d = static_cast<std::size_t>(dim);
  while (!pending.empty()) {
    std::vector<std::int64_t> cells = std::move(pending.back());
    pending.pop_back();
    if (cells.size() <= d) {
      if (!cells.empty()) out.push_back(std::move(cells));
      continue;
    }
    Bounds whole = bounds_of(dim, cells);
    double best_vol = box_volume(whole) * 0.5;
    std::size_t best_axis = d;
    std::int64_t best_cut = 0;
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<std::int64_t> values;
      values.reserve(cells.size() / d);
      for (std::size_t i = k; i < cells.size(); i += d) values.push_back(cells[i]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      std::int64_t gap = 1, cut = 0;
      for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        if (values[j + 1] - values[j] > gap) {
          gap = values[j + 1] - values[j];
          cut = values[j];
        }
      }
      if (gap < 2) continue;
      Bounds left = whole, right = whole;
      left.hi[k] = cut;
      right.lo[k] = cut + gap;
      // Refine the other axes of each side.
      bool first_l = true, first_r = true;
      for (std::size_t i = 0; i < cells.size(); i += d) {
        Bounds& b = cells[i + k] <= cut ? left : right;
        bool& first = cells[i + k] <= cut ? first_l : first_r;
        for (std::size_t m = 0; m < d; ++m) {
          if (m == k) continue;
          if (first) b.lo[m] = b.hi[m] = cells[i + m];
          b.lo[m] = std::min(b.lo[m], cells[i + m]);
          b.hi[m] = std::max(b.hi[m], cells[i + m]);
        }
        first = false;
      }
      double vol = box_volume(left) + box_volume(right);
      if (vol <= best_vol) {
        best_vol = vol;
        best_axis = k;
        best_cut = cut;
      }
    }
    if (best_axis == d) {
      out.push_back(std::move(cells));
      continue;
    }
    std::vector<std::int64_t> left, right;
    for (std::size_t i = 0; i < cells.size(); i += d) {
      auto& dst = cells[i + best_axis] <= best_cut ? left : right;
      dst.insert(dst.end(), cells.begin() + i, cells.begin() + i + d);
    }
    pending.push_back(std::move(left));
    pending.push_back(std::move(right));
  }
  return out;
}

std::vector<std::int64_t> block_sum(int dim, const std::vector<std::int64_t>& lhs,
                                    const std::vector<std::int64_t>& rhs, std::int64_t side,
                                    const Limits& limits) {
  if (lhs.empty() || rhs.empty()) return {};
  auto d = static_cast<std::size_t>(dim);
  auto left = split_clusters(dim, lhs);
  auto right = split_clusters(dim, rhs);
  std::vector<Bounds> lb, rb;
  for (const auto& c : left) lb.push_back(bounds_of(dim, c));
  for (const auto& c : right) rb.push_back(bounds_of(dim, c));

  std::vector<std::int64_t> acc, buf;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      double pairs = static_cast<double>(left[i].size() / d) * static_cast<double>(right[j].size() / d);
      double dense = 1;
      for (std::size_t k = 0; k < d; ++k) {
        dense *= static_cast<double>(lb[i].hi[k] - lb[i].lo[k] + rb[j].hi[k] - rb[j].lo[k] + 1);
      }
      std::vector<std::int64_t> part;
      bool done = false;
      if (pairs > 4096 && pairs > dense) {
        try {
          part = block_sum_dense(dim, left[i], right[j], side);
          done = true;
        } catch (const WorkspaceOverflow&) {
        }
      }
      if (!done) {
        if (pairs > 4e9) throw CapacityError("pairwise sum of " + std::to_string(pairs) + " anchor pairs is too large");
        part = block_sum_naive(dim, left[i], right[j], side);
      }
      buf.insert(buf.end(), part.begin(), part.end());
      if (buf.size() > kNaiveFlushEntries) merge_into(dim, acc, buf);
      if (acc.size() / d > limits.max_cells) break;
    }
  }
  merge_into(dim, acc, buf);
  if (acc.size() / d > limits.max_cells) {
    throw CapacityError("sum has more than " + std::to_string(limits.max_cells) +
                        " cells (working-set cap)");
  }
  return acc;
}

}  // namespace detail

namespace {

void require_same_resolution(const GridSet& a, const GridSet& b) {
  require_same_dim(a, b);
  if (a.resolution() != b.resolution()) {
    throw InputError("resolution mismatch: q=" + std::to_string(a.resolution()) + " vs q=" +
                     std::to_string(b.resolution()) + " (refine to a common resolution first)");
  }
}

}  // namespace

GridSet minkowski_sum(const GridSet& a, const GridSet& b) {
  require_same_resolution(a, b);
  return GridSet(a.dim(), a.resolution(), detail::block_sum_naive(a.dim(), a.flat(), b.flat(), 2));
}

GridSet minkowski_sum_fast(const GridSet& a, const GridSet& b) {
  require_same_resolution(a, b);
  return GridSet(a.dim(), a.resolution(), detail::block_sum_dense(a.dim(), a.flat(), b.flat(), 2));
}

GridSet sum(const GridSet& a, const GridSet& b, const Limits& limits) {
  require_same_dim(a, b);
  std::int64_t q = lcm64(a.resolution(), b.resolution());
  GridSet x = refine_to(a, q, limits), y = refine_to(b, q, limits);
  return GridSet(a.dim(), q, detail::block_sum(a.dim(), x.flat(), y.flat(), 2, limits));
}

GridSet scaled_sum(const GridSet& a, const GridSet& b, const RationalScalar& t, const Limits& limits) {
  t.require_open_unit();
  require_same_dim(a, b);
  std::int64_t q = lcm64(a.resolution(), b.resolution());
  GridSet x = refine_to(a, q, limits), y = refine_to(b, q, limits);
  std::int64_t p = to_int64(t.numerator());
  std::int64_t r = to_int64(t.denominator());
  std::int64_t out_q = checked_mul(q, r);
  if (out_q > limits.max_resolution) {
    throw CapacityError("resolution " + std::to_string(out_q) + " exceeds the cap of " +
                        std::to_string(limits.max_resolution));
  }
  std::vector<std::int64_t> lhs(x.flat()), rhs(y.flat());
  for (auto& c : lhs) c = checked_mul(c, p);
  for (auto& c : rhs) c = checked_mul(c, r - p);
  return GridSet(a.dim(), out_q, detail::block_sum(a.dim(), lhs, rhs, r, limits));
}

GridSet iterated_sum(const GridSet& a, int k, const Limits& limits) {
  if (k < 1) throw InputError("k must be a positive integer");
  GridSet out = a;
  for (int i = 1; i < k; ++i) out = sum(out, a, limits);
  return out;
}

}  // namespace sumset
